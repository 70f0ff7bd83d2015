#include "reflexa/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "reflexa/corpus.hpp"
#include "reflexa/error.hpp"
#include "reflexa/morita.hpp"

namespace reflexa {

namespace {

using json = nlohmann::json;

// ---- report encoding (row-vector convention, 1-based vertices) ----

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Bounded& b) { return {{"value", b.value}, {"at_least", b.at_least}}; }

json to_json(const Module& m) {
  json actions = json::object();
  const auto& gens = m.acting()->generators();
  for (std::size_t g = 0; g < gens.size(); ++g) actions[gens[g].name] = to_json(m.gen(g).transpose());
  return {{"algebra", m.base()->name()}, {"side", to_string(m.side())}, {"dims", m.dims()}, {"actions", actions}};
}

json to_json(const ModuleMap& f) {
  json blocks = json::object();
  for (std::size_t v = 0; v < f.blocks().size(); ++v) blocks[std::to_string(v + 1)] = to_json(f.block(v).transpose());
  return {{"source", f.source().dims()}, {"target", f.target().dims()}, {"blocks", blocks}};
}

json to_json(const Witness& w) {
  json mods = json::array(), maps = json::array();
  for (const auto& m : w.modules) mods.push_back(to_json(m));
  for (const auto& f : w.maps) maps.push_back(to_json(f));
  return {{"kind", w.kind}, {"text", w.text}, {"modules", mods}, {"maps", maps}};
}

json to_json(const Check& c) {
  json j = {{"name", c.name}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}};
  if (c.witness) j["witness"] = to_json(*c.witness);
  return j;
}

json to_json(const Budget& b) {
  return {{"dim", b.dim}, {"enumeration", b.enumeration}, {"iso", b.iso_search}, {"modules", b.modules}};
}

json facts_json(const std::vector<std::pair<std::string, std::string>>& facts) {
  json j = json::object();
  for (const auto& [k, v] : facts) j[k] = v;
  return j;
}

json vertices_json(const std::vector<std::size_t>& vs) {
  json j = json::array();
  for (auto v : vs) j.push_back(v + 1);
  return j;
}

json vertices_json(const std::set<std::size_t>& vs) { return vertices_json(std::vector<std::size_t>(vs.begin(), vs.end())); }

// Aggregated exit status: input errors first, then fails, then undetermined.
struct Status {
  bool fails = false, undetermined = false, input = false;
  void add(Verdict v) {
    if (v == Verdict::fails) fails = true;
    if (v == Verdict::undetermined) undetermined = true;
  }
  void add(Outcome o) {
    if (o == Outcome::theorem_violation) fails = true;
    if (o == Outcome::undetermined) undetermined = true;
  }
  void add_code(int c) {
    if (c == exit_input) input = true;
    if (c == exit_fails) fails = true;
    if (c == exit_undetermined) undetermined = true;
  }
  int code() const {
    if (input) return exit_input;
    if (fails) return exit_fails;
    if (undetermined) return exit_undetermined;
    return exit_holds;
  }
};

// ---- commands ----

struct Context {
  const Workspace& ws;
  Budget budget;
};

json condition_report(const AlgebraPtr& a, const std::vector<std::pair<std::size_t, std::size_t>>& ln,
                      std::optional<std::size_t> cap, Status& st) {
  ConditionReport r = check_conditions(a, ln, cap);
  json checks = json::array(), matrix = json::array();
  for (const auto& c : r.checks) {
    checks.push_back(to_json(c));
    st.add(c.verdict);
  }
  for (const auto& e : r.ln_matrix) {
    json j = {{"l", e.l}, {"n", e.n}, {"side", to_string(e.side)}, {"verdict", e.holds ? "holds" : "fails"}};
    if (e.witness) j["witness"] = to_json(*e.witness);
    matrix.push_back(std::move(j));
    if (!e.holds) st.fails = true;
  }
  json j = {{"algebra", r.algebra},
            {"cap", cap ? *cap : default_cap(a)},
            {"checks", checks},
            {"ln", matrix},
            {"dominant_dimension", to_json(r.dominant_dimension)}};
  if (r.dominant_witness) j["dominant_witness"] = to_json(*r.dominant_witness);
  return j;
}

json certificate_json(const Certificate& c, const Budget& b) {
  json ws = json::array();
  for (const auto& w : c.witnesses) ws.push_back(to_json(w));
  return {{"algebra", c.algebra},
          {"claim", c.claim},
          {"outcome", to_string(c.outcome)},
          {"predicted", c.predicted},
          {"counterexample_found", c.counterexample_found},
          {"witnesses", ws},
          {"facts", facts_json(c.facts)},
          {"dim_reached", c.dim_reached},
          {"budget_exceeded", c.budget_exceeded},
          {"modules_examined", c.modules_examined},
          {"instances_checked", c.instances_checked},
          {"budget", to_json(b)}};
}

json serre_json(const SerreReport& r, const Budget& b, Status& st) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back(to_json(c));
    st.add(c.verdict);
  }
  if (!r.roundtrip) st.fails = true;
  return {{"algebra", r.algebra},
          {"simples", vertices_json(r.simples)},
          {"checks", checks},
          {"regenerated", vertices_json(r.regenerated)},
          {"roundtrip", r.roundtrip},
          {"conflations", r.conflations},
          {"dim_reached", r.dim_reached},
          {"budget_exceeded", r.budget_exceeded},
          {"budget", to_json(b)}};
}

json morita_json(const MoritaReport& r, const Budget& b, Status& st) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back(to_json(c));
    st.add(c.verdict);
  }
  return {{"algebra", r.algebra},     {"end_algebra", r.end_algebra}, {"end_dim", r.end_dim},
          {"mode", to_string(r.mode)}, {"checks", checks},            {"facts", facts_json(r.facts)},
          {"all_pass", r.all_pass()}, {"budget", to_json(b)}};
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& s) {
  auto comma = s.find(',');
  try {
    if (comma != std::string::npos) {
      std::size_t p1 = 0, p2 = 0;
      std::string a = s.substr(0, comma), c = s.substr(comma + 1);
      long l = std::stol(a, &p1), n = std::stol(c, &p2);
      if (p1 == a.size() && p2 == c.size() && l >= 0 && n >= 0) return {std::size_t(l), std::size_t(n)};
    }
  } catch (...) {
  }
  throw ParseError("--ln expects l,n with non-negative integers, got '" + s + "'");
}

std::set<std::size_t> parse_simples(const std::string& s, const AlgebraPtr& a) {
  std::set<std::size_t> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    long v = -1;
    try {
      v = std::stol(tok, &pos);
    } catch (...) {
    }
    if (pos != tok.size() || v < 1 || std::size_t(v) > a->vertex_count())
      throw ParseError("--simples expects vertices in 1.." + std::to_string(a->vertex_count()) + ", got '" + tok + "'");
    out.insert(std::size_t(v) - 1);
  }
  return out;
}

std::vector<Module> resolve_modules(const Workspace& ws, const std::vector<std::string>& names) {
  std::vector<Module> out;
  for (const auto& n : names) out.push_back(resolve_module(ws, n));
  return out;
}

json corpus_entry(const AlgebraPtr& a, const Budget& b, Status& st) {
  json j = {{"algebra", a->name()}, {"dim", a->dim()}, {"vertices", a->vertex_count()}};
  j["conditions"] = condition_report(a, {}, std::nullopt, st);
  // (2,2) failing here is a property of the algebra, not a failed run
  st.fails = false;
  Certificate q = certify_quasi_abelian(a, b), ab = certify_abelian(a, b);
  st.add(q.outcome);
  st.add(ab.outcome);
  j["quasi_abelian"] = certificate_json(q, b);
  j["abelian"] = certificate_json(ab, b);
  json serre = json::array(), rejected = json::array();
  if (two_sided_22(a)) {
    std::vector<std::size_t> admissible;
    for (std::size_t v = 0; v < a->vertex_count(); ++v) {
      Bounded s = sgrade(simple_module(a, v));
      if (s.at_least || s.value >= 2)
        admissible.push_back(v);
      else {
        try {
          serre_exact_structure(a, {v}, b);
          st.fails = true;
          rejected.push_back({{"simple", v + 1}, {"rejected", false}});
        } catch (const NotInD&) {
          rejected.push_back({{"simple", v + 1}, {"rejected", true}});
        }
      }
    }
    for (std::size_t mask = 0; mask < (std::size_t(1) << admissible.size()); ++mask) {
      std::set<std::size_t> chosen;
      for (std::size_t i = 0; i < admissible.size(); ++i)
        if (mask >> i & 1) chosen.insert(admissible[i]);
      SerreReport r = serre_exact_structure(a, chosen, b);
      serre.push_back(serre_json(r, b, st));
    }
  }
  j["serre"] = serre;
  j["serre_not_in_d"] = rejected;
  return j;
}

json corpus_run(std::size_t workers, std::size_t randoms, const Budget& b, Status& st) {
  std::vector<AlgebraPtr> corpus = standard_corpus(Field::prime(2), randoms);
  std::vector<json> entries(corpus.size());
  std::vector<Status> statuses(corpus.size());
  std::vector<std::string> errors(corpus.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      try {
        entries[i] = corpus_entry(corpus[i], b, statuses[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::max<std::size_t>(workers, 1); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  json list = json::array();
  std::size_t consistent = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!errors[i].empty()) {
      list.push_back({{"algebra", corpus[i]->name()}, {"error", errors[i]}});
      st.fails = true;
      continue;
    }
    if (entries[i]["quasi_abelian"]["outcome"] == "consistent" && entries[i]["abelian"]["outcome"] == "consistent")
      ++consistent;
    list.push_back(std::move(entries[i]));
    st.fails = st.fails || statuses[i].fails;
    st.undetermined = st.undetermined || statuses[i].undetermined;
  }
  return {{"algebras", list}, {"consistent", consistent}, {"total", corpus.size()}, {"budget", to_json(b)}};
}

int error_code(const std::exception_ptr& e, std::string& type) {
  try {
    std::rethrow_exception(e);
  } catch (const ConditionFails&) {
    type = "ConditionFails";
    return exit_fails;
  } catch (const NotInD&) {
    type = "NotInD";
    return exit_fails;
  } catch (const TheoremViolation&) {
    type = "TheoremViolation";
    return exit_fails;
  } catch (const PreconditionUnverified&) {
    type = "PreconditionUnverified";
    return exit_fails;
  } catch (const InternalInconsistency&) {
    type = "InternalInconsistency";
    return exit_fails;
  } catch (const BudgetExceeded&) {
    type = "BudgetExceeded";
    return exit_undetermined;
  } catch (const Undecided&) {
    type = "Undecided";
    return exit_undetermined;
  } catch (const Error&) {
    type = "InputError";
    return exit_input;
  } catch (const std::exception&) {
    type = "InputError";
    return exit_input;
  }
}

CommandResult finish(json report, int code) {
  return {report.dump(2) + "\n", code};
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args, const Workspace& ws, const Budget& budget) {
  CLI::App app{"Homological checks on finite-dimensional algebras", "reflexa"};
  app.require_subcommand(1);

  std::string algebra_name, module_name, map_name, map_name2, simples, mode = "module";
  std::vector<std::string> ln, module_names;
  std::optional<std::size_t> cap;
  std::size_t degree = 0, workers = 1, randoms = 5;
  std::optional<std::size_t> dim_budget;
  bool injective = false, force = false;

  auto* cc = app.add_subcommand("check-conditions", "(l,n)-conditions and dominant dimension");
  cc->add_option("algebra", algebra_name)->required();
  cc->add_option("--ln", ln, "extra l,n pairs");
  cc->add_option("--cap", cap, "cap for dominant dimension search");

  auto* rs = app.add_subcommand("resolve", "minimal projective or injective resolution");
  rs->add_option("module", module_name)->required();
  rs->add_option("--degree", degree)->required();
  rs->add_flag("--injective", injective);

  auto* inv = app.add_subcommand("invariants", "grade, sgrade, torsion flags and the four-term sequence");
  inv->add_option("module", module_name)->required();
  inv->add_option("--cap", cap);

  auto* refl = app.add_subcommand("refl", "operations in the category of reflexive modules");
  refl->require_subcommand(1);
  auto* hull = refl->add_subcommand("hull", "reflexive hull M -> M**");
  hull->add_option("module", module_name)->required();
  hull->add_flag("--force", force, "compute off two-sided (2,2)");
  auto* rk = refl->add_subcommand("kernel", "kernel in refl");
  rk->add_option("map", map_name)->required();
  auto* rc = refl->add_subcommand("cokernel", "cokernel in refl");
  rc->add_option("map", map_name)->required();
  auto* rf = refl->add_subcommand("conflation", "is (f, g) a conflation in refl");
  rf->add_option("f", map_name)->required();
  rf->add_option("g", map_name2)->required();

  auto* cert = app.add_subcommand("certify", "certify a characterization on one algebra");
  cert->require_subcommand(1);
  auto* cq = cert->add_subcommand("quasi-abelian", "refl quasi-abelian iff two-sided (2,2)");
  auto* ca = cert->add_subcommand("abelian", "refl abelian iff dominant dimension >= 2");
  for (auto* c : {cq, ca}) {
    c->add_option("algebra", algebra_name)->required();
    c->add_option("--dim-budget", dim_budget);
  }

  auto* se = app.add_subcommand("serre", "exact structure from a Serre subcategory");
  se->add_option("algebra", algebra_name)->required();
  se->add_option("--simples", simples, "1-based vertices, comma separated");
  se->add_option("--dim-budget", dim_budget);

  auto* mo = app.add_subcommand("morita", "endomorphism algebras and equivalences");
  mo->require_subcommand(1);
  auto* me = mo->add_subcommand("end", "the algebra End(M)^op");
  me->add_option("modules", module_names)->required();
  auto* mv = mo->add_subcommand("verify", "Hom(M, -) equivalence checks");
  mv->add_option("modules", module_names)->required();
  mv->add_option("--mode", mode)->check(CLI::IsMember({"module", "refl"}));
  auto* mr = mo->add_subcommand("refl", "refl(Lambda) equivalence for reflexive summands");
  mr->add_option("algebra", algebra_name)->required();
  mr->add_option("modules", module_names)->required();
  for (auto* c : {mv, mr}) c->add_option("--dim-budget", dim_budget);

  auto* co = app.add_subcommand("corpus", "the fixed corpus");
  co->require_subcommand(1);
  auto* cr = co->add_subcommand("run", "every check on every corpus algebra");
  cr->add_option("--workers", workers)->check(CLI::Range(1, 256));
  cr->add_option("--random", randoms, "number of random algebras")->check(CLI::Range(0, 64));
  cr->add_option("--dim-budget", dim_budget);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    return {app.help(), exit_holds};
  } catch (const CLI::ParseError& e) {
    return finish({{"error", {{"type", "UsageError"}, {"message", e.what()}}}}, exit_input);
  }

  Budget b = budget;
  if (dim_budget) b.dim = *dim_budget;
  Status st;
  json report;
  std::string command;
  // positional words only, so that e.g. the worker count never reaches the report
  for (const auto& a : args) {
    if (!a.empty() && a[0] == '-') break;
    command += (command.empty() ? "" : " ") + a;
  }
  try {
    if (*cc) {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (const auto& s : ln) pairs.push_back(parse_pair(s));
      report = condition_report(resolve_algebra(ws, algebra_name), pairs, cap, st);
    } else if (*rs) {
      Module m = resolve_module(ws, module_name);
      json terms = json::array();
      bool terminated = false;
      if (injective) {
        ProjResolution r = min_proj_resolution(d_dual(m), degree);
        for (std::size_t k = 0; k < r.terms.size(); ++k)
          terms.push_back({{"degree", k}, {"summands", vertices_json(r.tops[k])}, {"dim", r.terms[k].total_dim()}});
        terminated = r.terminated;
      } else {
        ProjResolution r = min_proj_resolution(m, degree);
        for (std::size_t k = 0; k < r.terms.size(); ++k)
          terms.push_back({{"degree", k}, {"summands", vertices_json(r.tops[k])}, {"dim", r.terms[k].total_dim()}});
        terminated = r.terminated;
      }
      report = {{"module", to_json(m)}, {"kind", injective ? "injective" : "projective"}, {"terms", terms},
                {"terminated", terminated}, {"degree", degree}};
      if (terminated) report["length"] = terms.empty() ? 0 : terms.size() - 1;
    } else if (*inv) {
      Module m = resolve_module(ws, module_name);
      FourTermSequence ab = ab_sequence(m, b);
      report = {{"module", to_json(m)},
                {"cap", cap ? *cap : default_cap(m.base())},
                {"grade", to_json(grade(m, cap))},
                {"sgrade", to_json(sgrade(m, cap))},
                {"torsion", is_torsion(m)},
                {"torsion_free", is_torsion_free(m)},
                {"reflexive", is_reflexive(m)},
                {"ab_sequence",
                 {{"ext1", ab.ext1.total_dim()},
                  {"module", ab.m.total_dim()},
                  {"double_dual", ab.mss.total_dim()},
                  {"ext2", ab.ext2.total_dim()},
                  {"exact", true}}}};
    } else if (*hull) {
      Hull h = reflexive_hull(resolve_module(ws, module_name), force);
      report = {{"source", to_json(h.map.source())}, {"target", to_json(h.map.target())},
                {"map", to_json(h.map)}, {"precondition_verified", h.precondition_verified}};
      if (!h.precondition_verified) st.undetermined = true;
    } else if (*rk || *rc) {
      ModuleMap f = resolve_map(ws, map_name);
      ModuleWithMap r = *rk ? refl_kernel(f) : refl_cokernel(f);
      report = {{"map", to_json(f)}, {*rk ? "kernel" : "cokernel", to_json(r.module)}, {"structure_map", to_json(r.map)}};
    } else if (*rf) {
      ModuleMap f = resolve_map(ws, map_name), g = resolve_map(ws, map_name2);
      ConflationVerdict v = is_conflation(f, g);
      bool ok = v.is_conflation();
      report = {{"kernel_cokernel_pair", v.kernel_cokernel_pair},
                {"hull_factorization", v.hull_factorization},
                {"exact_with_sgrade", v.exact_with_sgrade},
                {"agree", v.agree()},
                {"verdict", ok ? "holds" : "fails"}};
      if (!ok) st.fails = true;
    } else if (*cq || *ca) {
      AlgebraPtr a = resolve_algebra(ws, algebra_name);
      Certificate c = *cq ? certify_quasi_abelian(a, b) : certify_abelian(a, b);
      st.add(c.outcome);
      report = certificate_json(c, b);
    } else if (*se) {
      AlgebraPtr a = resolve_algebra(ws, algebra_name);
      report = serre_json(serre_exact_structure(a, parse_simples(simples, a), b), b, st);
    } else if (*me) {
      SummandList ms = make_summands(resolve_modules(ws, module_names), b);
      EndAlgebra e = end_algebra(ms);
      json summands = json::array(), grid = json::array();
      for (const auto& m : e.summands) summands.push_back(to_json(m));
      for (const auto& row : e.hom) {
        json r = json::array();
        for (const auto& cell : row) r.push_back(cell.size());
        grid.push_back(r);
      }
      report = {{"end_algebra", e.algebra->name()}, {"end_dim", e.algebra->dim()},
                {"vertices", e.algebra->vertex_count()}, {"summands", summands},
                {"hom_dims", grid}, {"pairwise_noniso", ms.pairwise_noniso}};
    } else if (*mv) {
      SummandList ms = make_summands(resolve_modules(ws, module_names), b);
      report = morita_json(verify_equivalence(ms, mode == "refl" ? Mode::refl_max : Mode::module_category, b), b, st);
    } else if (*mr) {
      report = morita_json(
          reflexive_equivalence_check(resolve_algebra(ws, algebra_name), resolve_modules(ws, module_names), b), b, st);
    } else if (*cr) {
      report = corpus_run(workers, randoms, b, st);
    }
  } catch (...) {
    std::string type;
    int code = error_code(std::current_exception(), type);
    std::string msg;
    try {
      throw;
    } catch (const std::exception& e) {
      msg = e.what();
    }
    return finish({{"command", command}, {"error", {{"type", type}, {"message", msg}}}}, code);
  }
  report["command"] = command;
  return finish(report, st.code());
}

int cli_main(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> rest;
  std::optional<std::string> workspace_file, budget_text;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    auto take = [&](const std::string& flag, std::optional<std::string>& into) {
      if (a == flag) {
        if (i + 1 >= argv.size()) throw ParseError(flag + " needs a value");
        into = argv[++i];
        return true;
      }
      if (a.rfind(flag + "=", 0) == 0) {
        into = a.substr(flag.size() + 1);
        return true;
      }
      return false;
    };
    try {
      if (take("--workspace", workspace_file) || take("--budget", budget_text)) continue;
    } catch (const Error& e) {
      err << e.what() << "\n";
      return exit_input;
    }
    rest.push_back(a);
  }
  if (rest.empty() || rest[0] == "--help" || rest[0] == "-h") {
    out << run_command({"--help"}, Workspace{}, default_budget()).report;
    return rest.empty() ? exit_input : exit_holds;
  }

  Budget b = default_budget();
  if (budget_text) {
    try {
      b = parse_budget(*budget_text, b);
    } catch (const Error& e) {
      err << e.what() << "\n";
      return exit_input;
    }
  }
  bool run_jobs = rest[0] == "run";
  if (run_jobs) {
    if (rest.size() > 2) {
      err << "run takes at most one workspace file\n";
      return exit_input;
    }
    if (rest.size() == 2) workspace_file = rest[1];
    if (!workspace_file) {
      err << "run needs a workspace file\n";
      return exit_input;
    }
  }

  Workspace ws;
  if (workspace_file) {
    std::ifstream in(*workspace_file);
    if (!in) {
      err << *workspace_file << ": cannot read file\n";
      return exit_input;
    }
    std::stringstream text;
    text << in.rdbuf();
    WorkspaceParse p = parse_workspace(text.str());
    if (!p.workspace) {
      json diags = json::array();
      for (const auto& d : p.diagnostics) {
        err << d.to_string(*workspace_file) << "\n";
        diags.push_back({{"line", d.line}, {"column", d.column}, {"message", d.message}});
      }
      out << json{{"diagnostics", diags}}.dump(2) << "\n";
      return exit_input;
    }
    ws = std::move(*p.workspace);
  }

  if (!run_jobs) {
    CommandResult r = run_command(rest, ws, b);
    out << r.report;
    return r.exit_code;
  }
  Status st;
  json jobs = json::array();
  for (const auto& job : ws.jobs) {
    CommandResult r;
    if (job.args[0] == "run")
      r = {json{{"error", {{"type", "UsageError"}, {"message", "jobs cannot run workspaces"}}}}.dump(2) + "\n",
           exit_input};
    else
      r = run_command(job.args, ws, b);
    st.add_code(r.exit_code);
    json rep;
    try {
      rep = json::parse(r.report);
    } catch (const json::exception&) {
      rep = r.report;
    }
    jobs.push_back({{"args", job.args}, {"line", job.line}, {"exit", r.exit_code}, {"report", rep}});
  }
  json names = json::object();
  for (const auto& [k, _] : ws.algebras) names["algebras"].push_back(k);
  for (const auto& [k, _] : ws.modules) names["modules"].push_back(k);
  for (const auto& [k, _] : ws.maps) names["maps"].push_back(k);
  out << json{{"workspace", names}, {"jobs", jobs}}.dump(2) << "\n";
  return st.code();
}

}  // namespace reflexa
