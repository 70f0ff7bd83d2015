#include "reflexa/morita.hpp"

#include "reflexa/corpus.hpp"
#include "reflexa/enumerate.hpp"
#include "reflexa/error.hpp"

namespace reflexa {

namespace {

std::vector<Module> enumerate_fallback(const AlgebraPtr& a, Side side, const Budget& b, std::size_t& reached) {
  for (std::size_t d = b.dim; d >= 1; --d) {
    try {
      auto mods = enumerate_modules(a, side, d, b);
      reached = d;
      return mods;
    } catch (const BudgetExceeded&) {
    }
  }
  reached = 0;
  return {};
}

bool indecomposable(const Module& m, const Budget& b) {
  try {
    return is_indecomposable(m, b);
  } catch (const Undecided&) {
    return true;
  }
}

// Sum over the hom bases: (+) targets[i]^{dim Hom(x, targets[i])}, with x mapping in.
ModuleMap approximation_into(const Module& x, const std::vector<Module>& targets) {
  std::vector<Module> parts;
  std::vector<ModuleMap> comps;
  for (const auto& t : targets)
    for (auto& h : hom_space(x, t)) {
      parts.push_back(t);
      comps.push_back(h);
    }
  auto ds = direct_sum(parts, x.acting(), x.side());
  ModuleMap out = ModuleMap::zero(x, ds.sum);
  for (std::size_t i = 0; i < comps.size(); ++i) out = out + ds.injections[i] * comps[i];
  return out;
}

ModuleMap approximation_onto(const Module& x, const std::vector<Module>& sources) {
  std::vector<Module> parts;
  std::vector<ModuleMap> comps;
  for (const auto& s : sources)
    for (auto& h : hom_space(s, x)) {
      parts.push_back(s);
      comps.push_back(h);
    }
  auto ds = direct_sum(parts, x.acting(), x.side());
  ModuleMap out = ModuleMap::zero(ds.sum, x);
  for (std::size_t i = 0; i < comps.size(); ++i) out = out + comps[i] * ds.projections[i];
  return out;
}

struct Recorder {
  MoritaReport& rep;
  void operator()(const std::string& name, bool ok, const std::string& detail,
                  std::optional<Witness> w = std::nullopt) {
    Check c{name, ok ? Verdict::holds : Verdict::fails, std::nullopt, detail};
    if (!ok) c.witness = w;
    rep.checks.push_back(c);
    if (!ok) throw TheoremViolation(name + " fails (" + detail + ") for " + rep.algebra);
  }
};

}  // namespace

const char* to_string(Mode m) { return m == Mode::module_category ? "module_category" : "refl_max"; }

bool MoritaReport::all_pass() const {
  for (const auto& c : checks)
    if (c.verdict != Verdict::holds) return false;
  return true;
}

SummandList make_summands(const std::vector<Module>& ms, const Budget& b) {
  if (ms.empty()) throw InvalidModule("summand list is empty");
  SummandList out;
  for (const auto& m : ms) {
    require_same_category(ms[0], m, "summand list");
    AlgebraPtr base = m.base();
    Module reg = regular_module(base, m.side());
    if (m.key() == reg.key() || (m.dims() == reg.dims() && is_isomorphic(m, reg, b))) {
      for (std::size_t v = 0; v < base->vertex_count(); ++v)
        out.summands.push_back(projective_module(base, v, m.side()));
      continue;
    }
    if (m.is_zero()) throw InvalidModule("summand is zero");
    if (!is_indecomposable(m, b)) throw NotBasic("summand " + m.describe() + " is decomposable");
    out.summands.push_back(m);
  }
  for (std::size_t i = 0; i < out.summands.size(); ++i)
    for (std::size_t j = i + 1; j < out.summands.size(); ++j)
      if (is_isomorphic(out.summands[i], out.summands[j], b))
        throw NotPairwiseNoniso("summands " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                " are isomorphic");
  out.pairwise_noniso = true;
  return out;
}

EndAlgebra end_algebra(const SummandList& ms) {
  if (!ms.pairwise_noniso) throw NotPairwiseNoniso("summand list is not certified pairwise non-isomorphic");
  EndAlgebra e;
  e.summands = ms.summands;
  std::size_t r = ms.summands.size();
  const Field& k = ms.summands[0].field();
  e.hom.assign(r, std::vector<std::vector<ModuleMap>>(r));
  std::vector<std::vector<std::size_t>> offset(r, std::vector<std::size_t>(r));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      e.hom[i][j] = hom_space(ms.summands[i], ms.summands[j]);
      offset[i][j] = e.dictionary.size();
      for (std::size_t c = 0; c < e.hom[i][j].size(); ++c) {
        e.dictionary.push_back({i, j, c});
        labels.push_back("h" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" + std::to_string(c + 1));
      }
    }
  std::size_t n = e.dictionary.size();
  Scalar zero(k, 0);
  auto coords = [&](std::size_t i, std::size_t j, const ModuleMap& f) {
    std::vector<Scalar> v(n, zero);
    auto x = hom_coordinates(e.hom[i][j], f);
    if (!x) throw InternalInconsistency("composite lies outside the hom space");
    for (std::size_t c = 0; c < e.hom[i][j].size(); ++c) v[offset[i][j] + c] = x->at(0, c);
    return v;
  };
  MultTable table(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, zero)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto& ea = e.dictionary[a];
      const auto& eb = e.dictionary[b];
      if (ea.to != eb.from) continue;
      // a * b in End^op is b after a
      ModuleMap comp = e.hom[eb.from][eb.to][eb.index] * e.hom[ea.from][ea.to][ea.index];
      table[a][b] = coords(ea.from, eb.to, comp);
    }
  std::vector<Scalar> unit(n, zero);
  std::vector<std::vector<Scalar>> idem;
  for (std::size_t i = 0; i < r; ++i) {
    auto v = coords(i, i, ModuleMap::identity(ms.summands[i]));
    for (std::size_t c = 0; c < n; ++c) unit[c] = unit[c] + v[c];
    idem.push_back(std::move(v));
  }
  e.algebra = Algebra::from_table(k, labels, table, unit, idem);
  std::string name = "End(";
  for (std::size_t i = 0; i < r; ++i) name += (i ? "+" : "") + ms.summands[i].describe();
  e.algebra->set_name(name + ")^op");
  return e;
}

Module hom_functor(const EndAlgebra& e, const Module& x) {
  const AlgebraPtr& lam = e.algebra;
  std::size_t r = e.summands.size();
  std::vector<std::vector<ModuleMap>> hx(r);
  std::vector<std::size_t> dims(r);
  for (std::size_t i = 0; i < r; ++i) {
    hx[i] = hom_space(e.summands[i], x);
    dims[i] = hx[i].size();
  }
  const Field& k = x.field();
  std::vector<Matrix> gens;
  for (std::size_t g = 0; g < lam->generators().size(); ++g) {
    const auto& gen = lam->generators()[g];
    std::size_t w = lam->generator_word(g);
    std::size_t s = gen.src, t = gen.dst;
    Matrix blk(k, dims[t], dims[s]);
    for (std::size_t c = 0; c < dims[s]; ++c) {
      ModuleMap acc = ModuleMap::zero(e.summands[t], x);
      for (std::size_t b = 0; b < e.dictionary.size(); ++b) {
        Scalar coef = lam->word_to_user().at(b, w);
        if (coef.is_zero()) continue;
        const auto& d = e.dictionary[b];
        if (d.from != t || d.to != s) throw InternalInconsistency("generator is not Peirce-homogeneous");
        acc = acc + (hx[s][c] * e.hom[d.from][d.to][d.index]).scaled(coef);
      }
      auto y = hom_coordinates(hx[t], acc);
      if (!y) throw InternalInconsistency("composite lies outside the hom space");
      for (std::size_t i = 0; i < dims[t]; ++i) blk.set(i, c, y->at(0, i));
    }
    gens.push_back(std::move(blk));
  }
  return Module::from_generators(lam, Side::left, dims, gens);
}

ModuleMap hom_functor(const EndAlgebra& e, const ModuleMap& h) {
  Module fx = hom_functor(e, h.source()), fy = hom_functor(e, h.target());
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < e.summands.size(); ++i) {
    auto bx = hom_space(e.summands[i], h.source());
    auto by = hom_space(e.summands[i], h.target());
    Matrix blk(h.source().field(), by.size(), bx.size());
    for (std::size_t c = 0; c < bx.size(); ++c) {
      auto y = hom_coordinates(by, h * bx[c]);
      if (!y) throw InternalInconsistency("composite lies outside the hom space");
      for (std::size_t j = 0; j < by.size(); ++j) blk.set(j, c, y->at(0, j));
    }
    blocks.push_back(std::move(blk));
  }
  return ModuleMap(fx, fy, std::move(blocks));
}

bool is_generator(const SummandList& ms, Mode mode, const Budget& b) {
  const Module& m0 = ms.summands.at(0);
  AlgebraPtr base = m0.base();
  if (mode == Mode::module_category) {
    for (std::size_t v = 0; v < base->vertex_count(); ++v) {
      Module p = projective_module(base, v, m0.side());
      bool found = false;
      for (const auto& s : ms.summands)
        if (s.dims() == p.dims() && is_isomorphic(s, p, b)) found = true;
      if (!found) return false;
    }
    return true;
  }
  if (!two_sided_22(base)) throw ConditionFails("refl_max mode needs two-sided (2,2) on " + base->name());
  std::size_t reached = 0;
  for (const auto& x : enumerate_fallback(base, m0.side(), b, reached)) {
    if (!is_reflexive(x)) continue;
    if (!is_refl_deflation(approximation_onto(x, ms.summands)) ||
        !approximation_onto(x, ms.summands).is_surjective())
      return false;
  }
  return true;
}

bool is_cogenerator(const SummandList& ms, Mode mode, const Budget& b) {
  const Module& m0 = ms.summands.at(0);
  AlgebraPtr base = m0.base();
  if (mode == Mode::module_category) {
    for (std::size_t v = 0; v < base->vertex_count(); ++v) {
      Module inj = injective_module(base, v, m0.side());
      bool found = false;
      for (const auto& s : ms.summands)
        if (s.dims() == inj.dims() && is_isomorphic(s, inj, b)) found = true;
      if (!found) return false;
    }
    return true;
  }
  if (!two_sided_22(base)) throw ConditionFails("refl_max mode needs two-sided (2,2) on " + base->name());
  std::size_t reached = 0;
  for (const auto& x : enumerate_fallback(base, m0.side(), b, reached)) {
    if (!is_reflexive(x)) continue;
    if (!is_refl_inflation(approximation_into(x, ms.summands))) return false;
  }
  return true;
}

MoritaReport verify_equivalence(const SummandList& ms, Mode mode, const Budget& b) {
  const Module& m0 = ms.summands.at(0);
  AlgebraPtr sigma = m0.base();
  Side side = m0.side();
  if (!is_generator(ms, mode, b)) throw ConditionFails("summands do not form a generator in mode " + std::string(to_string(mode)));
  if (!is_cogenerator(ms, mode, b))
    throw ConditionFails("summands do not form a cogenerator in mode " + std::string(to_string(mode)));
  EndAlgebra e = end_algebra(ms);
  const AlgebraPtr& lam = e.algebra;
  MoritaReport rep;
  rep.algebra = sigma->name();
  rep.end_algebra = lam->name();
  rep.end_dim = lam->dim();
  rep.mode = mode;
  Recorder record{rep};
  std::string budget = "dim " + std::to_string(b.dim);

  record("two-sided (2,2) of the endomorphism algebra", two_sided_22(lam), "ln_condition both sides");

  std::size_t reached = 0;
  std::vector<Module> objs;
  for (const auto& x : enumerate_fallback(sigma, side, b, reached))
    if (mode == Mode::module_category || is_reflexive(x)) objs.push_back(x);
  rep.facts.push_back({"objects", std::to_string(objs.size())});
  rep.facts.push_back({"object_dim_reached", std::to_string(reached)});

  std::vector<Module> images;
  for (const auto& x : objs) images.push_back(hom_functor(e, x));

  std::size_t pairs = 0;
  bool ff = true;
  std::optional<Witness> ffw;
  for (std::size_t i = 0; i < objs.size() && ff; ++i)
    for (std::size_t j = 0; j < objs.size() && ff; ++j) {
      auto basis = hom_space(objs[i], objs[j]);
      std::size_t target = hom_dim(images[i], images[j]);
      std::size_t rank = 0;
      if (!basis.empty()) {
        Matrix rows = hom_functor(e, basis[0]).as_row();
        for (std::size_t c = 1; c < basis.size(); ++c) rows = vstack(rows, hom_functor(e, basis[c]).as_row());
        rank = rows.cols() ? rows.rank() : 0;
      }
      ++pairs;
      if (rank != basis.size() || target != basis.size()) {
        ff = false;
        ffw = Witness{"pair", "Hom dimensions differ", {objs[i], objs[j]}, {}};
      }
    }
  record("full faithfulness", ff, std::to_string(pairs) + " pairs within " + budget, ffw);

  bool duality = true, reflexive = true;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    std::size_t back = 0;
    for (const auto& s : ms.summands) back += hom_dim(objs[i], s);
    if (star_dual(images[i]).total_dim() != back) duality = false;
    if (!is_reflexive(images[i])) reflexive = false;
  }
  record("dual of Hom(M, x) against Hom(x, M)", duality, std::to_string(objs.size()) + " objects within " + budget);
  record("images are reflexive", reflexive, std::to_string(objs.size()) + " objects within " + budget);

  // essential surjectivity through 0 -> L -> P0 -> P1
  std::vector<Module> proj_images;
  for (const auto& s : ms.summands) proj_images.push_back(hom_functor(e, s));
  std::size_t lam_reached = 0;
  auto lam_mods = enumerate_fallback(lam, Side::left, b, lam_reached);
  rep.facts.push_back({"lambda_modules", std::to_string(lam_mods.size())});
  rep.facts.push_back({"lambda_dim_reached", std::to_string(lam_reached)});
  std::size_t realized = 0;
  std::vector<Module> lam_indec_refl;
  for (const auto& l : lam_mods) {
    if (!is_reflexive(l)) continue;
    if (indecomposable(l, b)) lam_indec_refl.push_back(l);
    auto transport = [&](const Module& x, std::vector<std::size_t>& verts) {
      std::vector<Module> parts;
      std::vector<ModuleMap> comps;
      for (std::size_t v = 0; v < proj_images.size(); ++v)
        for (auto& h : hom_space(x, proj_images[v])) {
          parts.push_back(proj_images[v]);
          comps.push_back(h);
          verts.push_back(v);
        }
      auto ds = direct_sum(parts, x.acting(), x.side());
      ModuleMap out = ModuleMap::zero(x, ds.sum);
      for (std::size_t i = 0; i < comps.size(); ++i) out = out + ds.injections[i] * comps[i];
      return std::pair{out, ds};
    };
    std::vector<std::size_t> v0, v1;
    auto [a0, ds0] = transport(l, v0);
    auto c = cokernel(a0);
    auto [a1, ds1] = transport(c.module, v1);
    ModuleMap g0 = a1 * c.map;
    bool ok = a0.is_injective() && a1.is_injective();
    // pull each component back to a map between summands
    std::vector<Module> m0p, m1p;
    for (auto v : v0) m0p.push_back(ms.summands[v]);
    for (auto v : v1) m1p.push_back(ms.summands[v]);
    auto s0 = direct_sum(m0p, m0.acting(), side), s1 = direct_sum(m1p, m0.acting(), side);
    std::vector<std::vector<std::optional<ModuleMap>>> comps(v1.size(), std::vector<std::optional<ModuleMap>>(v0.size()));
    for (std::size_t t = 0; t < v1.size() && ok; ++t)
      for (std::size_t s = 0; s < v0.size() && ok; ++s) {
        ModuleMap comp = ds1.projections[t] * g0 * ds0.injections[s];
        const auto& basis = e.hom[v0[s]][v1[t]];
        ModuleMap phi = ModuleMap::zero(ms.summands[v0[s]], ms.summands[v1[t]]);
        if (!comp.is_zero()) {
          Matrix want = comp.as_row();
          Matrix sys(want.field(), want.cols(), basis.size());
          for (std::size_t i = 0; i < basis.size(); ++i) {
            ModuleMap fi(proj_images[v0[s]], proj_images[v1[t]], hom_functor(e, basis[i]).blocks(), false);
            Matrix r = fi.as_row();
            for (std::size_t j = 0; j < r.cols(); ++j) sys.set(j, i, r.at(0, j));
          }
          auto x = basis.empty() ? std::nullopt : solve(sys, want.transpose());
          if (!x) {
            ok = false;
            break;
          }
          phi = combine(basis, x->transpose(), ms.summands[v0[s]], ms.summands[v1[t]]);
        }
        comps[t][s] = phi;
      }
    if (ok) {
      ModuleMap g = map_between_sums(s0, s1, comps);
      Module x = kernel(g).module;
      Module fx = hom_functor(e, x);
      ok = fx.dims() == l.dims() && is_isomorphic(fx, l, b).has_value();
    }
    if (!ok) record("essential surjectivity", false, "reflexive module " + l.describe() + " is not in the image",
                    Witness{"module", "reflexive module not in the image", {l}, {}});
    ++realized;
  }
  record("essential surjectivity", true, std::to_string(realized) + " reflexive modules within " + budget);

  Bounded dd = dominant_dimension(lam);
  rep.facts.push_back({"end_dominant_dimension", dd.to_string()});
  rep.facts.push_back({"lambda_indecomposable_reflexive", std::to_string(lam_indec_refl.size())});
  if (mode == Mode::module_category && dd.value >= 2) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < objs.size(); ++i)
      if (images[i].total_dim() <= lam_reached && indecomposable(objs[i], b)) ++count;
    rep.facts.push_back({"sigma_indecomposable_transported", std::to_string(count)});
    record("indecomposable reflexives match indecomposable modules", count == lam_indec_refl.size(),
           std::to_string(lam_indec_refl.size()) + " vs " + std::to_string(count) + " within " + budget);
  }
  return rep;
}

MoritaReport reflexive_equivalence_check(const AlgebraPtr& lambda, const std::vector<Module>& m, const Budget& b) {
  if (!two_sided_22(lambda)) throw ConditionFails("two-sided (2,2) fails for " + lambda->name());
  SummandList ms = make_summands(m, b);
  for (const auto& s : ms.summands)
    if (!is_reflexive(s)) throw ConditionFails("summand " + s.describe() + " is not reflexive");
  if (!is_generator(ms, Mode::module_category, b))
    throw ConditionFails("summand list does not contain the regular module");
  if (!is_generator(ms, Mode::refl_max, b)) throw TheoremViolation("not a generator of refl in the maximum structure");
  if (!is_cogenerator(ms, Mode::refl_max, b))
    throw TheoremViolation("not a cogenerator of refl in the maximum structure");
  MoritaReport rep = verify_equivalence(ms, Mode::refl_max, b);
  rep.checks.insert(rep.checks.begin(), {Check{"generator in refl_max", Verdict::holds, std::nullopt, "dim " + std::to_string(b.dim)},
                                         Check{"cogenerator in refl_max", Verdict::holds, std::nullopt, "dim " + std::to_string(b.dim)}});
  return rep;
}

Module truncated_quotient(const AlgebraPtr& kxn, std::size_t i) {
  const Field& k = kxn->field();
  Matrix x(k, i, i);
  for (std::size_t j = 0; j + 1 < i; ++j) x.set(j + 1, j, Scalar(k, 1));
  return Module::from_generators(kxn, Side::left, {i}, {x});
}

AlgebraPtr auslander_algebra(Field k, std::size_t n) {
  AlgebraPtr sigma = truncated_polynomial(k, n);
  std::vector<Module> ms;
  for (std::size_t i = n; i >= 1; --i) ms.push_back(truncated_quotient(sigma, i));
  EndAlgebra e = end_algebra(make_summands(ms));
  e.algebra->set_name("Aus(k[x]/x^" + std::to_string(n) + ")");
  return e.algebra;
}

}  // namespace reflexa
