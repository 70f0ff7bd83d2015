#include "reflexa/workspace.hpp"

#include <sstream>

#include <yaml-cpp/yaml.h>

#include "reflexa/corpus.hpp"
#include "reflexa/error.hpp"
#include "reflexa/homology.hpp"

namespace reflexa {

std::string Diagnostic::to_string(const std::string& file) const {
  std::string s = file;
  if (line) s += ":" + std::to_string(line) + ":" + std::to_string(column);
  return s + ": " + message;
}

namespace {

const std::map<std::string, AlgebraPtr>& builtins() {
  static const std::map<std::string, AlgebraPtr> table = [] {
    std::map<std::string, AlgebraPtr> t;
    for (const auto& a : standard_corpus(Field::prime(2))) t[a->name()] = a;
    return t;
  }();
  return table;
}

class Parser {
 public:
  WorkspaceParse run(const std::string& text) {
    YAML::Node root;
    try {
      root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
      diags_.push_back({std::size_t(e.mark.line + 1), std::size_t(e.mark.column + 1), "syntax error: " + e.msg});
      return {std::nullopt, diags_};
    } catch (const std::exception& e) {
      diags_.push_back({0, 0, std::string("syntax error: ") + e.what()});
      return {std::nullopt, diags_};
    }
    if (!root.IsMap()) {
      if (!root.IsNull()) error(root, "workspace must be a mapping with algebras, modules, maps and jobs");
      return finish();
    }
    for (auto it = root.begin(); it != root.end(); ++it) {
      std::string key = it->first.as<std::string>("");
      if (key != "algebras" && key != "modules" && key != "maps" && key != "jobs")
        error(it->first, "unknown top-level key '" + key + "'");
    }
    if (auto n = root["algebras"]) section(n, "algebras", [&](const std::string& name, const YAML::Node& v) { algebra(name, v); });
    if (auto n = root["modules"]) section(n, "modules", [&](const std::string& name, const YAML::Node& v) { module(name, v); });
    if (auto n = root["maps"]) section(n, "maps", [&](const std::string& name, const YAML::Node& v) { map(name, v); });
    if (auto n = root["jobs"]) jobs(n);
    return finish();
  }

 private:
  std::vector<Diagnostic> diags_;
  Workspace ws_;

  WorkspaceParse finish() {
    if (!diags_.empty()) return {std::nullopt, diags_};
    return {std::move(ws_), {}};
  }

  void error(const YAML::Node& n, const std::string& msg) {
    auto m = n.Mark();
    if (m.is_null())
      diags_.push_back({0, 0, msg});
    else
      diags_.push_back({std::size_t(m.line + 1), std::size_t(m.column + 1), msg});
  }

  template <class F>
  void section(const YAML::Node& n, const std::string& what, F body) {
    if (!n.IsMap()) {
      error(n, what + " must be a mapping from names to definitions");
      return;
    }
    for (auto it = n.begin(); it != n.end(); ++it) {
      std::string name = it->first.as<std::string>("");
      if (name.empty()) {
        error(it->first, "empty name in " + what);
        continue;
      }
      try {
        body(name, it->second);
      } catch (const Error& e) {
        error(it->second, "in '" + name + "': " + e.what());
      } catch (const YAML::Exception& e) {
        error(it->second, "in '" + name + "': " + e.msg);
      }
    }
  }

  std::optional<std::string> scalar(const YAML::Node& n, const std::string& what) {
    if (!n || !n.IsScalar()) {
      error(n ? n : YAML::Node(), what + " must be a scalar");
      return std::nullopt;
    }
    return n.Scalar();
  }

  std::optional<std::size_t> count(const YAML::Node& n, const std::string& what) {
    auto s = scalar(n, what);
    if (!s) return std::nullopt;
    try {
      std::size_t pos = 0;
      long v = std::stol(*s, &pos);
      if (pos == s->size() && v >= 0) return std::size_t(v);
    } catch (...) {
    }
    error(n, what + " must be a non-negative integer, got '" + *s + "'");
    return std::nullopt;
  }

  std::optional<Scalar> element(const Field& k, const YAML::Node& n) {
    auto s = scalar(n, "field element");
    if (!s) return std::nullopt;
    try {
      return Scalar::parse(k, *s);
    } catch (const Error& e) {
      error(n, e.what());
      return std::nullopt;
    }
  }

  std::optional<std::vector<Scalar>> vector(const Field& k, const YAML::Node& n, std::size_t len, const std::string& what) {
    if (!n || !n.IsSequence()) {
      error(n ? n : YAML::Node(), what + " must be a list");
      return std::nullopt;
    }
    if (n.size() != len) {
      error(n, what + " has " + std::to_string(n.size()) + " entries, expected " + std::to_string(len));
      return std::nullopt;
    }
    std::vector<Scalar> v;
    for (const auto& x : n) {
      auto e = element(k, x);
      if (!e) return std::nullopt;
      v.push_back(*e);
    }
    return v;
  }

  // rows x cols from a list of rows; [] stands for any empty shape.
  std::optional<Matrix> matrix(const Field& k, const YAML::Node& n, std::size_t rows, std::size_t cols,
                               const std::string& what) {
    if (!n.IsSequence()) {
      error(n, what + " must be a list of rows");
      return std::nullopt;
    }
    Matrix m(k, rows, cols);
    if (n.size() == 0 && rows * cols == 0) return m;
    if (rows == 0 && cols == 0) {
      error(n, what + " must be empty");
      return std::nullopt;
    }
    if (n.size() != rows) {
      error(n, what + " has " + std::to_string(n.size()) + " rows, expected " + std::to_string(rows));
      return std::nullopt;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      const YAML::Node row = n[i];
      if (!row.IsSequence() || row.size() != cols) {
        error(row, what + " row " + std::to_string(i + 1) + " must have " + std::to_string(cols) + " entries");
        return std::nullopt;
      }
      for (std::size_t j = 0; j < cols; ++j) {
        auto e = element(k, row[j]);
        if (!e) return std::nullopt;
        m.set(i, j, *e);
      }
    }
    return m;
  }

  void algebra(const std::string& name, const YAML::Node& n) {
    if (!n.IsMap()) {
      error(n, "algebra '" + name + "' must be a mapping");
      return;
    }
    auto fs = scalar(n["field"], "field of algebra '" + name + "'");
    if (!fs) return;
    Field k = Field::prime(2);
    try {
      k = Field::parse(*fs);
    } catch (const Error& e) {
      error(n["field"], e.what());
      return;
    }
    AlgebraPtr a;
    if (n["quiver"]) {
      a = quiver_algebra(name, k, n);
    } else if (n["table"]) {
      a = table_algebra(name, k, n);
    } else {
      error(n, "algebra '" + name + "' needs either a quiver or a table");
      return;
    }
    if (!a) return;
    a->set_name(name);
    ws_.algebras[name] = a;
  }

  AlgebraPtr quiver_algebra(const std::string& name, const Field& k, const YAML::Node& n) {
    const YAML::Node q = n["quiver"];
    if (!q.IsMap()) {
      error(q, "quiver must be a mapping with vertices and arrows");
      return nullptr;
    }
    auto nv = count(q["vertices"], "quiver vertices");
    if (!nv) return nullptr;
    if (*nv == 0) {
      error(q["vertices"], "a quiver needs at least one vertex");
      return nullptr;
    }
    Quiver quiver{*nv, {}};
    std::map<std::string, std::size_t> index;
    bool ok = true;
    if (const YAML::Node arrows = q["arrows"]) {
      if (!arrows.IsSequence()) {
        error(arrows, "arrows must be a list");
        return nullptr;
      }
      for (const auto& ar : arrows) {
        if (!ar.IsMap()) {
          error(ar, "an arrow must be a mapping {name, src, dst}");
          ok = false;
          continue;
        }
        auto an = scalar(ar["name"], "arrow name");
        auto s = count(ar["src"], "arrow source");
        auto d = count(ar["dst"], "arrow target");
        if (!an || !s || !d) {
          ok = false;
          continue;
        }
        if (*s < 1 || *s > *nv || *d < 1 || *d > *nv) {
          error(ar, "arrow '" + *an + "' has an endpoint outside 1.." + std::to_string(*nv));
          ok = false;
          continue;
        }
        if (index.count(*an)) {
          error(ar, "duplicate arrow name '" + *an + "'");
          ok = false;
          continue;
        }
        index[*an] = quiver.arrows.size();
        quiver.arrows.push_back({*an, *s - 1, *d - 1});
      }
    }
    std::vector<std::vector<std::string>> rels;
    if (const YAML::Node rs = n["relations"]) {
      if (!rs.IsSequence()) {
        error(rs, "relations must be a list of arrow-name paths");
        return nullptr;
      }
      for (const auto& r : rs) {
        if (!r.IsSequence()) {
          error(r, "a relation must be a list of arrow names");
          ok = false;
          continue;
        }
        if (r.size() < 2) {
          error(r, "relations must have length >= 2");
          ok = false;
          continue;
        }
        std::vector<std::string> path;
        for (const auto& x : r) {
          auto an = scalar(x, "arrow name");
          if (!an) {
            ok = false;
            break;
          }
          if (!index.count(*an)) {
            error(x, "unresolved arrow reference '" + *an + "'");
            ok = false;
            break;
          }
          if (!path.empty() && quiver.arrows[index[path.back()]].dst != quiver.arrows[index[*an]].src) {
            error(x, "relation path is not composable at '" + *an + "'");
            ok = false;
            break;
          }
          path.push_back(*an);
        }
        if (path.size() == r.size()) rels.push_back(path);
      }
    }
    if (!ok) return nullptr;
    try {
      return Algebra::bound_quiver(k, quiver, rels);
    } catch (const Error& e) {
      error(n, "algebra '" + name + "': " + e.what());
      return nullptr;
    }
  }

  AlgebraPtr table_algebra(const std::string& name, const Field& k, const YAML::Node& n) {
    const YAML::Node basis = n["basis"];
    if (!basis || !basis.IsSequence() || basis.size() == 0) {
      error(basis ? basis : n, "table algebra '" + name + "' needs a nonempty basis list");
      return nullptr;
    }
    std::vector<std::string> labels;
    for (const auto& b : basis) {
      auto s = scalar(b, "basis label");
      if (!s) return nullptr;
      labels.push_back(*s);
    }
    std::size_t dim = labels.size();
    const YAML::Node table = n["table"];
    if (!table.IsSequence() || table.size() != dim) {
      error(table, "table must have one row per basis element (" + std::to_string(dim) + ")");
      return nullptr;
    }
    MultTable t(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const YAML::Node row = table[i];
      if (!row.IsSequence() || row.size() != dim) {
        error(row, "table row " + std::to_string(i + 1) + " must have " + std::to_string(dim) + " products");
        return nullptr;
      }
      for (std::size_t j = 0; j < dim; ++j) {
        auto v = vector(k, row[j], dim, "product " + labels[i] + "*" + labels[j]);
        if (!v) return nullptr;
        t[i].push_back(*v);
      }
    }
    auto unit = vector(k, n["unit"], dim, "unit");
    if (!unit) return nullptr;
    const YAML::Node idem = n["idempotents"];
    if (!idem || !idem.IsSequence()) {
      error(idem ? idem : n, "idempotents must be a list of vectors");
      return nullptr;
    }
    std::vector<std::vector<Scalar>> es;
    for (const auto& e : idem) {
      auto v = vector(k, e, dim, "idempotent");
      if (!v) return nullptr;
      es.push_back(*v);
    }
    try {
      return Algebra::from_table(k, labels, t, *unit, es);
    } catch (const Error& e) {
      error(n, "algebra '" + name + "': " + e.what());
      return nullptr;
    }
  }

  AlgebraPtr algebra_ref(const YAML::Node& n) {
    auto s = scalar(n, "algebra reference");
    if (!s) return nullptr;
    auto it = ws_.algebras.find(*s);
    if (it != ws_.algebras.end()) return it->second;
    auto b = builtins().find(*s);
    if (b != builtins().end()) return b->second;
    error(n, "unresolved algebra reference '" + *s + "'");
    return nullptr;
  }

  void module(const std::string& name, const YAML::Node& n) {
    if (!n.IsMap()) {
      error(n, "module '" + name + "' must be a mapping");
      return;
    }
    AlgebraPtr base = algebra_ref(n["algebra"]);
    if (!base) return;
    Side side = Side::left;
    if (n["side"]) {
      auto s = scalar(n["side"], "side");
      if (!s) return;
      if (*s == "right")
        side = Side::right;
      else if (*s != "left") {
        error(n["side"], "side must be left or right");
        return;
      }
    }
    AlgebraPtr act = Module::acting_for(base, side);
    const Field& k = base->field();
    if (n["dims"]) {
      const YAML::Node dn = n["dims"];
      std::vector<std::size_t> dims(act->vertex_count(), 0);
      if (dn.IsMap()) {
        for (auto it = dn.begin(); it != dn.end(); ++it) {
          auto v = count(it->first, "vertex");
          auto d = count(it->second, "dimension");
          if (!v || !d) return;
          if (*v < 1 || *v > dims.size()) {
            error(it->first, "vertex " + std::to_string(*v) + " outside 1.." + std::to_string(dims.size()));
            return;
          }
          dims[*v - 1] = *d;
        }
      } else if (dn.IsSequence() && dn.size() == dims.size()) {
        for (std::size_t v = 0; v < dims.size(); ++v) {
          auto d = count(dn[v], "dimension");
          if (!d) return;
          dims[v] = *d;
        }
      } else {
        error(dn, "dims must map vertices to dimensions or list one dimension per vertex");
        return;
      }
      std::map<std::string, std::size_t> gidx;
      for (std::size_t g = 0; g < act->generators().size(); ++g) gidx[act->generators()[g].name] = g;
      std::vector<Matrix> gens;
      for (const auto& g : act->generators()) gens.push_back(Matrix(k, dims[g.dst], dims[g.src]));
      if (const YAML::Node an = n["actions"]) {
        if (!an.IsMap()) {
          error(an, "actions must map arrow names to matrices");
          return;
        }
        for (auto it = an.begin(); it != an.end(); ++it) {
          auto gname = scalar(it->first, "arrow name");
          if (!gname) return;
          auto gi = gidx.find(*gname);
          if (gi == gidx.end()) {
            error(it->first, "unresolved arrow reference '" + *gname + "'");
            return;
          }
          const auto& g = act->generators()[gi->second];
          auto m = matrix(k, it->second, dims[g.src], dims[g.dst], "matrix of '" + *gname + "'");
          if (!m) return;
          gens[gi->second] = m->transpose();
        }
      }
      try {
        Module m = Module::from_generators(act, side, dims, gens);
        ws_.modules.emplace(name, m);
        ws_.module_basis.emplace(name, Matrix::identity(k, m.total_dim()));
      } catch (const Error& e) {
        error(n, "module '" + name + "': " + e.what());
      }
      return;
    }
    if (n["total"]) {
      auto total = count(n["total"], "total dimension");
      if (!total) return;
      table_module(name, act, side, *total, n);
      return;
    }
    error(n, "module '" + name + "' needs dims (quiver form) or total (basis form)");
  }

  void table_module(const std::string& name, const AlgebraPtr& act, Side side, std::size_t total, const YAML::Node& n) {
    const Field& k = act->field();
    const YAML::Node an = n["actions"];
    if (!an || !an.IsMap()) {
      error(an ? an : n, "actions must map every basis label to a matrix");
      return;
    }
    std::vector<Matrix> rho;
    for (const auto& label : act->labels()) {
      const YAML::Node m = an[label];
      if (!m) {
        error(an, "missing action of basis element '" + label + "'");
        return;
      }
      auto x = matrix(k, m, total, total, "matrix of '" + label + "'");
      if (!x) return;
      rho.push_back(x->transpose());
    }
    std::size_t dim = act->dim();
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        Matrix want(k, total, total);
        for (std::size_t c = 0; c < dim; ++c) want += rho[c].scaled(act->table()[i][j][c]);
        if (!(rho[i] * rho[j] == want)) {
          error(an, "action is not multiplicative on " + act->labels()[i] + "*" + act->labels()[j]);
          return;
        }
      }
    Matrix unit(k, total, total);
    for (std::size_t c = 0; c < dim; ++c) unit += rho[c].scaled(act->unit()[c]);
    if (!unit.is_identity()) {
      error(an, "the unit does not act as the identity");
      return;
    }
    auto word_action = [&](std::size_t w) {
      Matrix r(k, total, total);
      for (std::size_t c = 0; c < dim; ++c) r += rho[c].scaled(act->word_to_user().at(c, w));
      return r;
    };
    std::vector<std::size_t> dims;
    Matrix basis(k, total, 0);
    for (std::size_t v = 0; v < act->vertex_count(); ++v) {
      Matrix cs = column_space(word_action(v));
      dims.push_back(cs.cols());
      basis = basis.cols() ? hstack(basis, cs) : cs;
    }
    if (basis.cols() != total) {
      error(an, "vertex idempotents do not decompose the module");
      return;
    }
    auto inv = inverse(basis);
    if (!inv) {
      error(an, "vertex idempotents do not decompose the module");
      return;
    }
    std::vector<std::size_t> off(dims.size() + 1, 0);
    for (std::size_t v = 0; v < dims.size(); ++v) off[v + 1] = off[v] + dims[v];
    std::vector<Matrix> gens;
    for (std::size_t g = 0; g < act->generators().size(); ++g) {
      const auto& gen = act->generators()[g];
      Matrix full = *inv * word_action(act->generator_word(g)) * basis;
      gens.push_back(full.block(off[gen.dst], off[gen.src], dims[gen.dst], dims[gen.src]));
    }
    try {
      Module m = Module::from_generators(act, side, dims, gens);
      ws_.modules.emplace(name, m);
      ws_.module_basis.emplace(name, basis);
    } catch (const Error& e) {
      error(n, "module '" + name + "': " + e.what());
    }
  }

  void map(const std::string& name, const YAML::Node& n) {
    if (!n.IsMap()) {
      error(n, "map '" + name + "' must be a mapping");
      return;
    }
    auto src = module_ref(n["source"]);
    auto dst = module_ref(n["target"]);
    if (!src || !dst) return;
    const Module& s = ws_.modules.at(*src);
    const Module& t = ws_.modules.at(*dst);
    const Field& k = s.field();
    std::vector<Matrix> blocks;
    if (const YAML::Node bn = n["blocks"]) {
      for (std::size_t v = 0; v < s.vertex_count(); ++v) blocks.push_back(Matrix(k, t.dim(v), s.dim(v)));
      if (!bn.IsMap()) {
        error(bn, "blocks must map vertices to matrices");
        return;
      }
      for (auto it = bn.begin(); it != bn.end(); ++it) {
        auto v = count(it->first, "vertex");
        if (!v) return;
        if (*v < 1 || *v > s.vertex_count()) {
          error(it->first, "vertex outside 1.." + std::to_string(s.vertex_count()));
          return;
        }
        auto m = matrix(k, it->second, s.dim(*v - 1), t.dim(*v - 1), "block at vertex " + std::to_string(*v));
        if (!m) return;
        blocks[*v - 1] = m->transpose();
      }
    } else if (const YAML::Node mn = n["matrix"]) {
      auto m = matrix(k, mn, s.total_dim(), t.total_dim(), "map matrix");
      if (!m) return;
      auto inv = inverse(ws_.module_basis.at(*dst));
      Matrix internal = *inv * m->transpose() * ws_.module_basis.at(*src);
      for (std::size_t v = 0; v < s.vertex_count(); ++v)
        for (std::size_t u = 0; u < s.vertex_count(); ++u) {
          Matrix b = internal.block(t.offset(u), s.offset(v), t.dim(u), s.dim(v));
          if (u == v)
            blocks.push_back(b);
          else if (!b.is_zero()) {
            error(mn, "map does not respect the vertex decomposition");
            return;
          }
        }
    } else {
      error(n, "map '" + name + "' needs blocks or matrix");
      return;
    }
    try {
      ws_.maps.emplace(name, ModuleMap(s, t, blocks));
    } catch (const Error& e) {
      error(n, "map '" + name + "': " + e.what());
    }
  }

  std::optional<std::string> module_ref(const YAML::Node& n) {
    auto s = scalar(n, "module reference");
    if (!s) return std::nullopt;
    if (!ws_.modules.count(*s)) {
      error(n, "unresolved module reference '" + *s + "'");
      return std::nullopt;
    }
    return s;
  }

  void jobs(const YAML::Node& n) {
    if (!n.IsSequence()) {
      error(n, "jobs must be a list of command lines");
      return;
    }
    for (const auto& j : n) {
      Job job;
      job.line = j.Mark().line + 1;
      if (j.IsScalar()) {
        std::istringstream in(j.Scalar());
        std::string tok;
        while (in >> tok) job.args.push_back(tok);
      } else if (j.IsSequence()) {
        for (const auto& t : j) {
          auto s = scalar(t, "job argument");
          if (!s) return;
          job.args.push_back(*s);
        }
      } else {
        error(j, "a job is a command line string or a list of arguments");
        continue;
      }
      if (job.args.empty()) {
        error(j, "empty job");
        continue;
      }
      ws_.jobs.push_back(std::move(job));
    }
  }
};

std::size_t vertex_suffix(const std::string& s, const std::string& whole) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos == s.size() && v >= 1) return std::size_t(v);
  } catch (...) {
  }
  throw ParseError("bad vertex in module reference '" + whole + "'");
}

}  // namespace

WorkspaceParse parse_workspace(const std::string& text) {
  try {
    return Parser().run(text);
  } catch (const std::exception& e) {
    return {std::nullopt, {{0, 0, std::string("internal parser failure: ") + e.what()}}};
  }
}

AlgebraPtr builtin_algebra(const std::string& name) {
  auto it = builtins().find(name);
  return it == builtins().end() ? nullptr : it->second;
}

std::vector<std::string> builtin_algebra_names() {
  std::vector<std::string> out;
  for (const auto& a : standard_corpus(Field::prime(2))) out.push_back(a->name());
  return out;
}

AlgebraPtr resolve_algebra(const Workspace& ws, const std::string& name) {
  auto it = ws.algebras.find(name);
  if (it != ws.algebras.end()) return it->second;
  if (auto b = builtin_algebra(name)) return b;
  throw ParseError("unresolved algebra reference '" + name + "'");
}

Module resolve_module(const Workspace& ws, const std::string& name) {
  auto it = ws.modules.find(name);
  if (it != ws.modules.end()) return it->second;
  auto at = name.find('@');
  if (at == std::string::npos) throw ParseError("unresolved module reference '" + name + "'");
  std::string head = name.substr(0, at);
  AlgebraPtr a = resolve_algebra(ws, name.substr(at + 1));
  if (head == "Lambda") return regular_module(a, Side::left);
  if (head == "DLambda") return d_dual(regular_module(a, Side::right));
  if (head.size() >= 2 && (head[0] == 'S' || head[0] == 'P' || head[0] == 'I')) {
    std::size_t v = vertex_suffix(head.substr(1), name);
    if (v > a->vertex_count()) throw ParseError("vertex out of range in module reference '" + name + "'");
    if (head[0] == 'S') return simple_module(a, v - 1);
    if (head[0] == 'P') return projective_module(a, v - 1);
    return injective_module(a, v - 1);
  }
  throw ParseError("unresolved module reference '" + name + "'");
}

ModuleMap resolve_map(const Workspace& ws, const std::string& name) {
  auto it = ws.maps.find(name);
  if (it != ws.maps.end()) return it->second;
  auto colon = name.find(':');
  if (colon != std::string::npos) {
    std::string kind = name.substr(0, colon);
    Module m = resolve_module(ws, name.substr(colon + 1));
    if (kind == "cover") return projective_cover(m);
    if (kind == "envelope") return injective_envelope(m);
    if (kind == "eval") return evaluation(m);
  }
  throw ParseError("unresolved map reference '" + name + "'");
}

}  // namespace reflexa
