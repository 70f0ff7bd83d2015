#include "reflexa/homology.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace reflexa {

namespace {

AlgebraPtr base_of(const AlgebraPtr& acting, Side side) {
  return side == Side::left ? acting : acting->opposite();
}

// off[s][v]: row offset of summand s at vertex v.
std::vector<std::vector<std::size_t>> sum_offsets(const Algebra& B, const std::vector<std::size_t>& tops) {
  std::size_t r = B.vertex_count();
  std::vector<std::vector<std::size_t>> off(tops.size(), std::vector<std::size_t>(r));
  std::vector<std::size_t> acc(r, 0);
  for (std::size_t s = 0; s < tops.size(); ++s)
    for (std::size_t v = 0; v < r; ++v) {
      off[s][v] = acc[v];
      acc[v] += B.words_between(tops[s], v).size();
    }
  return off;
}

std::size_t position(const std::vector<std::size_t>& sorted, std::size_t w) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), w);
  if (it == sorted.end() || *it != w) throw InternalInconsistency("word outside the expected Peirce piece");
  return static_cast<std::size_t>(it - sorted.begin());
}

Matrix act_terms(const Module& m, const std::vector<Term>& terms, std::size_t src, std::size_t dst) {
  Matrix r(m.field(), m.dim(dst), m.dim(src));
  for (const auto& t : terms) r += m.word(t.word).scaled(t.coef);
  return r;
}

ProjMap proj_map_of_generator(const AlgebraPtr& acting, Side side, std::size_t g) {
  const auto& gen = acting->generators()[g];
  // x -> x * g sends P(dst) to P(src)
  ProjMap f{acting, side, {gen.dst}, {gen.src}, {}};
  f.u = {{{Term{acting->generator_word(g), Scalar(acting->field(), 1)}}}};
  return f;
}

std::size_t rank_of(const Matrix& m) { return m.rows() && m.cols() ? m.rank() : 0; }

// Hom(-, N) applied to d_{k+1}: block (t, s) is rho_N(u[t][s]).
Matrix cochain_map(const ProjMap& f, const Module& n) {
  std::size_t rows = 0, cols = 0;
  std::vector<std::size_t> roff, coff;
  for (auto t : f.from) {
    roff.push_back(rows);
    rows += n.dim(t);
  }
  for (auto s : f.to) {
    coff.push_back(cols);
    cols += n.dim(s);
  }
  Matrix m(n.field(), rows, cols);
  for (std::size_t t = 0; t < f.from.size(); ++t)
    for (std::size_t s = 0; s < f.to.size(); ++s) {
      if (f.u[t][s].empty()) continue;
      Matrix b = act_terms(n, f.u[t][s], f.to[s], f.from[t]);
      if (b.rows() && b.cols()) m.set_block(roff[t], coff[s], b);
    }
  return m;
}

std::size_t cochain_dim(const std::vector<std::size_t>& tops, const Module& n) {
  std::size_t d = 0;
  for (auto v : tops) d += n.dim(v);
  return d;
}

std::mutex cache_mutex;
std::map<std::string, ProjResolution> cache;

ProjResolution compute_resolution(const Module& m, std::size_t n) {
  auto cover = projective_cover(m);
  ProjResolution r{m, {top_vertices(m)}, {cover.source()}, cover, {}, {}, false};
  auto k = kernel(cover);
  for (std::size_t deg = 1;; ++deg) {
    if (k.module.is_zero()) {
      r.terminated = true;
      break;
    }
    if (deg > n) break;
    auto c = projective_cover(k.module);
    auto d = k.map * c;
    r.tops.push_back(top_vertices(k.module));
    r.terms.push_back(c.source());
    r.maps.push_back(extract(d, r.tops[deg], r.tops[deg - 1]));
    r.differentials.push_back(std::move(d));
    k = kernel(c);
    // kernel of d_deg equals kernel of c since k.map is injective
  }
  return r;
}

ProjResolution truncate(const ProjResolution& full, std::size_t n) {
  if (full.terms.size() <= n + 1) return full;
  ProjResolution r{full.module,
                   {full.tops.begin(), full.tops.begin() + n + 1},
                   {full.terms.begin(), full.terms.begin() + n + 1},
                   full.augmentation,
                   {full.differentials.begin(), full.differentials.begin() + n},
                   {full.maps.begin(), full.maps.begin() + n},
                   false};
  return r;
}

}  // namespace

std::string Bounded::to_string() const {
  return (at_least ? ">=" : "") + std::to_string(value);
}

Module projective_sum(const AlgebraPtr& acting, Side side, const std::vector<std::size_t>& tops) {
  AlgebraPtr base = base_of(acting, side);
  std::vector<Module> parts;
  for (auto v : tops) parts.push_back(projective_module(base, v, side));
  return direct_sum(parts, acting, side).sum;
}

ModuleMap realize(const ProjMap& f) {
  const Algebra& B = *f.acting;
  Module src = projective_sum(f.acting, f.side, f.from);
  Module dst = projective_sum(f.acting, f.side, f.to);
  auto soff = sum_offsets(B, f.from), doff = sum_offsets(B, f.to);
  std::vector<Matrix> blocks;
  for (std::size_t v = 0; v < B.vertex_count(); ++v) {
    Matrix blk(B.field(), dst.dim(v), src.dim(v));
    for (std::size_t t = 0; t < f.from.size(); ++t) {
      const auto& ws = B.words_between(f.from[t], v);
      for (std::size_t c = 0; c < ws.size(); ++c)
        for (std::size_t s = 0; s < f.to.size(); ++s) {
          const auto& targets = B.words_between(f.to[s], v);
          for (const auto& ut : f.u[t][s])
            for (const auto& p : B.product(ws[c], ut.word)) {
              std::size_t row = doff[s][v] + position(targets, p.word);
              blk.set(row, soff[t][v] + c, blk.at(row, soff[t][v] + c) + p.coef * ut.coef);
            }
        }
    }
    blocks.push_back(std::move(blk));
  }
  return ModuleMap(src, dst, std::move(blocks), false);
}

ProjMap extract(const ModuleMap& f, const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
  const AlgebraPtr& acting = f.source().acting();
  const Algebra& B = *acting;
  auto soff = sum_offsets(B, from), doff = sum_offsets(B, to);
  ProjMap p{acting, f.source().side(), from, to, {}};
  p.u.assign(from.size(), std::vector<std::vector<Term>>(to.size()));
  for (std::size_t t = 0; t < from.size(); ++t) {
    std::size_t j = from[t];
    const Matrix& blk = f.block(j);
    std::size_t col = soff[t][j];
    for (std::size_t s = 0; s < to.size(); ++s) {
      const auto& ws = B.words_between(to[s], j);
      for (std::size_t i = 0; i < ws.size(); ++i)
        if (!blk.is_zero_at(doff[s][j] + i, col)) p.u[t][s].push_back({ws[i], blk.at(doff[s][j] + i, col)});
    }
  }
  return p;
}

ProjMap star(const ProjMap& f) {
  ProjMap d{f.acting->opposite(), flip(f.side), f.to, f.from, {}};
  d.u.assign(f.to.size(), std::vector<std::vector<Term>>(f.from.size()));
  for (std::size_t t = 0; t < f.from.size(); ++t)
    for (std::size_t s = 0; s < f.to.size(); ++s) d.u[s][t] = f.u[t][s];
  return d;
}

ProjResolution min_proj_resolution(const Module& m, std::size_t n) {
  m.acting()->require_basic("projective resolution");
  std::string key = m.acting()->fingerprint() + "#" + m.key();
  {
    std::lock_guard lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end() && (it->second.terminated || it->second.terms.size() > n))
      return truncate(it->second, n);
  }
  ProjResolution r = compute_resolution(m, n);
  std::lock_guard lock(cache_mutex);
  auto it = cache.find(key);
  if (it == cache.end() || it->second.terms.size() < r.terms.size()) cache.insert_or_assign(key, r);
  return r;
}

std::size_t ext_dim(const Module& m, const Module& n, std::size_t i) {
  require_same_category(m, n, "ext");
  auto r = min_proj_resolution(m, i + 1);
  if (i >= r.tops.size()) return 0;
  std::size_t dim = cochain_dim(r.tops[i], n);
  if (i + 1 < r.tops.size()) dim -= rank_of(cochain_map(r.maps[i], n));
  if (i >= 1) dim -= rank_of(cochain_map(r.maps[i - 1], n));
  return dim;
}

Module ext_regular(const Module& m, std::size_t i) {
  auto r = min_proj_resolution(m, i + 1);
  AlgebraPtr other = m.acting()->opposite();
  Side side = flip(m.side());
  if (i >= r.tops.size()) return Module::zero(other, side);
  ProjMap out{other, side, r.tops[i], {}, {}};
  out.u.assign(r.tops[i].size(), {});
  if (i + 1 < r.tops.size()) out = star(r.maps[i]);
  auto k = kernel(realize(out));
  if (i == 0) return k.module;
  auto in = realize(star(r.maps[i - 1]));
  auto h = factor_through_mono(in, k.map);
  if (!h) throw InternalInconsistency("dual complex is not a complex");
  return cokernel(*h).module;
}

std::size_t tor_dim(const Module& x, const Module& m, std::size_t i) {
  if (x.side() == m.side() || !same_algebra(x.acting(), m.acting()->opposite()))
    throw SideMismatch("tor needs a right and a left module over the same algebra");
  auto r = min_proj_resolution(x, i + 1);
  if (i >= r.tops.size()) return 0;
  // chain maps C_{k+1} -> C_k have block (s, t) = rho_M(u[t][s])
  // C_{k+1} -> C_k, block (s, t) = rho_M(u[t][s]) read as an element of e_{to[s]} A e_{from[t]}
  auto chain = [&](const ProjMap& f) {
    std::size_t rows = 0, cols = 0;
    std::vector<std::size_t> roff, coff;
    for (auto v : f.to) {
      roff.push_back(rows);
      rows += m.dim(v);
    }
    for (auto v : f.from) {
      coff.push_back(cols);
      cols += m.dim(v);
    }
    Matrix c(m.field(), rows, cols);
    for (std::size_t t = 0; t < f.from.size(); ++t)
      for (std::size_t s = 0; s < f.to.size(); ++s) {
        if (f.u[t][s].empty()) continue;
        Matrix b = act_terms(m, f.u[t][s], f.from[t], f.to[s]);
        if (b.rows() && b.cols()) c.set_block(roff[s], coff[t], b);
      }
    return c;
  };
  std::size_t dim = cochain_dim(r.tops[i], m);
  if (i + 1 < r.tops.size()) dim -= rank_of(chain(r.maps[i]));
  if (i >= 1) dim -= rank_of(chain(r.maps[i - 1]));
  return dim;
}

std::size_t tensor_dim(const Module& x, const Module& m) {
  if (x.side() == m.side() || !same_algebra(x.acting(), m.acting()->opposite()))
    throw SideMismatch("tensor product needs a right and a left module over the same algebra");
  const Algebra& A = *m.acting();
  const Field& k = m.field();
  std::vector<std::size_t> off(A.vertex_count() + 1, 0);
  for (std::size_t v = 0; v < A.vertex_count(); ++v) off[v + 1] = off[v] + x.dim(v) * m.dim(v);
  std::vector<Matrix> rels;
  for (std::size_t g = 0; g < A.generators().size(); ++g) {
    const auto& gen = A.generators()[g];
    std::size_t s = gen.src, t = gen.dst;
    std::size_t cnt = x.dim(t) * m.dim(s);
    if (cnt == 0) continue;
    Matrix rel(k, off.back(), cnt);
    Matrix xa = kron(x.gen(g), Matrix::identity(k, m.dim(s)));
    Matrix am = kron(Matrix::identity(k, x.dim(t)), m.gen(g));
    if (s == t) {
      rel.set_block(off[s], 0, xa - am);
    } else {
      if (xa.rows()) rel.set_block(off[s], 0, xa);
      if (am.rows()) rel.set_block(off[t], 0, -am);
    }
    rels.push_back(std::move(rel));
  }
  std::size_t rank = 0;
  if (!rels.empty()) {
    Matrix all = rels[0];
    for (std::size_t i = 1; i < rels.size(); ++i) all = hstack(all, rels[i]);
    rank = rank_of(all);
  }
  return off.back() - rank;
}

// ---------------------------------------------------------------- duals

namespace {

struct StarData {
  Module dual;
  std::vector<std::vector<ModuleMap>> basis;  // basis[v] spans Hom(M, P(v))
};

StarData star_data(const Module& m) {
  m.acting()->require_basic("star dual");
  const AlgebraPtr& A = m.acting();
  AlgebraPtr base = m.base();
  std::size_t r = A->vertex_count();
  std::vector<Module> proj;
  StarData sd{Module(), {}};
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < r; ++v) {
    proj.push_back(projective_module(base, v, m.side()));
    sd.basis.push_back(hom_space(m, proj[v]));
    dims.push_back(sd.basis[v].size());
  }
  std::vector<Matrix> gens;
  for (std::size_t g = 0; g < A->generators().size(); ++g) {
    const auto& gen = A->generators()[g];
    ModuleMap rg = realize(proj_map_of_generator(A, m.side(), g));
    std::size_t from = gen.dst, to = gen.src;
    Matrix blk(m.field(), dims[to], dims[from]);
    for (std::size_t c = 0; c < dims[from]; ++c) {
      ModuleMap comp(m, proj[to], (rg * sd.basis[from][c]).blocks(), false);
      auto x = hom_coordinates(sd.basis[to], comp);
      if (!x) throw InternalInconsistency("composite lies outside the hom space");
      for (std::size_t i = 0; i < dims[to]; ++i) blk.set(i, c, x->at(0, i));
    }
    gens.push_back(std::move(blk));
  }
  sd.dual = Module::from_generators(A->opposite(), flip(m.side()), dims, gens, false);
  return sd;
}

}  // namespace

Module star_dual(const Module& m) { return star_data(m).dual; }

ModuleMap star_dual(const ModuleMap& f) {
  auto sm = star_data(f.source()), sn = star_data(f.target());
  std::vector<Matrix> blocks;
  for (std::size_t v = 0; v < f.source().vertex_count(); ++v) {
    Matrix blk(f.source().field(), sm.dual.dim(v), sn.dual.dim(v));
    for (std::size_t c = 0; c < sn.dual.dim(v); ++c) {
      ModuleMap comp = sn.basis[v][c] * f;
      auto x = hom_coordinates(sm.basis[v], comp);
      if (!x) throw InternalInconsistency("composite lies outside the hom space");
      for (std::size_t i = 0; i < sm.dual.dim(v); ++i) blk.set(i, c, x->at(0, i));
    }
    blocks.push_back(std::move(blk));
  }
  return ModuleMap(sn.dual, sm.dual, std::move(blocks), false);
}

ModuleMap evaluation(const Module& m) {
  auto s1 = star_data(m);
  auto s2 = star_data(s1.dual);
  const Module& mss = s2.dual;
  std::size_t r = m.vertex_count();
  AlgebraPtr other_base = s1.dual.base();
  std::vector<Matrix> blocks;
  for (std::size_t v = 0; v < r; ++v) {
    Matrix blk(m.field(), mss.dim(v), m.dim(v));
    if (mss.dim(v) == 0 || m.dim(v) == 0) {
      blocks.push_back(std::move(blk));
      continue;
    }
    Module pv = projective_module(other_base, v, s1.dual.side());
    for (std::size_t c = 0; c < m.dim(v); ++c) {
      std::vector<Matrix> psi;
      for (std::size_t u = 0; u < r; ++u) {
        Matrix col(m.field(), pv.dim(u), s1.dual.dim(u));
        for (std::size_t k = 0; k < s1.dual.dim(u); ++k)
          col.set_block(0, k, s1.basis[u][k].block(v).col(c));
        psi.push_back(std::move(col));
      }
      ModuleMap map(s1.dual, pv, std::move(psi), false);
      auto x = hom_coordinates(s2.basis[v], map);
      if (!x) throw InternalInconsistency("evaluation is not a module map");
      for (std::size_t i = 0; i < mss.dim(v); ++i) blk.set(i, c, x->at(0, i));
    }
    blocks.push_back(std::move(blk));
  }
  return ModuleMap(m, Module::from_generators(m.acting(), m.side(), mss.dims(), mss.gens(), false),
                   std::move(blocks), false);
}

Module transpose(const Module& m) {
  auto r = min_proj_resolution(m, 1);
  AlgebraPtr other = m.acting()->opposite();
  Side side = flip(m.side());
  if (r.tops.size() < 2) return Module::zero(other, side);
  return cokernel(realize(star(r.maps[0]))).module;
}

FourTermSequence ab_sequence(const Module& m, const Budget& b) {
  ModuleMap ev = evaluation(m);
  Module tr = transpose(m);
  Module e1 = ext_regular(tr, 1), e2 = ext_regular(tr, 2);
  auto rebase = [&](const Module& x) {
    return Module::from_generators(m.acting(), m.side(), x.dims(), x.gens(), false);
  };
  e1 = rebase(e1);
  e2 = rebase(e2);
  auto k = kernel(ev);
  auto c = cokernel(ev);
  auto i1 = is_isomorphic(e1, k.module, b);
  auto i2 = is_isomorphic(c.module, e2, b);
  if (!i1 || !i2)
    throw InternalInconsistency("Auslander-Bridger terms do not match kernel and cokernel of evaluation for " +
                                m.describe());
  FourTermSequence s{e1, m, ev.target(), e2, k.map * *i1, ev, *i2 * c.map};
  bool exact = s.into.is_injective() && s.onto.is_surjective() && (ev * s.into).is_zero() &&
               (s.onto * ev).is_zero() && s.into.rank() + ev.rank() == m.total_dim() &&
               ev.rank() + s.onto.rank() == ev.target().total_dim();
  if (!exact) throw InternalInconsistency("Auslander-Bridger sequence is not exact for " + m.describe());
  return s;
}

// ---------------------------------------------------------------- grades

std::size_t default_cap(const AlgebraPtr& a) { return a->dim() + 2; }

Bounded grade(const Module& m, std::optional<std::size_t> cap) {
  std::size_t c = cap.value_or(default_cap(m.acting()));
  if (m.is_zero()) return {c + 1, true};
  Module reg = regular_module(m.base(), m.side());
  auto r = min_proj_resolution(m, c + 1);
  for (std::size_t i = 0; i <= c && i < r.tops.size(); ++i) {
    std::size_t dim = cochain_dim(r.tops[i], reg);
    if (i + 1 < r.tops.size()) dim -= rank_of(cochain_map(r.maps[i], reg));
    if (i >= 1) dim -= rank_of(cochain_map(r.maps[i - 1], reg));
    if (dim) return {i, false};
  }
  return {c + 1, true};
}

InjResolution min_inj_resolution_of_regular(const AlgebraPtr& a, std::size_t n, Side side) {
  a->require_basic("injective resolution");
  Module reg = regular_module(a, side);
  auto r = min_proj_resolution(d_dual(reg), n);
  InjResolution inj{a, side, r.tops, {}, ModuleMap(reg, reg, {}, false), {}, r.terminated};
  for (const auto& t : r.terms) inj.terms.push_back(d_dual(t));
  auto co = d_dual(r.augmentation);
  inj.coaugmentation = ModuleMap(reg, co.target(), co.blocks(), false);
  for (const auto& d : r.differentials) inj.differentials.push_back(d_dual(d));
  return inj;
}

Bounded sgrade(const Module& m, std::optional<std::size_t> cap) {
  std::size_t c = cap.value_or(default_cap(m.acting()));
  if (m.is_zero()) return {c + 1, true};
  AlgebraPtr base = m.base();
  auto inj = min_inj_resolution_of_regular(base, c, m.side());
  std::vector<std::optional<bool>> hits(base->vertex_count());
  for (std::size_t n = 0; n <= c && n < inj.multiplicities.size(); ++n)
    for (auto v : inj.multiplicities[n]) {
      if (!hits[v]) hits[v] = hom_dim(m, injective_module(base, v, m.side())) != 0;
      if (*hits[v]) return {n, false};
    }
  return {c + 1, true};
}

Bounded sgrade_oracle(const Module& m, std::optional<std::size_t> cap, const Budget& b) {
  std::size_t c = cap.value_or(default_cap(m.acting()));
  Bounded best{c + 1, true};
  for (const auto& sub : enumerate_submodules(m, b)) {
    if (sub.module.is_zero()) continue;
    Bounded g = grade(sub.module, c);
    if (!g.at_least && (best.at_least || g.value < best.value)) best = g;
  }
  return best;
}

bool pd_at_most(const Module& m, std::size_t n) {
  auto r = min_proj_resolution(m, n + 1);
  return r.terms.size() <= n + 1 && r.terminated;
}

}  // namespace reflexa
