#pragma once

#include <functional>
#include <random>
#include <set>

#include "reflexa/algebra.hpp"
#include "reflexa/corpus.hpp"
#include "reflexa/module.hpp"

namespace testsupport {

using namespace reflexa;

inline Field F2() { return Field::prime(2); }

// Independent count of nonzero paths i -> j: walk every arrow sequence up to
// max_len and reject those containing a relation as a contiguous block.
inline std::size_t count_paths(const Quiver& q, const std::vector<std::vector<std::string>>& rels,
                               std::size_t i, std::size_t j, std::size_t max_len) {
  std::size_t total = (i == j) ? 1 : 0;
  std::function<void(std::vector<std::string>&, std::size_t)> walk = [&](std::vector<std::string>& p,
                                                                          std::size_t at) {
    if (p.size() == max_len) return;
    for (const auto& a : q.arrows) {
      if (a.src != at) continue;
      p.push_back(a.name);
      bool bad = false;
      for (const auto& r : rels)
        if (r.size() <= p.size() && std::equal(r.begin(), r.end(), p.end() - r.size())) bad = true;
      if (!bad) {
        if (a.dst == j) ++total;
        walk(p, a.dst);
      }
      p.pop_back();
    }
  };
  std::vector<std::string> p;
  walk(p, i);
  return total;
}

// Checks rho(a) rho(b) = rho(ab) on every pair of basis words.
inline bool action_is_multiplicative(const Module& m) {
  const auto& A = *m.acting();
  for (std::size_t a = 0; a < A.dim(); ++a)
    for (std::size_t b = 0; b < A.dim(); ++b) {
      Matrix lhs = m.full_action(a) * m.full_action(b);
      Matrix rhs(m.field(), m.total_dim(), m.total_dim());
      for (const auto& t : A.product(a, b)) rhs += m.full_action(t.word).scaled(t.coef);
      if (!(lhs == rhs)) return false;
    }
  Matrix unit(m.field(), m.total_dim(), m.total_dim());
  for (std::size_t v = 0; v < A.vertex_count(); ++v) unit += m.full_action(v);
  return unit.is_identity();
}

// All vectors of F_2^n as bitmasks; brute-force subspace and hom counters.
inline Matrix vector_of(std::uint32_t mask, std::size_t n) {
  Matrix v(F2(), n, 1);
  for (std::size_t i = 0; i < n; ++i) v.set_residue(i, 0, (mask >> i) & 1);
  return v;
}

inline std::uint32_t mask_of(const Matrix& v) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < v.rows(); ++i) m |= v.residue(i, 0) << i;
  return m;
}

// Number of invariant subspaces of an F_2-module, by filtering all subsets
// of F_2^n that are closed under addition and under every word.
inline std::size_t brute_submodule_count(const Module& m) {
  std::size_t n = m.total_dim();
  std::size_t nv = std::size_t(1) << n;
  std::vector<Matrix> acts;
  for (std::size_t w = 0; w < m.acting()->dim(); ++w) acts.push_back(m.full_action(w));
  std::vector<std::vector<std::uint32_t>> image(acts.size(), std::vector<std::uint32_t>(nv));
  for (std::size_t a = 0; a < acts.size(); ++a)
    for (std::uint32_t v = 0; v < nv; ++v) image[a][v] = mask_of(acts[a] * vector_of(v, n));
  std::size_t count = 0;
  std::uint64_t subsets = std::uint64_t(1) << nv;
  for (std::uint64_t s = 0; s < subsets; ++s) {
    if (!(s & 1)) continue;
    bool ok = true;
    for (std::uint32_t u = 0; u < nv && ok; ++u) {
      if (!((s >> u) & 1)) continue;
      for (std::uint32_t v = u + 1; v < nv && ok; ++v)
        if (((s >> v) & 1) && !((s >> (u ^ v)) & 1)) ok = false;
      for (std::size_t a = 0; a < acts.size() && ok; ++a)
        if (!((s >> image[a][u]) & 1)) ok = false;
    }
    if (ok) ++count;
  }
  return count;
}

// dim Hom over F_2 by counting all intertwining vertex-wise linear maps.
inline std::size_t brute_hom_dim(const Module& m, const Module& n) {
  std::size_t bits = 0;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) bits += m.dim(v) * n.dim(v);
  std::size_t count = 0;
  for (std::uint64_t code = 0; code < (std::uint64_t(1) << bits); ++code) {
    std::vector<Matrix> blocks;
    std::size_t bit = 0;
    for (std::size_t v = 0; v < m.vertex_count(); ++v) {
      Matrix b(F2(), n.dim(v), m.dim(v));
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) b.set_residue(r, c, (code >> bit++) & 1);
      blocks.push_back(b);
    }
    bool ok = true;
    for (std::size_t g = 0; g < m.acting()->generators().size() && ok; ++g) {
      const auto& gen = m.acting()->generators()[g];
      ok = n.gen(g) * blocks[gen.src] == blocks[gen.dst] * m.gen(g);
    }
    if (ok) ++count;
  }
  std::size_t d = 0;
  while ((std::size_t(1) << d) < count) ++d;
  return d;
}

// Random F_2 module: random generator blocks, accepted if valid.
inline std::optional<Module> random_module(std::mt19937& rng, const AlgebraPtr& a, Side side,
                                           std::size_t max_total) {
  AlgebraPtr act = Module::acting_for(a, side);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<std::size_t> dims(a->vertex_count());
    std::size_t total = 0;
    for (auto& d : dims) {
      d = rng() % 3;
      total += d;
    }
    if (total == 0 || total > max_total) continue;
    std::vector<Matrix> gens;
    for (const auto& g : act->generators()) {
      Matrix b(a->field(), dims[g.dst], dims[g.src]);
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          if (rng() % 3 == 0) b.set(r, c, Scalar(a->field(), 1));
      gens.push_back(b);
    }
    try {
      return Module::from_generators(act, side, dims, gens);
    } catch (const InvalidModule&) {
    }
  }
  return std::nullopt;
}

inline std::vector<AlgebraPtr> small_corpus(Field k) {
  bool f2 = k.is_prime() && k.characteristic() == 2;
  return standard_corpus(k, f2 ? 5 : 0);
}

}  // namespace testsupport
