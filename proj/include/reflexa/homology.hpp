#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reflexa/module.hpp"

namespace reflexa {

// Map between direct sums of indecomposable projectives over the acting
// algebra B, from (+)_t P(from[t]) to (+)_s P(to[s]). Entry u[t][s] is the
// image of the top idempotent of summand t inside summand s: an element of
// e_{from[t]} B e_{to[s]} in word coordinates. The map is x -> x * u.
struct ProjMap {
  AlgebraPtr acting;
  Side side = Side::left;
  std::vector<std::size_t> from, to;
  std::vector<std::vector<std::vector<Term>>> u;
};

// Direct sum of projective_module(v) for v in tops, in that order.
Module projective_sum(const AlgebraPtr& acting, Side side, const std::vector<std::size_t>& tops);
ModuleMap realize(const ProjMap& f);
// Read off the entries of a module map between standard projective sums.
ProjMap extract(const ModuleMap& f, const std::vector<std::size_t>& from,
                const std::vector<std::size_t>& to);
// Hom(-, B) applied to f: the same entries read over the opposite algebra.
ProjMap star(const ProjMap& f);

struct ProjResolution {
  Module module;
  // tops[k]: vertices of the summands of P_k.
  std::vector<std::vector<std::size_t>> tops;
  std::vector<Module> terms;
  ModuleMap augmentation;            // P_0 -> module
  std::vector<ModuleMap> differentials;  // differentials[k-1] : P_k -> P_{k-1}
  std::vector<ProjMap> maps;         // entries of the same differentials
  // True when P_k = 0 for every k beyond the computed terms.
  bool terminated = false;
  std::size_t length_computed() const { return terms.size() ? terms.size() - 1 : 0; }
};

// Minimal projective resolution through P_n (fewer terms if it ends).
ProjResolution min_proj_resolution(const Module& m, std::size_t n);

// A bounded verdict: value, or at least value when nothing was found up to the cap.
struct Bounded {
  std::size_t value = 0;
  bool at_least = false;
  bool operator==(const Bounded&) const = default;
  std::string to_string() const;
};

std::size_t ext_dim(const Module& m, const Module& n, std::size_t i);
// Ext^i(m, regular) as a module over the other side.
Module ext_regular(const Module& m, std::size_t i);
std::size_t tor_dim(const Module& x, const Module& m, std::size_t i);
// Vertex-wise tensor product modulo the balancing relations; dimension only.
std::size_t tensor_dim(const Module& x, const Module& m);

// M* = Hom(M, regular), vertex v holding Hom(M, P(v)).
Module star_dual(const Module& m);
// f* : N* -> M* for f : M -> N, in the bases of star_dual.
ModuleMap star_dual(const ModuleMap& f);
ModuleMap evaluation(const Module& m);  // m -> m**
Module transpose(const Module& m);

struct FourTermSequence {
  Module ext1, m, mss, ext2;
  ModuleMap into, eval, onto;  // ext1 -> m -> m** -> ext2
};
// 0 -> Ext^1(Tr m, Lambda) -> m -> m** -> Ext^2(Tr m, Lambda) -> 0, verified.
FourTermSequence ab_sequence(const Module& m, const Budget& b = default_budget());

std::size_t default_cap(const AlgebraPtr& a);
Bounded grade(const Module& m, std::optional<std::size_t> cap = std::nullopt);

struct InjResolution {
  AlgebraPtr base;
  Side side = Side::left;
  // multiplicities[k]: vertices v of the summands I(v) of I^k, sorted.
  std::vector<std::vector<std::size_t>> multiplicities;
  std::vector<Module> terms;
  ModuleMap coaugmentation;              // regular -> I^0
  std::vector<ModuleMap> differentials;  // I^k -> I^{k+1}
  bool terminated = false;
};
// Through I^n; computed by dualizing a projective resolution over the other side.
InjResolution min_inj_resolution_of_regular(const AlgebraPtr& a, std::size_t n, Side side = Side::left);

Bounded sgrade(const Module& m, std::optional<std::size_t> cap = std::nullopt);
// Minimum grade over all submodules; brute force.
Bounded sgrade_oracle(const Module& m, std::optional<std::size_t> cap = std::nullopt,
                      const Budget& b = default_budget());
bool pd_at_most(const Module& m, std::size_t n);

}  // namespace reflexa
