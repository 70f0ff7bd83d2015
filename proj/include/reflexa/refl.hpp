#pragma once

#include <optional>
#include <string>

#include "reflexa/homology.hpp"

namespace reflexa {

// Torsion: m* = 0. Torsion-free and reflexive are the 1- and 2-torsion-free
// cases: Ext^i(Tr m, Lambda) = 0 for 1 <= i <= n. Each predicate is
// cross-checked against the evaluation map.
bool is_torsion(const Module& m);
bool is_n_torsion_free(const Module& m, std::size_t n);
bool is_torsion_free(const Module& m);
bool is_reflexive(const Module& m);

// The first n terms of the minimal injective resolution of the regular
// `side` module have projective dimension < l.
bool ln_condition(const AlgebraPtr& a, std::size_t l, std::size_t n, Side side = Side::left);
bool two_sided_22(const AlgebraPtr& a);
Bounded dominant_dimension(const AlgebraPtr& a, std::optional<std::size_t> cap = std::nullopt);

struct Hull {
  ModuleMap map;  // m -> m**
  bool precondition_verified;
};
// Throws PreconditionUnverified off two-sided (2,2) unless forced.
Hull reflexive_hull(const Module& m, bool force = false);

// Both throw ConditionFails naming the failing side when two-sided (2,2) fails.
// Source and target must be reflexive; ConditionFails otherwise.
ModuleWithMap refl_kernel(const ModuleMap& f);    // map: kernel -> source
ModuleWithMap refl_cokernel(const ModuleMap& f);  // map: target -> (coker)**

struct ConflationVerdict {
  bool kernel_cokernel_pair = false;  // via refl_kernel / refl_cokernel
  bool hull_factorization = false;    // ker in mod, torsion-free coker, hull onto the target
  bool exact_with_sgrade = false;     // exact in mod and sgrade(coker g) >= 2
  bool is_conflation() const { return kernel_cokernel_pair; }
  bool agree() const {
    return kernel_cokernel_pair == hull_factorization && hull_factorization == exact_with_sgrade;
  }
};
// All three modules must be reflexive; ConditionFails otherwise.
ConflationVerdict is_conflation(const ModuleMap& f, const ModuleMap& g);

// Kernel-cokernel criteria inside refl, valid when refl has kernels and
// cokernels: inflation = mono with torsion-free cokernel; deflation = the
// image includes into the target as its reflexive hull.
bool is_refl_inflation(const ModuleMap& f);
bool is_refl_deflation(const ModuleMap& g);

struct Square {
  Module corner;
  ModuleMap first;   // pushout: M -> corner; pullback: corner -> M
  ModuleMap second;  // pushout: N -> corner; pullback: corner -> N'
};
// Push-out of f : L -> M along a : L -> N, followed by the reflexive hull.
Square pushout_refl(const ModuleMap& f, const ModuleMap& a);
// Pull-back of g : M -> N along c : N' -> N, computed in mod.
Square pullback_refl(const ModuleMap& g, const ModuleMap& c);

}  // namespace reflexa
