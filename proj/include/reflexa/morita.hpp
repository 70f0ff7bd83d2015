#pragma once

#include <string>
#include <vector>

#include "reflexa/harness.hpp"

namespace reflexa {

// Summands of M over one algebra and side. A summand equal to the regular
// module is replaced by the indecomposable projectives.
struct SummandList {
  std::vector<Module> summands;
  bool pairwise_noniso = false;
};
// Normalizes, checks indecomposability (NotBasic) and pairwise
// non-isomorphism (NotPairwiseNoniso).
SummandList make_summands(const std::vector<Module>& ms, const Budget& b = default_budget());

// Lambda = End(M)^op, so that Hom(M, x) is a left Lambda-module with
// lambda . f = f * lambda. Vertex i is the identity of summand i; basis
// element k is hom[entry.from][entry.to][entry.index].
struct EndAlgebra {
  struct Entry {
    std::size_t from, to, index;
  };
  AlgebraPtr algebra;
  std::vector<Module> summands;
  std::vector<Entry> dictionary;
  std::vector<std::vector<std::vector<ModuleMap>>> hom;  // hom[i][j] spans Hom(M_i, M_j)
};

EndAlgebra end_algebra(const SummandList& ms);

Module hom_functor(const EndAlgebra& e, const Module& x);
// Post-composition with h : x -> y.
ModuleMap hom_functor(const EndAlgebra& e, const ModuleMap& h);

enum class Mode { module_category, refl_max };
const char* to_string(Mode m);

bool is_generator(const SummandList& ms, Mode mode, const Budget& b = default_budget());
bool is_cogenerator(const SummandList& ms, Mode mode, const Budget& b = default_budget());

struct MoritaReport {
  std::string algebra;
  std::string end_algebra;
  std::size_t end_dim = 0;
  Mode mode = Mode::module_category;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> facts;
  bool all_pass() const;
};

// Throws TheoremViolation with the failing check on any failure.
MoritaReport verify_equivalence(const SummandList& ms, Mode mode, const Budget& b = default_budget());
MoritaReport reflexive_equivalence_check(const AlgebraPtr& lambda, const std::vector<Module>& m,
                                         const Budget& b = default_budget());

// k[x]/(x^i) as a module over k[x]/(x^n), i <= n.
Module truncated_quotient(const AlgebraPtr& kxn, std::size_t i);
// End(k[x]/x^n (+) ... (+) k[x]/x)^op.
AlgebraPtr auslander_algebra(Field k, std::size_t n);

}  // namespace reflexa
