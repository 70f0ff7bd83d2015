#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reflexa/refl.hpp"

namespace reflexa {

enum class Verdict { holds, fails, undetermined };
const char* to_string(Verdict v);

// Concrete evidence: a description plus the modules and maps involved.
struct Witness {
  std::string kind;
  std::string text;
  std::vector<Module> modules;
  std::vector<ModuleMap> maps;
};

struct Check {
  std::string name;
  Verdict verdict = Verdict::undetermined;
  std::optional<Witness> witness;
  std::string detail;  // budget or cap exhausted, counts
};

struct LnEntry {
  std::size_t l = 0, n = 0;
  Side side = Side::left;
  bool holds = false;
  std::optional<Witness> witness;  // an injective term of too large projective dimension
};

struct ConditionReport {
  std::string algebra;
  std::vector<Check> checks;
  std::vector<LnEntry> ln_matrix;
  // A value, not a verdict; the witness is the first non-projective I^n.
  Bounded dominant_dimension;
  std::optional<Witness> dominant_witness;
};

ConditionReport check_conditions(const AlgebraPtr& a,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& ln_pairs,
                                 std::optional<std::size_t> cap = std::nullopt);

enum class Outcome { consistent, theorem_violation, undetermined };
const char* to_string(Outcome o);

struct Certificate {
  std::string algebra;
  std::string claim;
  Outcome outcome = Outcome::undetermined;
  bool predicted = false;             // the homological criterion
  bool counterexample_found = false;  // empirical failure of the categorical property
  std::vector<Witness> witnesses;     // first witness of each kind
  std::vector<std::pair<std::string, std::string>> facts;
  std::size_t dim_reached = 0;
  bool budget_exceeded = false;
  std::size_t modules_examined = 0;
  std::size_t instances_checked = 0;
};

Certificate certify_quasi_abelian(const AlgebraPtr& a, const Budget& b = default_budget());
Certificate certify_abelian(const AlgebraPtr& a, const Budget& b = default_budget());

// Serre subcategory given by a set of simples (0-based vertices).
bool in_serre(const Module& m, const std::set<std::size_t>& simples);
bool is_serre_conflation(const ModuleMap& f, const ModuleMap& g, const std::set<std::size_t>& simples);

struct SerreReport {
  std::string algebra;
  std::set<std::size_t> simples;
  std::vector<Check> checks;
  std::set<std::size_t> regenerated;
  bool roundtrip = false;
  std::size_t conflations = 0;
  std::size_t dim_reached = 0;
  bool budget_exceeded = false;
  bool holds() const;
};

// Throws ConditionFails off two-sided (2,2) and NotInD for a simple of sgrade < 2.
SerreReport serre_exact_structure(const AlgebraPtr& a, const std::set<std::size_t>& simples,
                                  const Budget& b = default_budget());

}  // namespace reflexa
