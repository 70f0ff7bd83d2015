#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace reflexa {

// Search limits for brute-force steps. Every report echoes the values used.
struct Budget {
  // Largest p^dim for exhaustive subspace / submodule enumeration.
  std::uint64_t enumeration = 1u << 16;
  // Largest number of hom combinations tried by isomorphism and
  // indecomposability searches.
  std::uint64_t iso_search = 1u << 16;
  // Largest number of candidate representations visited by module enumeration.
  std::uint64_t modules = 1u << 24;
  // Total dimension bound for harness module enumeration.
  std::size_t dim = 4;
};

// REFLEXA_BUDGET: either a bare integer (dim) or comma-separated
// key=value pairs with keys dim, enumeration, iso, modules. Throws ParseError.
Budget parse_budget(std::string_view text, Budget base = {});
// Defaults overridden by the environment, read once.
const Budget& default_budget();
std::string to_string(const Budget& b);

}  // namespace reflexa
