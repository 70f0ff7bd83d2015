#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reflexa/algebra.hpp"
#include "reflexa/budget.hpp"

namespace reflexa {

enum class Side { left, right };
inline Side flip(Side s) { return s == Side::left ? Side::right : Side::left; }
inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

// A finite-dimensional module as a representation of the acting algebra:
// left modules act through the algebra itself, right modules through its
// opposite. Vectors are columns; the block of a word w from vertex s to t
// is a dims[t] x dims[s] matrix. Immutable and cheap to copy.
class Module {
 public:
  // Validates that the generator blocks satisfy every relation of the
  // acting algebra; throws InvalidModule naming the failing product.
  static Module from_generators(AlgebraPtr acting, Side side, std::vector<std::size_t> dims,
                                std::vector<Matrix> gen_blocks, bool validate = true);
  static Module zero(AlgebraPtr acting, Side side);
  // The acting algebra of a `side` module over `base`.
  static AlgebraPtr acting_for(const AlgebraPtr& base, Side side);

  const AlgebraPtr& acting() const { return d_->acting; }
  AlgebraPtr base() const;
  Side side() const { return d_->side; }
  const Field& field() const { return d_->acting->field(); }
  std::size_t vertex_count() const { return d_->dims.size(); }
  const std::vector<std::size_t>& dims() const { return d_->dims; }
  std::size_t dim(std::size_t v) const { return d_->dims[v]; }
  std::size_t total_dim() const { return d_->total; }
  std::size_t offset(std::size_t v) const { return d_->offsets[v]; }
  bool is_zero() const { return d_->total == 0; }

  const Matrix& gen(std::size_t g) const { return d_->gens[g]; }
  const std::vector<Matrix>& gens() const { return d_->gens; }
  const Matrix& word(std::size_t w) const { return d_->words[w]; }
  // Block of a Peirce-homogeneous element given in word coordinates.
  Matrix act(const std::vector<Term>& element, std::size_t src, std::size_t dst) const;
  // Action of word w on the whole space.
  Matrix full_action(std::size_t w) const;

  // Bit-exact identity of the presentation (algebra, side, dims, blocks).
  std::string key() const;
  std::string describe() const;

 private:
  struct Data {
    AlgebraPtr acting;
    Side side;
    std::vector<std::size_t> dims;
    std::vector<std::size_t> offsets;
    std::size_t total = 0;
    std::vector<Matrix> gens;
    std::vector<Matrix> words;
  };
  std::shared_ptr<const Data> d_;
};

bool same_category(const Module& a, const Module& b);
void require_same_category(const Module& a, const Module& b, const std::string& op);

// Vertex-wise linear maps intertwining the actions.
class ModuleMap {
 public:
  ModuleMap(Module source, Module target, std::vector<Matrix> blocks, bool validate = true);
  static ModuleMap zero(const Module& source, const Module& target);
  static ModuleMap identity(const Module& m);

  const Module& source() const { return src_; }
  const Module& target() const { return dst_; }
  const Matrix& block(std::size_t v) const { return blocks_[v]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  Matrix full() const;

  // (g * f) is g after f.
  ModuleMap operator*(const ModuleMap& f) const;
  ModuleMap operator+(const ModuleMap& o) const;
  ModuleMap operator-(const ModuleMap& o) const;
  ModuleMap scaled(const Scalar& s) const;

  bool is_zero() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const;
  std::size_t rank() const;
  // Flattened vertex-major, row-major entries.
  Matrix as_row() const;

 private:
  Module src_, dst_;
  std::vector<Matrix> blocks_;
};

// A module with a distinguished map into or out of another module.
struct ModuleWithMap {
  Module module;
  ModuleMap map;
};

struct DirectSum {
  Module sum;
  std::vector<ModuleMap> injections;
  std::vector<ModuleMap> projections;
};

// ---- construction ----
Module regular_module(const AlgebraPtr& a, Side side);
Module simple_module(const AlgebraPtr& a, std::size_t vertex, Side side = Side::left);
Module projective_module(const AlgebraPtr& a, std::size_t vertex, Side side = Side::left);
Module injective_module(const AlgebraPtr& a, std::size_t vertex, Side side = Side::left);
DirectSum direct_sum(const std::vector<Module>& parts, const AlgebraPtr& acting, Side side);
// Maps between direct sums assembled from a block matrix of component maps
// (components[t][s] : parts_s -> parts_t).
ModuleMap map_between_sums(const DirectSum& from, const DirectSum& to,
                           const std::vector<std::vector<std::optional<ModuleMap>>>& components);

// ---- hom and (co)kernels ----
std::vector<ModuleMap> hom_space(const Module& m, const Module& n);
std::size_t hom_dim(const Module& m, const Module& n);
// Coordinates of f in the basis returned by hom_space(f.source(), f.target()).
std::optional<Matrix> hom_coordinates(const std::vector<ModuleMap>& basis, const ModuleMap& f);
ModuleMap combine(const std::vector<ModuleMap>& basis, const Matrix& coeff_row,
                  const Module& source, const Module& target);

ModuleWithMap kernel(const ModuleMap& f);    // map: kernel -> source
ModuleWithMap cokernel(const ModuleMap& f);  // map: target -> cokernel
ModuleWithMap image(const ModuleMap& f);     // map: image -> target
// f = (image -> target) * (source -> image).
ModuleMap coimage_map(const ModuleMap& f, const ModuleWithMap& im);
// Submodule spanned per vertex by the given columns, closed under the action.
ModuleWithMap submodule_generated(const Module& m, const std::vector<Matrix>& columns);
// Factor g through a mono i (g = i * h); nullopt if impossible.
std::optional<ModuleMap> factor_through_mono(const ModuleMap& g, const ModuleMap& mono);
// Factor g through an epi p with g*ker p = 0 (g = h * p); nullopt if impossible.
std::optional<ModuleMap> factor_through_epi(const ModuleMap& g, const ModuleMap& epi);

// ---- radical layers ----
ModuleWithMap radical(const Module& m);  // map: radical -> m
ModuleWithMap socle(const Module& m);    // map: socle -> m
ModuleWithMap top(const Module& m);      // map: m -> top
ModuleMap projective_cover(const Module& m);     // P -> m
ModuleMap injective_envelope(const Module& m);   // m -> I
// Vertices of the indecomposable projective summands of the cover, sorted.
std::vector<std::size_t> top_vertices(const Module& m);
std::vector<std::size_t> composition_factors(const Module& m);

// ---- duality ----
Module d_dual(const Module& m);
ModuleMap d_dual(const ModuleMap& f);

// ---- enumeration and isomorphism ----
// Per-vertex RREF row-space signature for a subspace family.
std::vector<ModuleWithMap> enumerate_submodules(const Module& m, const Budget& b = default_budget());
// Throws Undecided when the search budget is insufficient.
std::optional<ModuleMap> is_isomorphic(const Module& m, const Module& n,
                                       const Budget& b = default_budget());
// Throws Undecided when neither a splitting nor locality can be certified.
bool is_indecomposable(const Module& m, const Budget& b = default_budget());

}  // namespace reflexa
