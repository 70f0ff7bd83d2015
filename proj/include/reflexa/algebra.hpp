#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "reflexa/matrix.hpp"

namespace reflexa {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

struct Arrow {
  std::string name;
  std::size_t src = 0;
  std::size_t dst = 0;
};

struct Quiver {
  std::size_t vertex_count = 0;
  std::vector<Arrow> arrows;
};

// Monomial relations are arrow-name lists in traversal order.
struct Presentation {
  Quiver quiver;
  std::vector<std::vector<std::string>> relations;
};

// A Peirce-homogeneous element used to generate the algebra; for quiver
// algebras these are the arrows.
struct Generator {
  std::string name;
  std::size_t src = 0;
  std::size_t dst = 0;
};

// Basis element of the internal word basis. Vertices first (no letters),
// then products of generators. letters = {l0, l1, ...} means g_l0 * g_l1 * ...
// in the algebra's own product, so the rightmost letter acts first.
struct Word {
  std::size_t src = 0;
  std::size_t dst = 0;
  std::vector<std::size_t> letters;
};

struct Term {
  std::size_t word;
  Scalar coef;
};

// Structure constants by user basis: table[i][j] = coordinates of b_i * b_j.
using MultTable = std::vector<std::vector<std::vector<Scalar>>>;

class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  static AlgebraPtr from_table(Field k, std::vector<std::string> labels, const MultTable& table,
                               const std::vector<Scalar>& unit,
                               const std::vector<std::vector<Scalar>>& idempotents);
  static AlgebraPtr bound_quiver(Field k, const Quiver& q,
                                 const std::vector<std::vector<std::string>>& relations);

  const Field& field() const { return field_; }
  std::size_t dim() const { return labels_.size(); }
  std::size_t vertex_count() const { return vertices_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::optional<Presentation>& presentation() const { return presentation_; }
  // Basic as presented: every e_i A e_i is split local and the
  // idempotents are pairwise non-isomorphic.
  bool is_basic() const { return basic_; }
  void require_basic(const std::string& op) const;

  const std::vector<Generator>& generators() const { return gens_; }
  const std::vector<Word>& words() const { return words_; }
  // Word indices with the given source and target vertex, ascending.
  const std::vector<std::size_t>& words_between(std::size_t src, std::size_t dst) const {
    return between_[src * vertices_ + dst];
  }
  // Word index of generator g.
  std::size_t generator_word(std::size_t g) const { return gen_word_[g]; }
  // Word-basis coordinates of w_a * w_b, sparse.
  const std::vector<Term>& product(std::size_t a, std::size_t b) const {
    return prod_[a * dim() + b];
  }
  // Radical layer: number of letters, 0 for vertices.
  std::size_t word_length(std::size_t w) const { return words_[w].letters.size(); }

  // Change of basis: column w holds the user coordinates of word w.
  const Matrix& word_to_user() const { return word_to_user_; }
  const Matrix& user_to_word() const { return user_to_word_; }
  // User-basis product, used for display and validation.
  std::vector<Scalar> multiply_user(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const;
  const MultTable& table() const { return table_; }
  const std::vector<Scalar>& unit() const { return unit_; }
  const std::vector<std::vector<Scalar>>& idempotents() const { return idempotents_; }

  // Cached; opposite()->opposite() is this object while it is alive and a
  // bit-identical rebuild otherwise.
  AlgebraPtr opposite() const;
  bool is_opposite_of_origin() const { return opposite_flag_; }

  // Equal fingerprints mean identical presentations of the same algebra.
  const std::string& fingerprint() const { return fingerprint_; }
  std::string name() const { return name_; }
  void set_name(std::string n) const { name_ = std::move(n); }

  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;

 private:
  struct Private {};

 public:
  explicit Algebra(Private, Field k) : field_(k) {}

 private:
  struct Build;
  static std::shared_ptr<Algebra> finalize(Build& b);

  Field field_;
  std::vector<std::string> labels_;
  MultTable table_;
  std::vector<Scalar> unit_;
  std::vector<std::vector<Scalar>> idempotents_;
  std::optional<Presentation> presentation_;
  std::size_t vertices_ = 0;
  bool basic_ = false;
  bool opposite_flag_ = false;

  std::vector<Generator> gens_;
  std::vector<std::size_t> gen_word_;
  std::vector<Word> words_;
  std::vector<std::vector<std::size_t>> between_;
  std::vector<std::vector<Term>> prod_;
  Matrix word_to_user_;
  Matrix user_to_word_;
  std::string fingerprint_;
  mutable std::string name_;

  mutable std::mutex op_mutex_;
  mutable AlgebraPtr op_strong_;
  mutable std::weak_ptr<const Algebra> op_weak_;
};

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

}  // namespace reflexa
