#include "reflexa/matrix.hpp"

#include <cstring>
#include <sstream>
#include <type_traits>

namespace reflexa {

namespace {

struct F2Ops {
  using T = std::uint32_t;
  T zero() const { return 0; }
  T one() const { return 1; }
  T add(T a, T b) const { return a ^ b; }
  T sub(T a, T b) const { return a ^ b; }
  T mul(T a, T b) const { return a & b; }
  T neg(T a) const { return a; }
  T inv(T) const { return 1; }
  bool is_zero(const T& a) const { return a == 0; }
};

struct FpOps {
  using T = std::uint32_t;
  std::uint32_t p;
  T zero() const { return 0; }
  T one() const { return 1; }
  T add(T a, T b) const { return static_cast<T>((std::uint64_t(a) + b) % p); }
  T sub(T a, T b) const { return static_cast<T>((std::uint64_t(a) + p - b) % p); }
  T mul(T a, T b) const { return static_cast<T>(std::uint64_t(a) * b % p); }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T inv(T a) const {
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<T>(result);
  }
  bool is_zero(const T& a) const { return a == 0; }
};

struct QOps {
  using T = mpq_class;
  T zero() const { return 0; }
  T one() const { return 1; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  T inv(const T& a) const { return 1 / a; }
  bool is_zero(const T& a) const { return sgn(a) == 0; }
};

template <class Fn>
decltype(auto) dispatch(const Field& k, Fn&& fn) {
  if (k.is_rational()) return fn(QOps{});
  if (k.characteristic() == 2) return fn(F2Ops{});
  return fn(FpOps{k.characteristic()});
}

}  // namespace

template <class Ops>
struct Access {
  static auto& data(Matrix& m) {
    if constexpr (std::is_same_v<typename Ops::T, mpq_class>)
      return m.q_;
    else
      return m.fp_;
  }
  static const auto& data(const Matrix& m) {
    if constexpr (std::is_same_v<typename Ops::T, mpq_class>)
      return m.q_;
    else
      return m.fp_;
  }
};

namespace {

template <class Ops>
auto& D(Matrix& m) { return Access<Ops>::data(m); }
template <class Ops>
const auto& D(const Matrix& m) { return Access<Ops>::data(m); }

void require_same_field(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field()))
    throw DimensionMismatch("field mismatch: " + a.field().name() + " vs " + b.field().name());
}

// In-place Gauss-Jordan on a row-major buffer; returns pivot columns.
template <class Ops>
std::vector<std::size_t> rref_in_place(const Ops& ops, std::vector<typename Ops::T>& a,
                                       std::size_t rows, std::size_t cols,
                                       std::size_t col_limit) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < col_limit && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!ops.is_zero(a[i * cols + c])) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    auto inv = ops.inv(a[r * cols + c]);
    if constexpr (!std::is_same_v<Ops, F2Ops>) {
      for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = ops.mul(a[r * cols + j], inv);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || ops.is_zero(a[i * cols + c])) continue;
      auto factor = a[i * cols + c];
      for (std::size_t j = c; j < cols; ++j) {
        if (ops.is_zero(a[r * cols + j])) continue;
        a[i * cols + j] = ops.sub(a[i * cols + j], ops.mul(factor, a[r * cols + j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Matrix::Matrix(Field k, std::size_t rows, std::size_t cols) : field_(k), rows_(rows), cols_(cols) {
  if (k.is_rational())
    q_.assign(rows * cols, mpq_class(0));
  else
    fp_.assign(rows * cols, 0);
}

Matrix Matrix::identity(Field k, std::size_t n) {
  Matrix m(k, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, Scalar(k, 1));
  return m;
}

Matrix Matrix::from_ints(Field k, const std::vector<std::vector<long>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows[0].size();
  Matrix m(k, rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nc) throw DimensionMismatch("ragged rows");
    for (std::size_t j = 0; j < nc; ++j) m.set(i, j, Scalar(k, rows[i][j]));
  }
  return m;
}

Matrix Matrix::from_scalars(Field k, const std::vector<std::vector<Scalar>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows[0].size();
  Matrix m(k, rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nc) throw DimensionMismatch("ragged rows");
    for (std::size_t j = 0; j < nc; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Scalar Matrix::at(std::size_t r, std::size_t c) const {
  if (field_.is_rational()) return Scalar(field_, q_[r * cols_ + c]);
  return Scalar(field_, static_cast<long>(fp_[r * cols_ + c]));
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& s) {
  if (!(s.field() == field_)) throw DimensionMismatch("scalar from a different field");
  if (field_.is_rational())
    q_[r * cols_ + c] = s.rational();
  else
    fp_[r * cols_ + c] = s.residue();
}

bool Matrix::is_zero_at(std::size_t r, std::size_t c) const {
  return field_.is_rational() ? sgn(q_[r * cols_ + c]) == 0 : fp_[r * cols_ + c] == 0;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r = *this;
  r += o;
  return r;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_field(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum shape");
  dispatch(field_, [&](auto ops) {
    using Ops = decltype(ops);
    auto& a = D<Ops>(*this);
    const auto& b = D<Ops>(o);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = ops.add(a[i], b[i]);
  });
  return *this;
}

Matrix Matrix::operator-() const {
  Matrix r = *this;
  dispatch(field_, [&](auto ops) {
    using Ops = decltype(ops);
    for (auto& x : D<Ops>(r)) x = ops.neg(x);
  });
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator*(const Matrix& o) const {
  require_same_field(*this, o);
  if (cols_ != o.rows_)
    throw DimensionMismatch("matrix product " + std::to_string(rows_) + "x" +
                            std::to_string(cols_) + " * " + std::to_string(o.rows_) + "x" +
                            std::to_string(o.cols_));
  Matrix r(field_, rows_, o.cols_);
  dispatch(field_, [&](auto ops) {
    using Ops = decltype(ops);
    const auto& a = D<Ops>(*this);
    const auto& b = D<Ops>(o);
    auto& c = D<Ops>(r);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const auto& x = a[i * cols_ + k];
        if (ops.is_zero(x)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const auto& y = b[k * o.cols_ + j];
          if (ops.is_zero(y)) continue;
          c[i * o.cols_ + j] = ops.add(c[i * o.cols_ + j], ops.mul(x, y));
        }
      }
  });
  return r;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix r = *this;
  if (field_.is_rational()) {
    for (auto& x : r.q_) x *= s.rational();
  } else {
    std::uint64_t f = s.residue(), p = field_.characteristic();
    for (auto& x : r.fp_) x = static_cast<std::uint32_t>(x * f % p);
  }
  return r;
}

Matrix Matrix::reshaped(std::size_t rows, std::size_t cols) const {
  if (rows * cols != rows_ * cols_) throw DimensionMismatch("reshape changes entry count");
  Matrix r = *this;
  r.rows_ = rows;
  r.cols_ = cols;
  return r;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      bool z = is_zero_at(i, j);
      if (i == j ? z || !at(i, j).is_one() : !z) return false;
    }
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && fp_ == o.fp_ &&
         q_ == o.q_;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  dispatch(field_, [&](auto ops) {
    using Ops = decltype(ops);
    const auto& a = D<Ops>(*this);
    auto& b = D<Ops>(r);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) b[j * rows_ + i] = a[i * cols_ + j];
  });
  return r;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
  Matrix r(field_, nr, nc);
  dispatch(field_, [&](auto ops) {
    using Ops = decltype(ops);
    const auto& a = D<Ops>(*this);
    auto& b = D<Ops>(r);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b[i * nc + j] = a[(r0 + i) * cols_ + c0 + j];
  });
  return r;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& bm) {
  require_same_field(*this, bm);
  if (r0 + bm.rows_ > rows_ || c0 + bm.cols_ > cols_) throw DimensionMismatch("set_block out of range");
  dispatch(field_, [&](auto ops) {
    using Ops = decltype(ops);
    auto& a = D<Ops>(*this);
    const auto& b = D<Ops>(bm);
    for (std::size_t i = 0; i < bm.rows_; ++i)
      for (std::size_t j = 0; j < bm.cols_; ++j) a[(r0 + i) * cols_ + c0 + j] = b[i * bm.cols_ + j];
  });
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix r(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) r.set_block(i, 0, row(idx[i]));
  return r;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
  Matrix r(field_, rows_, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) r.set_block(0, j, col(idx[j]));
  return r;
}

bool Matrix::is_zero() const {
  if (field_.is_rational()) {
    for (const auto& x : q_)
      if (sgn(x) != 0) return false;
    return true;
  }
  for (auto x : fp_)
    if (x) return false;
  return true;
}

std::size_t Matrix::rank() const { return rref(*this).rank; }

std::string Matrix::key() const {
  std::string k;
  k.reserve(16 + fp_.size() * 4);
  auto put = [&](std::uint64_t v) { k.append(reinterpret_cast<const char*>(&v), sizeof v); };
  put(rows_);
  put(cols_);
  if (field_.is_rational()) {
    for (const auto& x : q_) {
      k += x.get_str();
      k.push_back(';');
    }
  } else if (field_.characteristic() < 256) {
    for (auto x : fp_) k.push_back(static_cast<char>(x));
  } else {
    k.append(reinterpret_cast<const char*>(fp_.data()), fp_.size() * sizeof(std::uint32_t));
  }
  return k;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).to_string();
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack rows");
  Matrix r(a.field(), a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack cols");
  Matrix r(a.field(), a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  Matrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  dispatch(a.field(), [&](auto ops) {
    using Ops = decltype(ops);
    const auto& x = D<Ops>(a);
    const auto& y = D<Ops>(b);
    auto& z = D<Ops>(r);
    std::size_t rc = r.cols();
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        const auto& u = x[i * a.cols() + j];
        if (ops.is_zero(u)) continue;
        for (std::size_t k = 0; k < b.rows(); ++k)
          for (std::size_t l = 0; l < b.cols(); ++l)
            z[(i * b.rows() + k) * rc + j * b.cols() + l] = ops.mul(u, y[k * b.cols() + l]);
      }
  });
  return r;
}

RrefResult rref(const Matrix& m) {
  RrefResult out{m, 0, {}};
  dispatch(m.field(), [&](auto ops) {
    using Ops = decltype(ops);
    out.pivot_cols = rref_in_place(ops, D<Ops>(out.reduced), m.rows(), m.cols(), m.cols());
  });
  out.rank = out.pivot_cols.size();
  return out;
}

Matrix kernel_basis(const Matrix& m) {
  auto r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivot_cols) is_pivot[c] = true;
  Matrix k(m.field(), m.cols() - r.rank, m.cols());
  std::size_t row = 0;
  Scalar one(m.field(), 1);
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    k.set(row, free, one);
    for (std::size_t i = 0; i < r.rank; ++i)
      if (!r.reduced.is_zero_at(i, free)) k.set(row, r.pivot_cols[i], -r.reduced.at(i, free));
    ++row;
  }
  return k;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows())
    throw DimensionMismatch("solve: a has " + std::to_string(a.rows()) + " rows, b has " +
                            std::to_string(b.rows()));
  require_same_field(a, b);
  Matrix aug = hstack(a, b);
  std::vector<std::size_t> pivots;
  dispatch(a.field(), [&](auto ops) {
    using Ops = decltype(ops);
    pivots = rref_in_place(ops, D<Ops>(aug), aug.rows(), aug.cols(), a.cols());
  });
  for (std::size_t i = pivots.size(); i < aug.rows(); ++i)
    for (std::size_t j = a.cols(); j < aug.cols(); ++j)
      if (!aug.is_zero_at(i, j)) return std::nullopt;
  Matrix x(a.field(), a.cols(), b.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    x.set_block(pivots[i], 0, aug.block(i, a.cols(), 1, b.cols()));
  return x;
}

Matrix column_space(const Matrix& m) {
  auto r = rref(m.transpose());
  return r.reduced.block(0, 0, r.rank, m.rows()).transpose();
}

Matrix null_space_columns(const Matrix& m) { return kernel_basis(m).transpose(); }

Matrix left_kernel(const Matrix& m) { return kernel_basis(m.transpose()); }

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto x = solve(m, Matrix::identity(m.field(), m.rows()));
  if (!x || m.rank() != m.rows()) return std::nullopt;
  return x;
}

}  // namespace reflexa
