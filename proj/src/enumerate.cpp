#include "reflexa/enumerate.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <unordered_set>

namespace reflexa {

namespace {

struct Small {
  std::size_t r = 0, c = 0;
  std::vector<std::uint32_t> a;
  Small() = default;
  Small(std::size_t rows, std::size_t cols) : r(rows), c(cols), a(rows * cols, 0) {}
  std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * c + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * c + j]; }
};

Small mul(const Small& x, const Small& y, std::uint32_t p) {
  Small z(x.r, y.c);
  for (std::size_t i = 0; i < x.r; ++i)
    for (std::size_t k = 0; k < x.c; ++k) {
      std::uint64_t v = x.at(i, k);
      if (!v) continue;
      for (std::size_t j = 0; j < y.c; ++j) z.a[i * z.c + j] = (z.a[i * z.c + j] + v * y.at(k, j)) % p;
    }
  return z;
}

struct Mono {
  std::uint32_t coef;
  std::vector<std::size_t> letters;
};

struct Check {
  std::size_t rows = 0, cols = 0;
  std::vector<Mono> monos;
  std::size_t stage = 0;
  bool affine = true;
};

class Enumerator {
 public:
  Enumerator(const AlgebraPtr& acting, Side side, std::vector<std::size_t> dims, const Budget& b,
             std::uint64_t& visited)
      : A_(acting), side_(side), dims_(std::move(dims)), budget_(b), visited_(visited),
        p_(acting->field().characteristic()) {
    build_checks();
    build_group();
  }

  void run(std::vector<Module>& out) {
    std::size_t n = A_->generators().size();
    cur_.resize(n);
    for (std::size_t g = 0; g < n; ++g) {
      const auto& gen = A_->generators()[g];
      cur_[g] = Small(dims_[gen.dst], dims_[gen.src]);
    }
    stage(0, out);
  }

 private:
  void build_checks() {
    const Algebra& A = *A_;
    for (std::size_t g = 0; g < A.generators().size(); ++g) {
      const auto& gen = A.generators()[g];
      std::size_t gw = A.generator_word(g);
      for (std::size_t v = 0; v < A.dim(); ++v) {
        const auto& wv = A.words()[v];
        if (wv.dst != gen.src || wv.letters.empty()) continue;
        if (dims_[gen.dst] == 0 || dims_[wv.src] == 0) continue;
        const auto& terms = A.product(gw, v);
        if (terms.size() == 1 && terms[0].coef.is_one()) {
          const auto& u = A.words()[terms[0].word].letters;
          if (u.size() == wv.letters.size() + 1 && u[0] == g &&
              std::equal(wv.letters.begin(), wv.letters.end(), u.begin() + 1))
            continue;
        }
        Check c;
        c.rows = dims_[gen.dst];
        c.cols = dims_[wv.src];
        Mono lhs{1, {g}};
        lhs.letters.insert(lhs.letters.end(), wv.letters.begin(), wv.letters.end());
        c.monos.push_back(lhs);
        for (const auto& t : terms) {
          const auto& w = A.words()[t.word];
          std::uint32_t neg = (p_ - t.coef.residue()) % p_;
          if (w.letters.empty()) {
            // a vertex word: the identity block
            c.monos.push_back({neg, {}});
          } else {
            c.monos.push_back({neg, w.letters});
          }
        }
        std::size_t st = 0;
        for (const auto& m : c.monos)
          for (auto l : m.letters) st = std::max(st, l);
        c.stage = st;
        for (const auto& m : c.monos)
          if (std::count(m.letters.begin(), m.letters.end(), st) > 1) c.affine = false;
        checks_.push_back(std::move(c));
      }
    }
  }

  void build_group() {
    // transvections and, for p > 2, a primitive-root scaling at each vertex
    std::uint32_t omega = 1;
    if (p_ > 2) {
      for (std::uint32_t w = 2; w < p_; ++w) {
        std::uint64_t x = 1;
        std::uint32_t order = 0;
        do {
          x = x * w % p_;
          ++order;
        } while (x != 1);
        if (order == p_ - 1) {
          omega = w;
          break;
        }
      }
    }
    omega_ = omega;
    omega_inv_ = 1;
    for (std::uint32_t i = 1; i < p_; ++i)
      if (std::uint64_t(i) * omega % p_ == 1) omega_inv_ = i;
    for (std::size_t v = 0; v < dims_.size(); ++v) {
      std::size_t d = dims_[v];
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          if (i != j) moves_.push_back({v, i, j});
      if (d > 0 && p_ > 2) moves_.push_back({v, 0, 0});
    }
  }

  Small eval(const Check& c, const std::vector<Small>& gens) const {
    Small total(c.rows, c.cols);
    for (const auto& m : c.monos) {
      if (m.coef == 0) continue;
      Small prod;
      if (m.letters.empty()) {
        prod = Small(c.rows, c.cols);
        for (std::size_t i = 0; i < c.rows; ++i) prod.at(i, i) = 1;
      } else {
        prod = gens[m.letters.back()];
        for (std::size_t i = m.letters.size() - 1; i-- > 0;) prod = mul(gens[m.letters[i]], prod, p_);
      }
      for (std::size_t i = 0; i < total.a.size(); ++i)
        total.a[i] = static_cast<std::uint32_t>((total.a[i] + std::uint64_t(m.coef) * prod.a[i]) % p_);
    }
    return total;
  }

  static bool is_zero(const Small& s) {
    return std::all_of(s.a.begin(), s.a.end(), [](std::uint32_t x) { return x == 0; });
  }

  void tick(std::uint64_t n = 1) {
    visited_ += n;
    if (visited_ > budget_.modules)
      throw BudgetExceeded("module enumeration visited more than " + std::to_string(budget_.modules) +
                           " candidate representations");
  }

  void stage(std::size_t k, std::vector<Module>& out) {
    if (k == cur_.size()) {
      leaf(out);
      return;
    }
    Small& x = cur_[k];
    std::size_t n = x.a.size();
    std::vector<const Check*> lin, nonlin;
    for (const auto& c : checks_)
      if (c.stage == k) (c.affine ? lin : nonlin).push_back(&c);
    auto passes_nonlinear = [&]() {
      for (auto c : nonlin)
        if (!is_zero(eval(*c, cur_))) return false;
      return true;
    };
    if (n == 0) {
      // an empty block still has to satisfy the relations it closes
      tick();
      bool ok = passes_nonlinear();
      for (auto c : lin) ok = ok && is_zero(eval(*c, cur_));
      if (ok) stage(k + 1, out);
      return;
    }
    const Field& field = A_->field();
    // affine constraints: F(X) = F(0) + L(X)
    std::size_t neq = 0;
    for (auto c : lin) neq += c->rows * c->cols;
    Matrix sys(field, neq, n), rhs(field, neq, 1);
    std::fill(x.a.begin(), x.a.end(), 0);
    std::vector<Small> f0;
    for (auto c : lin) f0.push_back(eval(*c, cur_));
    {
      std::size_t row = 0;
      for (std::size_t ci = 0; ci < lin.size(); ++ci)
        for (std::size_t i = 0; i < f0[ci].a.size(); ++i, ++row)
          rhs.set_residue(row, 0, (p_ - f0[ci].a[i]) % p_);
    }
    for (std::size_t e = 0; e < n; ++e) {
      std::fill(x.a.begin(), x.a.end(), 0);
      x.a[e] = 1;
      std::size_t row = 0;
      for (std::size_t ci = 0; ci < lin.size(); ++ci) {
        Small fe = eval(*lin[ci], cur_);
        for (std::size_t i = 0; i < fe.a.size(); ++i, ++row)
          sys.set_residue(row, e, (fe.a[i] + p_ - f0[ci].a[i]) % p_);
      }
    }
    std::fill(x.a.begin(), x.a.end(), 0);
    Matrix particular(field, n, 1);
    Matrix kernel(field, 0, n);
    if (neq > 0) {
      auto sol = solve(sys, rhs);
      if (!sol) {
        tick();
        return;
      }
      particular = *sol;
      kernel = kernel_basis(sys);
    } else {
      kernel = Matrix::identity(field, n);
    }
    std::size_t m = kernel.rows();
    std::vector<std::uint32_t> coeff(m, 0);
    for (;;) {
      tick();
      for (std::size_t e = 0; e < n; ++e) {
        std::uint64_t v = particular.residue(e, 0);
        for (std::size_t i = 0; i < m; ++i) v += std::uint64_t(coeff[i]) * kernel.residue(i, e);
        x.a[e] = static_cast<std::uint32_t>(v % p_);
      }
      if (passes_nonlinear()) stage(k + 1, out);
      std::size_t i = 0;
      while (i < m && ++coeff[i] == p_) coeff[i++] = 0;
      if (i == m) break;
    }
    std::fill(x.a.begin(), x.a.end(), 0);
  }

  std::string key_of(const std::vector<Small>& gens) const {
    std::string k;
    for (const auto& g : gens)
      for (auto v : g.a) k.push_back(static_cast<char>(v));
    return k;
  }

  void apply(std::vector<Small>& gens, const std::array<std::size_t, 3>& mv) const {
    auto [v, i, j] = mv;
    const auto& G = A_->generators();
    for (std::size_t g = 0; g < G.size(); ++g) {
      Small& s = gens[g];
      if (G[g].dst == v) {
        if (i == j)
          for (std::size_t c = 0; c < s.c; ++c) s.at(i, c) = std::uint32_t(std::uint64_t(s.at(i, c)) * omega_ % p_);
        else
          for (std::size_t c = 0; c < s.c; ++c) s.at(i, c) = (s.at(i, c) + s.at(j, c)) % p_;
      }
      if (G[g].src == v) {
        if (i == j)
          for (std::size_t r = 0; r < s.r; ++r)
            s.at(r, i) = std::uint32_t(std::uint64_t(s.at(r, i)) * omega_inv_ % p_);
        else
          for (std::size_t r = 0; r < s.r; ++r) s.at(r, j) = (s.at(r, j) + p_ - s.at(r, i)) % p_;
      }
    }
  }

  void leaf(std::vector<Module>& out) {
    std::string key = key_of(cur_);
    if (seen_.count(key)) return;
    std::deque<std::vector<Small>> queue{cur_};
    seen_.insert(key);
    std::string best = key;
    std::vector<Small> best_gens = cur_;
    while (!queue.empty()) {
      auto s = std::move(queue.front());
      queue.pop_front();
      for (const auto& mv : moves_) {
        auto t = s;
        apply(t, mv);
        auto kt = key_of(t);
        if (seen_.insert(kt).second) {
          if (kt < best) {
            best = kt;
            best_gens = t;
          }
          queue.push_back(std::move(t));
        }
      }
    }
    const Field& k = A_->field();
    std::vector<Matrix> gens;
    for (const auto& s : best_gens) {
      Matrix m(k, s.r, s.c);
      for (std::size_t i = 0; i < s.r; ++i)
        for (std::size_t j = 0; j < s.c; ++j) m.set_residue(i, j, s.at(i, j));
      gens.push_back(std::move(m));
    }
    out.push_back(Module::from_generators(A_, side_, dims_, std::move(gens), true));
  }

  AlgebraPtr A_;
  Side side_;
  std::vector<std::size_t> dims_;
  const Budget& budget_;
  std::uint64_t& visited_;
  std::uint32_t p_;
  std::uint32_t omega_ = 1, omega_inv_ = 1;
  std::vector<Check> checks_;
  std::vector<std::array<std::size_t, 3>> moves_;
  std::vector<Small> cur_;
  std::unordered_set<std::string> seen_;
};

void dimension_vectors(std::size_t r, std::size_t total, std::vector<std::size_t>& cur,
                       std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == r) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (std::size_t d = 0; d <= total; ++d) {
    cur.push_back(d);
    dimension_vectors(r, total - d, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Module> enumerate_modules(const AlgebraPtr& base, Side side, std::size_t max_dim, const Budget& b) {
  const Field& k = base->field();
  if (!k.is_prime() || k.characteristic() > 255)
    throw BudgetExceeded("module enumeration needs a prime field with p < 256");
  AlgebraPtr acting = Module::acting_for(base, side);
  std::vector<Module> out;
  std::uint64_t visited = 0;
  for (std::size_t total = 1; total <= max_dim; ++total) {
    std::vector<std::vector<std::size_t>> vecs;
    std::vector<std::size_t> cur;
    dimension_vectors(base->vertex_count(), total, cur, vecs);
    std::sort(vecs.begin(), vecs.end());
    for (const auto& d : vecs) {
      std::vector<Module> found;
      Enumerator e(acting, side, d, b, visited);
      e.run(found);
      std::sort(found.begin(), found.end(), [](const Module& x, const Module& y) { return x.key() < y.key(); });
      out.insert(out.end(), found.begin(), found.end());
    }
  }
  return out;
}

}  // namespace reflexa
