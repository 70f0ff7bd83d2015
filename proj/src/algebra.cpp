#include "reflexa/algebra.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace reflexa {

struct Algebra::Build {
  Field k;
  std::vector<std::string> labels;
  MultTable table;
  std::vector<Scalar> unit;
  std::vector<std::vector<Scalar>> idempotents;
  std::optional<Presentation> presentation;
  // Quiver algebras supply their arrows as generators.
  std::optional<std::vector<std::pair<Generator, std::vector<Scalar>>>> gens;
};

namespace {

std::vector<Scalar> zeros(const Field& k, std::size_t n) { return std::vector<Scalar>(n, Scalar(k)); }

Matrix column_of(const Field& k, const std::vector<Scalar>& v) {
  Matrix m(k, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
  return m;
}

std::string vec_string(const std::vector<Scalar>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
  return s + "]";
}

// Left multiplication matrices in user coordinates: column j of L[i] is b_i*b_j.
std::vector<Matrix> left_mult(const Field& k, const MultTable& t) {
  std::size_t n = t.size();
  std::vector<Matrix> L(n, Matrix(k, n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t c = 0; c < n; ++c)
        if (!t[i][j][c].is_zero()) L[i].set(c, j, t[i][j][c]);
  return L;
}

Matrix combine(const Field& k, const std::vector<Matrix>& L, const Matrix& coeffs_col) {
  std::size_t n = L.size();
  Matrix r(k, n, n);
  for (std::size_t i = 0; i < n; ++i)
    if (!coeffs_col.is_zero_at(i, 0)) r += L[i].scaled(coeffs_col.at(i, 0));
  return r;
}

bool is_nilpotent(const Matrix& m) {
  Matrix p = m;
  std::size_t prev = m.rows() + 1;
  for (;;) {
    std::size_t r = p.rank();
    if (r == 0) return true;
    if (r == prev) return false;
    prev = r;
    p = p * m;
  }
}

bool in_span(const Matrix& span_cols, const Matrix& v) {
  if (span_cols.cols() == 0) return v.is_zero();
  return hstack(span_cols, v).rank() == span_cols.rank();
}

Matrix append_col(const Matrix& a, const Matrix& v) {
  if (a.cols() == 0) return v;
  return hstack(a, v);
}

std::string fingerprint_of(const Algebra& a) {
  std::ostringstream os;
  os << a.field().name() << '|' << a.dim() << '|' << a.vertex_count() << '|' << a.is_basic() << '|';
  for (const auto& l : a.labels()) os << l << ',';
  os << '|';
  for (const auto& row : a.table())
    for (const auto& cell : row) {
      for (const auto& s : cell)
        if (!s.is_zero()) os << s.to_string();
        else os << '.';
      os << ';';
    }
  os << '|';
  for (const auto& e : a.idempotents()) os << vec_string(e);
  os << '|';
  for (const auto& g : a.generators()) os << g.name << ':' << g.src << '>' << g.dst << ',';
  os << '|';
  for (const auto& w : a.words()) {
    os << w.src << '>' << w.dst << '[';
    for (auto l : w.letters) os << l << ' ';
    os << ']';
  }
  if (a.presentation()) {
    os << "|P";
    for (const auto& ar : a.presentation()->quiver.arrows) os << ar.name << ar.src << ar.dst << ',';
    for (const auto& r : a.presentation()->relations) {
      for (const auto& s : r) os << s << '.';
      os << ';';
    }
  }
  return os.str();
}

}  // namespace

void Algebra::require_basic(const std::string& op) const {
  if (!basic_)
    throw NotBasic(op + " needs an algebra that is basic as presented (each e_i A e_i split local "
                        "modulo a nilpotent radical)");
}

std::vector<Scalar> Algebra::multiply_user(const std::vector<Scalar>& x,
                                           const std::vector<Scalar>& y) const {
  std::size_t n = dim();
  auto r = zeros(field_, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      Scalar c = x[i] * y[j];
      for (std::size_t t = 0; t < n; ++t)
        if (!table_[i][j][t].is_zero()) r[t] = r[t] + c * table_[i][j][t];
    }
  }
  return r;
}

AlgebraPtr Algebra::from_table(Field k, std::vector<std::string> labels, const MultTable& table,
                               const std::vector<Scalar>& unit,
                               const std::vector<std::vector<Scalar>>& idempotents) {
  std::size_t n = labels.size();
  if (n == 0) throw DimensionMismatch("algebra needs a nonempty basis");
  if (table.size() != n) throw DimensionMismatch("multiplication table must have one row per basis element");
  for (const auto& row : table) {
    if (row.size() != n) throw DimensionMismatch("multiplication table row has wrong length");
    for (const auto& cell : row)
      if (cell.size() != n) throw DimensionMismatch("product vector has wrong length");
  }
  if (unit.size() != n) throw DimensionMismatch("unit has wrong length");
  if (idempotents.empty()) throw BadIdempotents("at least one idempotent is required");
  for (const auto& e : idempotents)
    if (e.size() != n) throw DimensionMismatch("idempotent has wrong length");
  {
    std::set<std::string> seen;
    for (const auto& l : labels)
      if (!seen.insert(l).second) throw ParseError("duplicate basis label '" + l + "'");
  }

  Build b{k, std::move(labels), table, unit, idempotents, std::nullopt, std::nullopt};
  auto L = left_mult(k, table);

  // Associativity: L(b_i b_j) = L(b_i) L(b_j) on every column b_t.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix lhs = combine(k, L, column_of(k, table[i][j]));
      Matrix rhs = L[i] * L[j];
      if (lhs == rhs) continue;
      for (std::size_t t = 0; t < n; ++t)
        if (!(lhs.col(t) == rhs.col(t)))
          throw NonAssociative("(" + b.labels[i] + "*" + b.labels[j] + ")*" + b.labels[t] +
                               " != " + b.labels[i] + "*(" + b.labels[j] + "*" + b.labels[t] +
                               ") at triple (" + std::to_string(i) + "," + std::to_string(j) +
                               "," + std::to_string(t) + ")");
    }

  Matrix u = column_of(k, unit);
  Matrix Lu = combine(k, L, u);
  for (std::size_t j = 0; j < n; ++j) {
    Matrix bj(k, n, 1);
    bj.set(j, 0, Scalar(k, 1));
    Matrix right = L[j] * u;
    if (!(Lu.col(j) == bj) || !(right == bj))
      throw BadUnit("unit " + vec_string(unit) + " fails on basis element '" + b.labels[j] + "'");
  }

  Matrix sum(k, n, 1);
  for (std::size_t a = 0; a < idempotents.size(); ++a) {
    Matrix ea = column_of(k, idempotents[a]);
    if (ea.is_zero()) throw BadIdempotents("idempotent " + std::to_string(a + 1) + " is zero");
    Matrix La = combine(k, L, ea);
    for (std::size_t c = 0; c < idempotents.size(); ++c) {
      Matrix ec = column_of(k, idempotents[c]);
      Matrix prod = La * ec;
      if (a == c && !(prod == ea))
        throw BadIdempotents("e" + std::to_string(a + 1) + "^2 != e" + std::to_string(a + 1) +
                             " for " + vec_string(idempotents[a]));
      if (a != c && !prod.is_zero())
        throw BadIdempotents("e" + std::to_string(a + 1) + "*e" + std::to_string(c + 1) + " != 0");
    }
    sum += ea;
  }
  if (!(sum == u)) throw BadIdempotents("idempotents do not sum to the unit");

  return finalize(b);
}

AlgebraPtr Algebra::bound_quiver(Field k, const Quiver& q,
                                 const std::vector<std::vector<std::string>>& relations) {
  if (q.vertex_count == 0) throw InvalidPresentation("quiver needs at least one vertex");
  std::map<std::string, std::size_t> by_name;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const auto& ar = q.arrows[a];
    if (ar.src >= q.vertex_count || ar.dst >= q.vertex_count)
      throw InvalidPresentation("arrow '" + ar.name + "' has a vertex out of range");
    if (ar.name.empty()) throw InvalidPresentation("arrow names must be nonempty");
    if (!by_name.emplace(ar.name, a).second)
      throw InvalidPresentation("duplicate arrow name '" + ar.name + "'");
  }
  std::vector<std::vector<std::size_t>> rels;
  std::size_t max_len = 1;
  for (const auto& r : relations) {
    if (r.size() < 2) throw InvalidPresentation("relations must have length >= 2");
    std::vector<std::size_t> idx;
    for (const auto& nm : r) {
      auto it = by_name.find(nm);
      if (it == by_name.end()) throw InvalidPresentation("relation uses unknown arrow '" + nm + "'");
      idx.push_back(it->second);
    }
    for (std::size_t t = 0; t + 1 < idx.size(); ++t)
      if (q.arrows[idx[t]].dst != q.arrows[idx[t + 1]].src)
        throw InvalidPresentation("relation path is not composable at '" + r[t + 1] + "'");
    max_len = std::max(max_len, idx.size());
    rels.push_back(std::move(idx));
  }

  auto ends_with_relation = [&](const std::vector<std::size_t>& p) {
    for (const auto& r : rels)
      if (p.size() >= r.size() && std::equal(r.begin(), r.end(), p.end() - r.size())) return true;
    return false;
  };

  // Finite iff the suffix automaton (last max_len-1 arrows) has no reachable cycle.
  {
    using State = std::pair<std::size_t, std::vector<std::size_t>>;
    std::map<State, int> color;
    std::function<bool(const State&)> cyclic = [&](const State& s) -> bool {
      color[s] = 1;
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        if (q.arrows[a].src != s.first) continue;
        auto seq = s.second;
        seq.push_back(a);
        if (ends_with_relation(seq)) continue;
        if (seq.size() > max_len - 1) seq.erase(seq.begin(), seq.end() - (max_len - 1));
        State t{q.arrows[a].dst, seq};
        auto it = color.find(t);
        if (it != color.end()) {
          if (it->second == 1) return true;
          continue;
        }
        if (cyclic(t)) return true;
      }
      color[s] = 2;
      return false;
    };
    for (std::size_t v = 0; v < q.vertex_count; ++v) {
      State s{v, {}};
      if (!color.count(s) && cyclic(s))
        throw InfiniteDimensional("an oriented cycle survives the relations; the path algebra is "
                                  "infinite-dimensional");
    }
  }

  // Paths by length; within a length, extend earlier paths first, arrows in declared order.
  struct Path {
    std::size_t src, dst;
    std::vector<std::size_t> arrows;
  };
  std::vector<Path> paths;
  for (std::size_t v = 0; v < q.vertex_count; ++v) paths.push_back({v, v, {}});
  std::size_t level_begin = 0, level_end = paths.size();
  while (level_begin < level_end) {
    for (std::size_t p = level_begin; p < level_end; ++p)
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        if (q.arrows[a].src != paths[p].dst) continue;
        auto seq = paths[p].arrows;
        seq.push_back(a);
        if (ends_with_relation(seq)) continue;
        paths.push_back({paths[p].src, q.arrows[a].dst, std::move(seq)});
      }
    level_begin = level_end;
    level_end = paths.size();
  }

  std::size_t n = paths.size();
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<std::string> labels;
  for (std::size_t p = 0; p < n; ++p) {
    if (paths[p].arrows.empty()) {
      labels.push_back("e" + std::to_string(paths[p].src + 1));
    } else {
      std::string s;
      for (auto a : paths[p].arrows) s += (s.empty() ? "" : ".") + q.arrows[a].name;
      labels.push_back(s);
      index[paths[p].arrows] = p;
    }
  }

  MultTable table(n, std::vector<std::vector<Scalar>>(n, zeros(k, n)));
  Scalar one(k, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // b_i * b_j: traverse b_j, then b_i.
      if (paths[j].dst != paths[i].src) continue;
      if (paths[i].arrows.empty()) {
        table[i][j][j] = one;
        continue;
      }
      if (paths[j].arrows.empty()) {
        table[i][j][i] = one;
        continue;
      }
      auto seq = paths[j].arrows;
      seq.insert(seq.end(), paths[i].arrows.begin(), paths[i].arrows.end());
      auto it = index.find(seq);
      if (it != index.end()) table[i][j][it->second] = one;
    }

  std::vector<Scalar> unit = zeros(k, n);
  std::vector<std::vector<Scalar>> idems;
  for (std::size_t v = 0; v < q.vertex_count; ++v) {
    unit[v] = one;
    auto e = zeros(k, n);
    e[v] = one;
    idems.push_back(std::move(e));
  }
  std::vector<std::pair<Generator, std::vector<Scalar>>> gens;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    auto it = index.find({a});
    if (it == index.end()) continue;
    auto e = zeros(k, n);
    e[it->second] = one;
    gens.push_back({Generator{q.arrows[a].name, q.arrows[a].src, q.arrows[a].dst}, std::move(e)});
  }

  Build b{k, std::move(labels), std::move(table), std::move(unit), std::move(idems),
          Presentation{q, relations}, std::move(gens)};
  return finalize(b);
}

std::shared_ptr<Algebra> Algebra::finalize(Build& b) {
  const Field& k = b.k;
  std::size_t n = b.labels.size();
  std::size_t r = b.idempotents.size();
  auto alg = std::make_shared<Algebra>(Private{}, k);
  alg->labels_ = b.labels;
  alg->table_ = b.table;
  alg->unit_ = b.unit;
  alg->idempotents_ = b.idempotents;
  alg->presentation_ = b.presentation;
  alg->vertices_ = r;

  auto L = left_mult(k, b.table);
  std::vector<Matrix> Le;
  for (const auto& e : b.idempotents) Le.push_back(combine(k, L, column_of(k, e)));
  // Right multiplication by e_i: column j = b_j * e_i.
  std::vector<Matrix> Re;
  for (const auto& e : b.idempotents) {
    Matrix m(k, n, n);
    Matrix ec = column_of(k, e);
    for (std::size_t j = 0; j < n; ++j) m.set_block(0, j, L[j] * ec);
    Re.push_back(m);
  }
  // Peirce pieces e_j A e_i as column bases.
  std::vector<Matrix> piece(r * r);
  std::size_t total = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      piece[i * r + j] = column_space(Le[j] * Re[i]);
      total += piece[i * r + j].cols();
    }
  if (total != n) throw InternalInconsistency("Peirce decomposition does not span the algebra");

  std::vector<std::pair<Generator, Matrix>> gens;
  if (b.gens) {
    alg->basic_ = true;
    for (auto& [g, v] : *b.gens) gens.push_back({g, column_of(k, v)});
  } else {
    // Candidate radical: off-diagonal pieces plus the nilpotent parts of the corners.
    bool basic = true;
    std::vector<Matrix> rad(r * r);
    for (std::size_t i = 0; i < r && basic; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        if (i != j) {
          rad[i * r + j] = piece[i * r + j];
          continue;
        }
        const Matrix& B = piece[i * r + i];
        std::size_t m = B.cols();
        Matrix ei = column_of(k, b.idempotents[i]);
        Matrix cols(k, n, 0);
        for (std::size_t c = 0; c < m && basic; ++c) {
          Matrix y = B.col(c);
          Matrix Ly = combine(k, L, y);
          std::vector<Scalar> candidates;
          bool trace_works = k.is_rational() || (m % k.characteristic()) != 0;
          if (trace_works) {
            auto X = solve(B, Ly * B);
            if (!X) throw InternalInconsistency("corner algebra not closed under multiplication");
            Scalar tr(k);
            for (std::size_t t = 0; t < m; ++t) tr = tr + X->at(t, t);
            candidates.push_back(tr * Scalar(k, static_cast<long>(m)).inverse());
          } else {
            for (std::uint32_t l = 0; l < k.characteristic(); ++l) candidates.push_back(Scalar(k, l));
          }
          bool found = false;
          for (const auto& lam : candidates) {
            Matrix z = y - ei.scaled(lam);
            if (is_nilpotent(combine(k, L, z))) {
              if (!z.is_zero()) cols = append_col(cols, z);
              found = true;
              break;
            }
          }
          if (!found) basic = false;
        }
        if (basic) rad[i * r + i] = column_space(cols.cols() ? cols : Matrix(k, n, 0));
      }
    Matrix J(k, n, 0);
    if (basic) {
      for (const auto& p : rad)
        if (p.cols()) J = append_col(J, p);
      J = column_space(J.cols() ? J : Matrix(k, n, 0));
      if (J.cols() != n - r) basic = false;
    }
    if (basic && J.cols() > 0) {
      // Two-sided ideal.
      for (std::size_t t = 0; t < n && basic; ++t)
        for (std::size_t c = 0; c < J.cols() && basic; ++c) {
          Matrix z = J.col(c);
          Matrix left = L[t] * z;
          Matrix right = combine(k, L, z).col(t);
          if (!in_span(J, left) || !in_span(J, right)) basic = false;
        }
      // Nilpotent.
      Matrix power = J;
      for (std::size_t step = 0; basic && power.cols() > 0; ++step) {
        Matrix next(k, n, 0);
        for (std::size_t c = 0; c < power.cols(); ++c) {
          Matrix Lp = combine(k, L, power.col(c));
          next = append_col(next, Lp * J);
        }
        next = next.cols() ? column_space(next) : next;
        if (next.cols() == power.cols()) basic = false;
        power = next;
        if (step > n) basic = false;
      }
    }
    alg->basic_ = basic;

    std::size_t counter = 0;
    auto name_for = [&](const Matrix& v) {
      std::size_t nz = 0, pos = 0;
      for (std::size_t t = 0; t < n; ++t)
        if (!v.is_zero_at(t, 0)) ++nz, pos = t;
      if (nz == 1 && v.at(pos, 0).is_one()) return b.labels[pos];
      return "g" + std::to_string(++counter);
    };
    if (basic) {
      Matrix J2(k, n, 0);
      for (std::size_t c = 0; c < J.cols(); ++c) {
        Matrix Lc = combine(k, L, J.col(c));
        J2 = append_col(J2, Lc * J);
      }
      Matrix span = J2.cols() ? column_space(J2) : J2;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          const Matrix& P = rad[i * r + j];
          for (std::size_t c = 0; c < P.cols(); ++c) {
            Matrix v = P.col(c);
            if (in_span(span, v)) continue;
            span = append_col(span, v);
            gens.push_back({Generator{"", i, j}, v});
          }
        }
    } else {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          Matrix span = i == j ? column_of(k, b.idempotents[i]) : Matrix(k, n, 0);
          const Matrix& P = piece[i * r + j];
          for (std::size_t c = 0; c < P.cols(); ++c) {
            Matrix v = P.col(c);
            if (in_span(span, v)) continue;
            span = append_col(span, v);
            gens.push_back({Generator{"", i, j}, v});
          }
        }
    }
    for (auto& [g, v] : gens) g.name = name_for(v);
  }

  // Word basis by breadth-first products g * w.
  std::vector<Word> words;
  Matrix W(k, n, 0);
  for (std::size_t i = 0; i < r; ++i) {
    words.push_back(Word{i, i, {}});
    W = append_col(W, column_of(k, b.idempotents[i]));
  }
  std::vector<Matrix> Lg;
  for (auto& [g, v] : gens) Lg.push_back(combine(k, L, v));
  std::vector<std::size_t> gen_word(gens.size(), static_cast<std::size_t>(-1));
  std::size_t level_begin = 0, level_end = words.size();
  std::size_t rank = W.rank();
  while (level_begin < level_end && words.size() < n) {
    for (std::size_t w = level_begin; w < level_end; ++w)
      for (std::size_t g = 0; g < gens.size(); ++g) {
        if (gens[g].first.src != words[w].dst) continue;
        Matrix v = Lg[g] * W.col(w);
        if (v.is_zero()) continue;
        Matrix cand = hstack(W, v);
        if (cand.rank() == rank) continue;
        W = std::move(cand);
        ++rank;
        Word nw{words[w].src, gens[g].first.dst, {g}};
        nw.letters.insert(nw.letters.end(), words[w].letters.begin(), words[w].letters.end());
        if (words[w].letters.empty()) gen_word[g] = words.size();
        words.push_back(std::move(nw));
      }
    level_begin = level_end;
    level_end = words.size();
  }
  if (words.size() != n) throw InternalInconsistency("generator words do not span the algebra");
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (gen_word[g] == static_cast<std::size_t>(-1))
      throw InternalInconsistency("generator " + gens[g].first.name + " is not a basis word");

  auto Winv = inverse(W);
  if (!Winv) throw InternalInconsistency("word basis is singular");
  alg->word_to_user_ = W;
  alg->user_to_word_ = *Winv;
  for (auto& [g, v] : gens) alg->gens_.push_back(g);
  alg->gen_word_ = gen_word;
  alg->words_ = words;
  alg->between_.assign(r * r, {});
  for (std::size_t w = 0; w < n; ++w) alg->between_[words[w].src * r + words[w].dst].push_back(w);

  alg->prod_.assign(n * n, {});
  for (std::size_t a = 0; a < n; ++a) {
    Matrix La = *Winv * combine(k, L, W.col(a)) * W;
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t t = 0; t < n; ++t)
        if (!La.is_zero_at(t, c)) alg->prod_[a * n + c].push_back(Term{t, La.at(t, c)});
  }
  alg->fingerprint_ = fingerprint_of(*alg);
  return alg;
}

AlgebraPtr Algebra::opposite() const {
  std::lock_guard<std::mutex> lock(op_mutex_);
  if (op_strong_) return op_strong_;
  if (auto origin = op_weak_.lock()) return origin;

  std::size_t n = dim(), r = vertices_;
  auto op = std::make_shared<Algebra>(Private{}, field_);
  op->labels_ = labels_;
  op->table_ = table_;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) op->table_[i][j] = table_[j][i];
  op->unit_ = unit_;
  op->idempotents_ = idempotents_;
  if (presentation_) {
    Presentation p = *presentation_;
    for (auto& a : p.quiver.arrows) std::swap(a.src, a.dst);
    for (auto& rel : p.relations) std::reverse(rel.begin(), rel.end());
    op->presentation_ = std::move(p);
  }
  op->vertices_ = r;
  op->basic_ = basic_;
  op->opposite_flag_ = !opposite_flag_;
  op->gens_ = gens_;
  for (auto& g : op->gens_) std::swap(g.src, g.dst);
  op->gen_word_ = gen_word_;
  op->words_ = words_;
  for (auto& w : op->words_) {
    std::swap(w.src, w.dst);
    std::reverse(w.letters.begin(), w.letters.end());
  }
  op->between_.assign(r * r, {});
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t d = 0; d < r; ++d) op->between_[s * r + d] = between_[d * r + s];
  op->prod_.assign(n * n, {});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) op->prod_[a * n + b] = prod_[b * n + a];
  op->word_to_user_ = word_to_user_;
  op->user_to_word_ = user_to_word_;
  op->fingerprint_ = fingerprint_of(*op);
  if (!name_.empty()) op->name_ = name_ + "^op";
  op->op_weak_ = shared_from_this();
  op_strong_ = op;
  return op;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a == b || (a && b && a->fingerprint() == b->fingerprint());
}

}  // namespace reflexa
