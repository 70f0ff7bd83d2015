#include "reflexa/module.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace reflexa {

namespace {

Matrix hcat(const Field& k, std::size_t rows, const std::vector<Matrix>& parts) {
  std::size_t cols = 0;
  for (const auto& p : parts) cols += p.cols();
  Matrix r(k, rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    r.set_block(0, c, p);
    c += p.cols();
  }
  return r;
}

Matrix vcat(const Field& k, std::size_t cols, const std::vector<Matrix>& parts) {
  std::size_t rows = 0;
  for (const auto& p : parts) rows += p.rows();
  Matrix r(k, rows, cols);
  std::size_t o = 0;
  for (const auto& p : parts) {
    r.set_block(o, 0, p);
    o += p.rows();
  }
  return r;
}

// Canonical column basis of the span of the columns of m.
Matrix span_of(const Matrix& m) {
  if (m.cols() == 0) return Matrix(m.field(), m.rows(), 0);
  return column_space(m);
}

// Module structure on per-vertex subspaces (columns) of m, assumed invariant.
Module restrict_to(const Module& m, const std::vector<Matrix>& basis) {
  const auto& A = m.acting();
  std::vector<std::size_t> dims;
  for (const auto& b : basis) dims.push_back(b.cols());
  std::vector<Matrix> gens;
  for (std::size_t g = 0; g < A->generators().size(); ++g) {
    const auto& gen = A->generators()[g];
    auto x = solve(basis[gen.dst], m.gen(g) * basis[gen.src]);
    if (!x) throw InternalInconsistency("subspace is not invariant under " + gen.name);
    gens.push_back(std::move(*x));
  }
  return Module::from_generators(A, m.side(), dims, gens, false);
}

std::string word_name(const Algebra& A, const Word& w) {
  std::string s;
  for (auto l : w.letters) s += (s.empty() ? "" : ".") + A.generators()[l].name;
  return s.empty() ? "e" + std::to_string(w.src + 1) : s;
}

bool block_invertible(const ModuleMap& f) {
  for (std::size_t v = 0; v < f.source().vertex_count(); ++v) {
    const Matrix& b = f.block(v);
    if (b.rows() != b.cols() || b.rank() != b.rows()) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------- Module

AlgebraPtr Module::acting_for(const AlgebraPtr& base, Side side) {
  return side == Side::left ? base : base->opposite();
}

AlgebraPtr Module::base() const {
  return d_->side == Side::left ? d_->acting : d_->acting->opposite();
}

Module Module::from_generators(AlgebraPtr acting, Side side, std::vector<std::size_t> dims,
                               std::vector<Matrix> gen_blocks, bool validate) {
  const auto& A = *acting;
  if (dims.size() != A.vertex_count())
    throw InvalidModule("dimension vector has " + std::to_string(dims.size()) +
                        " entries, algebra has " + std::to_string(A.vertex_count()) + " vertices");
  if (gen_blocks.size() != A.generators().size())
    throw InvalidModule("expected " + std::to_string(A.generators().size()) + " generator matrices");
  for (std::size_t g = 0; g < gen_blocks.size(); ++g) {
    const auto& gen = A.generators()[g];
    const auto& b = gen_blocks[g];
    if (!(b.field() == A.field()))
      throw InvalidModule("matrix for " + gen.name + " is over the wrong field");
    if (b.rows() != dims[gen.dst] || b.cols() != dims[gen.src])
      throw InvalidModule("matrix for " + gen.name + " has shape " + std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()) + ", expected " + std::to_string(dims[gen.dst]) +
                          "x" + std::to_string(dims[gen.src]));
  }
  auto d = std::make_shared<Data>();
  d->acting = std::move(acting);
  d->side = side;
  d->dims = std::move(dims);
  d->offsets.resize(d->dims.size());
  for (std::size_t v = 0; v < d->dims.size(); ++v) {
    d->offsets[v] = d->total;
    d->total += d->dims[v];
  }
  d->gens = std::move(gen_blocks);
  const Field& k = A.field();
  d->words.reserve(A.dim());
  for (const auto& w : A.words()) {
    if (w.letters.empty()) {
      d->words.push_back(Matrix::identity(k, d->dims[w.src]));
      continue;
    }
    Matrix p = d->gens[w.letters.back()];
    for (std::size_t i = w.letters.size() - 1; i-- > 0;) p = d->gens[w.letters[i]] * p;
    d->words.push_back(std::move(p));
  }
  if (validate) {
    for (std::size_t g = 0; g < A.generators().size(); ++g) {
      const auto& gen = A.generators()[g];
      std::size_t gw = A.generator_word(g);
      for (std::size_t v = 0; v < A.dim(); ++v) {
        const auto& wv = A.words()[v];
        if (wv.dst != gen.src || wv.letters.empty()) continue;
        const auto& terms = A.product(gw, v);
        if (terms.size() == 1 && terms[0].coef.is_one()) {
          const auto& u = A.words()[terms[0].word].letters;
          if (u.size() == wv.letters.size() + 1 && u[0] == g &&
              std::equal(wv.letters.begin(), wv.letters.end(), u.begin() + 1))
            continue;
        }
        Matrix lhs = d->gens[g] * d->words[v];
        Matrix rhs(k, d->dims[gen.dst], d->dims[wv.src]);
        for (const auto& t : terms) rhs += d->words[t.word].scaled(t.coef);
        if (!(lhs == rhs))
          throw InvalidModule("action violates the relation for " + gen.name + " * " +
                              word_name(A, wv));
      }
    }
  }
  Module m;
  m.d_ = std::move(d);
  return m;
}

Module Module::zero(AlgebraPtr acting, Side side) {
  std::vector<Matrix> gens;
  for (std::size_t g = 0; g < acting->generators().size(); ++g)
    gens.push_back(Matrix(acting->field(), 0, 0));
  std::vector<std::size_t> dims(acting->vertex_count(), 0);
  return from_generators(std::move(acting), side, std::move(dims), std::move(gens), false);
}

Matrix Module::act(const std::vector<Term>& element, std::size_t src, std::size_t dst) const {
  Matrix r(field(), dim(dst), dim(src));
  for (const auto& t : element) {
    const auto& w = acting()->words()[t.word];
    if (w.src != src || w.dst != dst) throw InternalInconsistency("element is not Peirce-homogeneous");
    r += word(t.word).scaled(t.coef);
  }
  return r;
}

Matrix Module::full_action(std::size_t w) const {
  const auto& wd = acting()->words()[w];
  Matrix r(field(), total_dim(), total_dim());
  r.set_block(offset(wd.dst), offset(wd.src), word(w));
  return r;
}

std::string Module::key() const {
  std::string k = std::string(to_string(side())) + "|";
  for (auto d : dims()) k += std::to_string(d) + ",";
  for (const auto& g : gens()) k += "|" + g.key();
  return k;
}

std::string Module::describe() const {
  std::string s = std::string(to_string(side())) + " module, dims {";
  for (std::size_t v = 0; v < dims().size(); ++v)
    s += (v ? ", " : "") + std::to_string(v + 1) + ":" + std::to_string(dims()[v]);
  return s + "}";
}

bool same_category(const Module& a, const Module& b) {
  return a.side() == b.side() && same_algebra(a.acting(), b.acting());
}

void require_same_category(const Module& a, const Module& b, const std::string& op) {
  if (!same_category(a, b))
    throw SideMismatch(op + ": modules live over different algebras or sides (" +
                       to_string(a.side()) + " vs " + to_string(b.side()) + ")");
}

// ---------------------------------------------------------------- ModuleMap

ModuleMap::ModuleMap(Module source, Module target, std::vector<Matrix> blocks, bool validate)
    : src_(std::move(source)), dst_(std::move(target)), blocks_(std::move(blocks)) {
  if (!validate) return;
  require_same_category(src_, dst_, "module map");
  if (blocks_.size() != src_.vertex_count()) throw InvalidMap("wrong number of vertex blocks");
  for (std::size_t v = 0; v < blocks_.size(); ++v)
    if (blocks_[v].rows() != dst_.dim(v) || blocks_[v].cols() != src_.dim(v))
      throw InvalidMap("block at vertex " + std::to_string(v + 1) + " has the wrong shape");
  const auto& A = *src_.acting();
  for (std::size_t g = 0; g < A.generators().size(); ++g) {
    const auto& gen = A.generators()[g];
    if (!(dst_.gen(g) * blocks_[gen.src] == blocks_[gen.dst] * src_.gen(g)))
      throw InvalidMap("map does not commute with " + gen.name);
  }
}

ModuleMap ModuleMap::zero(const Module& source, const Module& target) {
  std::vector<Matrix> b;
  for (std::size_t v = 0; v < source.vertex_count(); ++v)
    b.push_back(Matrix(source.field(), target.dim(v), source.dim(v)));
  return ModuleMap(source, target, std::move(b), false);
}

ModuleMap ModuleMap::identity(const Module& m) {
  std::vector<Matrix> b;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) b.push_back(Matrix::identity(m.field(), m.dim(v)));
  return ModuleMap(m, m, std::move(b), false);
}

Matrix ModuleMap::full() const {
  Matrix r(src_.field(), dst_.total_dim(), src_.total_dim());
  for (std::size_t v = 0; v < blocks_.size(); ++v) r.set_block(dst_.offset(v), src_.offset(v), blocks_[v]);
  return r;
}

ModuleMap ModuleMap::operator*(const ModuleMap& f) const {
  if (f.dst_.dims() != src_.dims()) throw DimensionMismatch("composition of incompatible maps");
  std::vector<Matrix> b;
  for (std::size_t v = 0; v < blocks_.size(); ++v) b.push_back(blocks_[v] * f.blocks_[v]);
  return ModuleMap(f.src_, dst_, std::move(b), false);
}

ModuleMap ModuleMap::operator+(const ModuleMap& o) const {
  std::vector<Matrix> b;
  for (std::size_t v = 0; v < blocks_.size(); ++v) b.push_back(blocks_[v] + o.blocks_[v]);
  return ModuleMap(src_, dst_, std::move(b), false);
}

ModuleMap ModuleMap::operator-(const ModuleMap& o) const { return *this + o.scaled(Scalar(src_.field(), -1)); }

ModuleMap ModuleMap::scaled(const Scalar& s) const {
  std::vector<Matrix> b;
  for (const auto& m : blocks_) b.push_back(m.scaled(s));
  return ModuleMap(src_, dst_, std::move(b), false);
}

bool ModuleMap::is_zero() const {
  for (const auto& b : blocks_)
    if (!b.is_zero()) return false;
  return true;
}

std::size_t ModuleMap::rank() const {
  std::size_t r = 0;
  for (const auto& b : blocks_) r += b.rank();
  return r;
}

bool ModuleMap::is_injective() const { return rank() == src_.total_dim(); }
bool ModuleMap::is_surjective() const { return rank() == dst_.total_dim(); }
bool ModuleMap::is_isomorphism() const { return is_injective() && is_surjective(); }

Matrix ModuleMap::as_row() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.rows() * b.cols();
  Matrix r(src_.field(), 1, n);
  std::size_t o = 0;
  for (const auto& b : blocks_) {
    std::size_t len = b.rows() * b.cols();
    if (len) r.set_block(0, o, b.reshaped(1, len));
    o += len;
  }
  return r;
}

// ---------------------------------------------------------------- construction

Module projective_module(const AlgebraPtr& a, std::size_t vertex, Side side) {
  a->require_basic("projective module");
  AlgebraPtr A = Module::acting_for(a, side);
  std::size_t r = A->vertex_count();
  if (vertex >= r) throw DimensionMismatch("vertex out of range");
  std::vector<std::size_t> dims(r);
  std::vector<std::map<std::size_t, std::size_t>> pos(r);
  for (std::size_t t = 0; t < r; ++t) {
    const auto& ws = A->words_between(vertex, t);
    dims[t] = ws.size();
    for (std::size_t i = 0; i < ws.size(); ++i) pos[t][ws[i]] = i;
  }
  std::vector<Matrix> gens;
  for (std::size_t g = 0; g < A->generators().size(); ++g) {
    const auto& gen = A->generators()[g];
    Matrix m(A->field(), dims[gen.dst], dims[gen.src]);
    const auto& ws = A->words_between(vertex, gen.src);
    for (std::size_t c = 0; c < ws.size(); ++c)
      for (const auto& t : A->product(A->generator_word(g), ws[c])) m.set(pos[gen.dst].at(t.word), c, t.coef);
    gens.push_back(std::move(m));
  }
  return Module::from_generators(A, side, dims, gens, false);
}

Module regular_module(const AlgebraPtr& a, Side side) {
  AlgebraPtr A = Module::acting_for(a, side);
  std::size_t r = A->vertex_count();
  std::vector<std::size_t> dims(r, 0);
  std::vector<std::map<std::size_t, std::size_t>> pos(r);
  for (std::size_t w = 0; w < A->dim(); ++w) {
    std::size_t t = A->words()[w].dst;
    pos[t][w] = dims[t]++;
  }
  std::vector<Matrix> gens;
  for (std::size_t g = 0; g < A->generators().size(); ++g) {
    const auto& gen = A->generators()[g];
    Matrix m(A->field(), dims[gen.dst], dims[gen.src]);
    for (const auto& [w, c] : pos[gen.src])
      for (const auto& t : A->product(A->generator_word(g), w)) m.set(pos[gen.dst].at(t.word), c, t.coef);
    gens.push_back(std::move(m));
  }
  return Module::from_generators(A, side, dims, gens, false);
}

Module simple_module(const AlgebraPtr& a, std::size_t vertex, Side side) {
  a->require_basic("simple module");
  AlgebraPtr A = Module::acting_for(a, side);
  if (vertex >= A->vertex_count()) throw DimensionMismatch("vertex out of range");
  std::vector<std::size_t> dims(A->vertex_count(), 0);
  dims[vertex] = 1;
  std::vector<Matrix> gens;
  for (const auto& g : A->generators()) gens.push_back(Matrix(A->field(), dims[g.dst], dims[g.src]));
  return Module::from_generators(A, side, dims, gens, false);
}

Module injective_module(const AlgebraPtr& a, std::size_t vertex, Side side) {
  return d_dual(projective_module(a, vertex, flip(side)));
}

DirectSum direct_sum(const std::vector<Module>& parts, const AlgebraPtr& acting, Side side) {
  const Field& k = acting->field();
  std::size_t r = acting->vertex_count();
  for (const auto& p : parts)
    if (p.side() != side || !same_algebra(p.acting(), acting))
      throw SideMismatch("direct sum of modules over different algebras or sides");
  std::vector<std::size_t> dims(r, 0);
  std::vector<std::vector<std::size_t>> off(parts.size(), std::vector<std::size_t>(r));
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t v = 0; v < r; ++v) {
      off[i][v] = dims[v];
      dims[v] += parts[i].dim(v);
    }
  std::vector<Matrix> gens;
  for (std::size_t g = 0; g < acting->generators().size(); ++g) {
    const auto& gen = acting->generators()[g];
    Matrix m(k, dims[gen.dst], dims[gen.src]);
    for (std::size_t i = 0; i < parts.size(); ++i) m.set_block(off[i][gen.dst], off[i][gen.src], parts[i].gen(g));
    gens.push_back(std::move(m));
  }
  DirectSum ds{Module::from_generators(acting, side, dims, gens, false), {}, {}};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<Matrix> inj, proj;
    for (std::size_t v = 0; v < r; ++v) {
      Matrix in(k, dims[v], parts[i].dim(v));
      Matrix pr(k, parts[i].dim(v), dims[v]);
      for (std::size_t c = 0; c < parts[i].dim(v); ++c) {
        in.set(off[i][v] + c, c, Scalar(k, 1));
        pr.set(c, off[i][v] + c, Scalar(k, 1));
      }
      inj.push_back(std::move(in));
      proj.push_back(std::move(pr));
    }
    ds.injections.emplace_back(parts[i], ds.sum, std::move(inj), false);
    ds.projections.emplace_back(ds.sum, parts[i], std::move(proj), false);
  }
  return ds;
}

ModuleMap map_between_sums(const DirectSum& from, const DirectSum& to,
                           const std::vector<std::vector<std::optional<ModuleMap>>>& components) {
  ModuleMap total = ModuleMap::zero(from.sum, to.sum);
  for (std::size_t t = 0; t < components.size(); ++t)
    for (std::size_t s = 0; s < components[t].size(); ++s)
      if (components[t][s]) total = total + to.injections[t] * (*components[t][s]) * from.projections[s];
  return total;
}

// ---------------------------------------------------------------- hom

std::vector<ModuleMap> hom_space(const Module& m, const Module& n) {
  require_same_category(m, n, "hom_space");
  const auto& A = *m.acting();
  const Field& k = m.field();
  std::size_t r = A.vertex_count();
  std::vector<std::size_t> var_off(r + 1, 0);
  for (std::size_t v = 0; v < r; ++v) var_off[v + 1] = var_off[v] + n.dim(v) * m.dim(v);
  std::size_t nvars = var_off[r];
  std::vector<ModuleMap> basis;
  if (nvars == 0) return basis;

  std::size_t neq = 0;
  for (const auto& g : A.generators()) neq += n.dim(g.dst) * m.dim(g.src);
  Matrix sys(k, neq, nvars);
  std::size_t row = 0;
  for (std::size_t g = 0; g < A.generators().size(); ++g) {
    const auto& gen = A.generators()[g];
    std::size_t s = gen.src, t = gen.dst;
    std::size_t rows = n.dim(t) * m.dim(s);
    if (rows == 0) continue;
    // vec(N_g f_s) - vec(f_t M_g)
    Matrix left = kron(n.gen(g), Matrix::identity(k, m.dim(s)));
    Matrix right = kron(Matrix::identity(k, n.dim(t)), m.gen(g).transpose());
    if (s == t) {
      sys.set_block(row, var_off[s], left - right);
    } else {
      if (left.cols()) sys.set_block(row, var_off[s], left);
      if (right.cols()) sys.set_block(row, var_off[t], -right);
    }
    row += rows;
  }
  Matrix kb = kernel_basis(sys);
  basis.reserve(kb.rows());
  for (std::size_t i = 0; i < kb.rows(); ++i) {
    std::vector<Matrix> blocks;
    for (std::size_t v = 0; v < r; ++v) {
      std::size_t len = var_off[v + 1] - var_off[v];
      if (len == 0)
        blocks.push_back(Matrix(k, n.dim(v), m.dim(v)));
      else
        blocks.push_back(kb.block(i, var_off[v], 1, len).reshaped(n.dim(v), m.dim(v)));
    }
    basis.emplace_back(m, n, std::move(blocks), false);
  }
  return basis;
}

std::size_t hom_dim(const Module& m, const Module& n) { return hom_space(m, n).size(); }

std::optional<Matrix> hom_coordinates(const std::vector<ModuleMap>& basis, const ModuleMap& f) {
  Matrix target = f.as_row();
  if (basis.empty()) {
    if (target.is_zero()) return Matrix(f.source().field(), 1, 0);
    return std::nullopt;
  }
  std::vector<Matrix> rows;
  for (const auto& b : basis) rows.push_back(b.as_row());
  Matrix B = vcat(f.source().field(), target.cols(), rows);
  auto x = solve(B.transpose(), target.transpose());
  if (!x) return std::nullopt;
  return x->transpose();
}

ModuleMap combine(const std::vector<ModuleMap>& basis, const Matrix& coeff_row, const Module& source,
                  const Module& target) {
  ModuleMap f = ModuleMap::zero(source, target);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!coeff_row.is_zero_at(0, i)) f = f + basis[i].scaled(coeff_row.at(0, i));
  return f;
}

// ---------------------------------------------------------------- kernels

ModuleWithMap kernel(const ModuleMap& f) {
  const Module& m = f.source();
  std::vector<Matrix> basis;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) basis.push_back(null_space_columns(f.block(v)));
  Module k = restrict_to(m, basis);
  return {k, ModuleMap(k, m, std::move(basis), false)};
}

ModuleWithMap cokernel(const ModuleMap& f) {
  const Module& n = f.target();
  const auto& A = *n.acting();
  const Field& k = n.field();
  std::vector<Matrix> pi, right_inv;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < n.vertex_count(); ++v) {
    Matrix p = left_kernel(f.block(v));
    if (p.rows() == 0) p = Matrix(k, 0, n.dim(v));
    dims.push_back(p.rows());
    auto ri = solve(p, Matrix::identity(k, p.rows()));
    if (!ri) throw InternalInconsistency("cokernel projection lacks a right inverse");
    right_inv.push_back(std::move(*ri));
    pi.push_back(std::move(p));
  }
  std::vector<Matrix> gens;
  for (std::size_t g = 0; g < A.generators().size(); ++g) {
    const auto& gen = A.generators()[g];
    gens.push_back(pi[gen.dst] * n.gen(g) * right_inv[gen.src]);
  }
  Module q = Module::from_generators(n.acting(), n.side(), dims, gens, false);
  return {q, ModuleMap(n, q, std::move(pi), false)};
}

ModuleWithMap image(const ModuleMap& f) {
  const Module& n = f.target();
  std::vector<Matrix> basis;
  for (std::size_t v = 0; v < n.vertex_count(); ++v) basis.push_back(span_of(f.block(v)));
  Module im = restrict_to(n, basis);
  return {im, ModuleMap(im, n, std::move(basis), false)};
}

ModuleMap coimage_map(const ModuleMap& f, const ModuleWithMap& im) {
  auto h = factor_through_mono(f, im.map);
  if (!h) throw InternalInconsistency("map does not factor through its image");
  return *h;
}

ModuleWithMap submodule_generated(const Module& m, const std::vector<Matrix>& columns) {
  const auto& A = *m.acting();
  std::vector<Matrix> span;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) span.push_back(span_of(columns[v]));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t g = 0; g < A.generators().size(); ++g) {
      const auto& gen = A.generators()[g];
      if (span[gen.src].cols() == 0) continue;
      Matrix img = m.gen(g) * span[gen.src];
      Matrix merged = span_of(hstack(span[gen.dst], img));
      if (merged.cols() != span[gen.dst].cols()) {
        span[gen.dst] = std::move(merged);
        changed = true;
      }
    }
  }
  Module s = restrict_to(m, span);
  return {s, ModuleMap(s, m, std::move(span), false)};
}

std::optional<ModuleMap> factor_through_mono(const ModuleMap& g, const ModuleMap& mono) {
  std::vector<Matrix> blocks;
  for (std::size_t v = 0; v < g.source().vertex_count(); ++v) {
    auto x = solve(mono.block(v), g.block(v));
    if (!x) return std::nullopt;
    blocks.push_back(std::move(*x));
  }
  return ModuleMap(g.source(), mono.source(), std::move(blocks), false);
}

std::optional<ModuleMap> factor_through_epi(const ModuleMap& g, const ModuleMap& epi) {
  std::vector<Matrix> blocks;
  for (std::size_t v = 0; v < g.source().vertex_count(); ++v) {
    auto x = solve(epi.block(v).transpose(), g.block(v).transpose());
    if (!x) return std::nullopt;
    blocks.push_back(x->transpose());
  }
  ModuleMap h(epi.target(), g.target(), std::move(blocks), false);
  if (!((h * epi).as_row() == g.as_row())) return std::nullopt;
  return h;
}

// ---------------------------------------------------------------- radical layers

ModuleWithMap radical(const Module& m) {
  m.acting()->require_basic("radical");
  const auto& A = *m.acting();
  std::vector<std::vector<Matrix>> imgs(m.vertex_count());
  for (std::size_t g = 0; g < A.generators().size(); ++g) imgs[A.generators()[g].dst].push_back(m.gen(g));
  std::vector<Matrix> basis;
  for (std::size_t v = 0; v < m.vertex_count(); ++v)
    basis.push_back(span_of(hcat(m.field(), m.dim(v), imgs[v])));
  Module r = restrict_to(m, basis);
  return {r, ModuleMap(r, m, std::move(basis), false)};
}

ModuleWithMap socle(const Module& m) {
  m.acting()->require_basic("socle");
  const auto& A = *m.acting();
  std::vector<std::vector<Matrix>> outs(m.vertex_count());
  for (std::size_t g = 0; g < A.generators().size(); ++g) outs[A.generators()[g].src].push_back(m.gen(g));
  std::vector<Matrix> basis;
  for (std::size_t v = 0; v < m.vertex_count(); ++v)
    basis.push_back(null_space_columns(vcat(m.field(), m.dim(v), outs[v])));
  Module s = restrict_to(m, basis);
  return {s, ModuleMap(s, m, std::move(basis), false)};
}

ModuleWithMap top(const Module& m) { return cokernel(radical(m).map); }

namespace {

// Per vertex, standard basis vectors completing the radical to the whole space.
std::vector<std::pair<std::size_t, Matrix>> top_complement(const Module& m) {
  auto rad = radical(m);
  std::vector<std::pair<std::size_t, Matrix>> chosen;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    Matrix span = rad.map.block(v);
    std::size_t rank = span.cols();
    for (std::size_t c = 0; c < m.dim(v) && rank < m.dim(v); ++c) {
      Matrix e(m.field(), m.dim(v), 1);
      e.set(c, 0, Scalar(m.field(), 1));
      Matrix cand = span.cols() ? hstack(span, e) : e;
      if (cand.rank() == rank) continue;
      span = std::move(cand);
      ++rank;
      chosen.push_back({v, e});
    }
  }
  return chosen;
}

}  // namespace

std::vector<std::size_t> top_vertices(const Module& m) {
  std::vector<std::size_t> r;
  for (const auto& [v, e] : top_complement(m)) r.push_back(v);
  return r;
}

ModuleMap projective_cover(const Module& m) {
  const auto& A = *m.acting();
  auto chosen = top_complement(m);
  AlgebraPtr base = m.base();
  std::vector<Module> parts;
  for (const auto& [v, e] : chosen) parts.push_back(projective_module(base, v, m.side()));
  DirectSum ds = direct_sum(parts, m.acting(), m.side());
  std::vector<Matrix> blocks;
  for (std::size_t t = 0; t < m.vertex_count(); ++t) {
    std::vector<Matrix> cols;
    for (const auto& [v, e] : chosen)
      for (auto w : A.words_between(v, t)) cols.push_back(m.word(w) * e);
    blocks.push_back(hcat(m.field(), m.dim(t), cols));
  }
  ModuleMap cover(ds.sum, m, std::move(blocks), false);
  if (!cover.is_surjective()) throw InternalInconsistency("projective cover is not surjective");
  auto ker = kernel(cover).map;
  auto rad = radical(ds.sum).map;
  if (!factor_through_mono(ker, rad)) throw InternalInconsistency("projective cover is not minimal");
  return cover;
}

ModuleMap injective_envelope(const Module& m) {
  ModuleMap c = projective_cover(d_dual(m));
  ModuleMap dc = d_dual(c);
  return ModuleMap(m, dc.target(), dc.blocks(), false);
}

std::vector<std::size_t> composition_factors(const Module& m) {
  m.acting()->require_basic("composition factors");
  std::vector<std::size_t> f;
  Module cur = m;
  while (!cur.is_zero()) {
    auto rad = radical(cur);
    for (std::size_t v = 0; v < cur.vertex_count(); ++v)
      for (std::size_t i = rad.module.dim(v); i < cur.dim(v); ++i) f.push_back(v);
    if (rad.module.total_dim() == cur.total_dim()) throw InternalInconsistency("radical series stalls");
    cur = rad.module;
  }
  std::sort(f.begin(), f.end());
  return f;
}

// ---------------------------------------------------------------- duality

Module d_dual(const Module& m) {
  std::vector<Matrix> gens;
  for (const auto& g : m.gens()) gens.push_back(g.transpose());
  return Module::from_generators(m.acting()->opposite(), flip(m.side()), m.dims(), gens, false);
}

ModuleMap d_dual(const ModuleMap& f) {
  std::vector<Matrix> blocks;
  for (const auto& b : f.blocks()) blocks.push_back(b.transpose());
  return ModuleMap(d_dual(f.target()), d_dual(f.source()), std::move(blocks), false);
}

// ---------------------------------------------------------------- enumeration

std::vector<ModuleWithMap> enumerate_submodules(const Module& m, const Budget& b) {
  const Field& k = m.field();
  if (!k.is_prime()) throw BudgetExceeded("submodule enumeration needs a finite field");
  std::uint64_t p = k.characteristic();
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < m.total_dim(); ++i) {
    size *= p;
    if (size > b.enumeration)
      throw BudgetExceeded("submodule enumeration: " + std::to_string(p) + "^" +
                           std::to_string(m.total_dim()) + " exceeds budget " +
                           std::to_string(b.enumeration));
  }
  std::size_t r = m.vertex_count();
  using Spans = std::vector<Matrix>;
  auto key_of = [](const Spans& s) {
    std::string key;
    for (const auto& x : s) key += x.key() + "/";
    return key;
  };
  // Cyclic submodules generated by normalised homogeneous vectors.
  std::vector<Spans> cyclic;
  std::set<std::string> cyclic_keys;
  for (std::size_t v = 0; v < r; ++v) {
    std::size_t d = m.dim(v);
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 1; code < count; ++code) {
      Matrix vec(k, d, 1);
      std::uint64_t c = code;
      std::size_t lead = d;
      for (std::size_t i = 0; i < d; ++i) {
        std::uint32_t digit = static_cast<std::uint32_t>(c % p);
        c /= p;
        vec.set_residue(i, 0, digit);
        if (digit && lead == d) lead = i;
      }
      if (vec.residue(lead, 0) != 1) continue;
      std::vector<Matrix> cols;
      for (std::size_t t = 0; t < r; ++t) cols.push_back(Matrix(k, m.dim(t), 0));
      cols[v] = vec;
      auto sub = submodule_generated(m, cols);
      if (cyclic_keys.insert(key_of(sub.map.blocks())).second) cyclic.push_back(sub.map.blocks());
    }
  }
  std::map<std::string, Spans> found;
  Spans zero;
  for (std::size_t t = 0; t < r; ++t) zero.push_back(Matrix(k, m.dim(t), 0));
  found.emplace(key_of(zero), zero);
  std::vector<Spans> queue{zero};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (const auto& c : cyclic) {
      Spans sum;
      for (std::size_t t = 0; t < r; ++t) {
        if (queue[qi][t].cols() == 0)
          sum.push_back(c[t]);
        else if (c[t].cols() == 0)
          sum.push_back(queue[qi][t]);
        else
          sum.push_back(span_of(hstack(queue[qi][t], c[t])));
      }
      auto key = key_of(sum);
      if (found.emplace(key, sum).second) queue.push_back(std::move(sum));
    }
  }
  std::vector<std::pair<std::pair<std::size_t, std::string>, Spans>> sorted;
  for (auto& [key, s] : found) {
    std::size_t d = 0;
    for (const auto& x : s) d += x.cols();
    sorted.push_back({{d, key}, s});
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ModuleWithMap> out;
  for (auto& [key, s] : sorted) {
    Module sub = restrict_to(m, s);
    out.push_back({sub, ModuleMap(sub, m, s, false)});
  }
  return out;
}

// ---------------------------------------------------------------- isomorphism

namespace {

struct CoefficientWalk {
  // Deterministic coefficient sequences: all of F_p^k, or the grid {-2..2}^k.
  std::vector<long> values;
  std::size_t k;
  std::vector<std::size_t> idx;
  bool done = false;
  CoefficientWalk(std::vector<long> vals, std::size_t n) : values(std::move(vals)), k(n), idx(n, 0) {}
  bool next() {
    for (std::size_t i = 0; i < k; ++i) {
      if (++idx[i] < values.size()) return true;
      idx[i] = 0;
    }
    return false;
  }
};

std::vector<long> coefficient_values(const Field& k) {
  if (k.is_rational()) return {0, 1, -1, 2, -2};
  std::vector<long> v;
  for (std::uint32_t i = 0; i < k.characteristic(); ++i) v.push_back(i);
  return v;
}

bool fits(std::uint64_t base, std::size_t exp, std::uint64_t budget) {
  std::uint64_t x = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    x *= base;
    if (x > budget) return false;
  }
  return true;
}

ModuleMap combo(const std::vector<ModuleMap>& basis, const std::vector<long>& coef,
                const Module& s, const Module& t) {
  ModuleMap f = ModuleMap::zero(s, t);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coef[i]) f = f + basis[i].scaled(Scalar(s.field(), coef[i]));
  return f;
}

// Searches the hom space for an element satisfying pred; returns it, or
// nullopt after an exhaustive search; throws Undecided otherwise.
template <class Pred>
std::optional<ModuleMap> search_homs(const std::vector<ModuleMap>& basis, const Module& s,
                                     const Module& t, const Budget& b, Pred pred,
                                     const std::string& what) {
  const Field& k = s.field();
  for (const auto& h : basis)
    if (pred(h)) return h;
  auto values = coefficient_values(k);
  std::size_t n = basis.size();
  std::mt19937 rng(0x5eed);
  for (int trial = 0; trial < 64 && n > 1; ++trial) {
    std::vector<long> c(n);
    for (auto& x : c) x = values[rng() % values.size()];
    ModuleMap f = combo(basis, c, s, t);
    if (pred(f)) return f;
  }
  if (!fits(values.size(), n, b.iso_search))
    throw Undecided(what + ": hom space of dimension " + std::to_string(n) +
                    " exceeds the search budget " + std::to_string(b.iso_search));
  CoefficientWalk walk(values, n);
  while (walk.next()) {
    std::vector<long> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = values[walk.idx[i]];
    ModuleMap f = combo(basis, c, s, t);
    if (pred(f)) return f;
  }
  if (k.is_rational())
    throw Undecided(what + ": coefficient grid {-2..2} exhausted without a decision over Q");
  return std::nullopt;
}

std::vector<std::size_t> layer_dims(const Module& m) {
  std::vector<std::size_t> d;
  if (!m.acting()->is_basic()) return d;
  auto rad = radical(m).module;
  auto soc = socle(m).module;
  d.insert(d.end(), rad.dims().begin(), rad.dims().end());
  d.insert(d.end(), soc.dims().begin(), soc.dims().end());
  return d;
}

}  // namespace

std::optional<ModuleMap> is_isomorphic(const Module& m, const Module& n, const Budget& b) {
  require_same_category(m, n, "is_isomorphic");
  if (m.dims() != n.dims()) return std::nullopt;
  if (m.key() == n.key()) return ModuleMap::identity(m).scaled(Scalar(m.field(), 1));
  if (layer_dims(m) != layer_dims(n)) return std::nullopt;
  auto basis = hom_space(m, n);
  if (basis.empty()) return std::nullopt;
  std::size_t e_m = hom_dim(m, m), e_n = hom_dim(n, n);
  if (e_m != e_n || e_m != basis.size() || hom_dim(n, m) != e_m) return std::nullopt;
  auto f = search_homs(basis, m, n, b, block_invertible, "isomorphism test");
  if (f) return ModuleMap(m, n, f->blocks(), false);
  return std::nullopt;
}

bool is_indecomposable(const Module& m, const Budget& b) {
  if (m.is_zero()) return false;
  auto end = hom_space(m, m);
  if (end.size() == 1) return true;
  const Field& k = m.field();
  std::size_t n = m.total_dim();
  auto fitting_splits = [&](const ModuleMap& f) {
    Matrix x = f.full();
    Matrix p = x;
    for (std::size_t i = 1; i < n; ++i) p = p * x;
    std::size_t r = p.rank();
    return r != 0 && r != n;
  };
  // Locality certificate: every basis element is scalar plus nilpotent and
  // the nilpotent parts span a nilpotent subalgebra.
  std::vector<Matrix> nil;
  bool split_local = true;
  Matrix id = Matrix::identity(k, n);
  for (const auto& h : end) {
    Matrix x = h.full();
    std::vector<Scalar> cands;
    if (k.is_rational() || n % k.characteristic() != 0) {
      Scalar tr(k);
      for (std::size_t i = 0; i < n; ++i) tr = tr + x.at(i, i);
      cands.push_back(tr * Scalar(k, static_cast<long>(n)).inverse());
    } else {
      for (std::uint32_t l = 0; l < k.characteristic(); ++l) cands.push_back(Scalar(k, l));
    }
    bool ok = false;
    for (const auto& lam : cands) {
      Matrix z = x - id.scaled(lam);
      Matrix p = z;
      for (std::size_t i = 1; i < n; ++i) p = p * z;
      if (p.is_zero()) {
        if (!z.is_zero()) nil.push_back(z.reshaped(1, n * n));
        ok = true;
        break;
      }
    }
    if (!ok) {
      split_local = false;
      break;
    }
  }
  if (split_local) {
    auto span_rows = [&](const std::vector<Matrix>& rows) {
      if (rows.empty()) return Matrix(k, 0, n * n);
      Matrix s = vcat(k, n * n, rows);
      auto rr = rref(s);
      return rr.reduced.block(0, 0, rr.rank, n * n);
    };
    Matrix N = span_rows(nil);
    Matrix power = N;
    bool nilpotent = false;
    for (std::size_t step = 0; step <= n + 1; ++step) {
      if (power.rows() == 0) {
        nilpotent = true;
        break;
      }
      std::vector<Matrix> prods;
      for (std::size_t i = 0; i < power.rows(); ++i)
        for (std::size_t j = 0; j < N.rows(); ++j)
          prods.push_back((power.row(i).reshaped(n, n) * N.row(j).reshaped(n, n)).reshaped(1, n * n));
      Matrix next = span_rows(prods);
      if (next.rows() == power.rows() && next.rows() > 0) break;
      power = next;
    }
    if (nilpotent) return true;
  }
  auto f = search_homs(end, m, m, b, fitting_splits, "indecomposability test");
  return !f.has_value();
}

}  // namespace reflexa
