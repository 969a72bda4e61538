#include "coxcert/exact_matrix.hpp"

#include <utility>

#include "coxcert/errors.hpp"

namespace coxcert {

ExactMatrix::ExactMatrix(std::shared_ptr<const CyclotomicField> field, int dim)
    : field_(std::move(field)), dim_(dim) {
  if (dim_ < 0) throw InvalidArgument("negative matrix dimension");
  cells_.assign(static_cast<std::size_t>(dim_) * dim_, field_->zero());
}

ExactMatrix ExactMatrix::identity(std::shared_ptr<const CyclotomicField> field, int dim) {
  ExactMatrix m(std::move(field), dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = m.field_->one();
  return m;
}

AlgebraicReal& ExactMatrix::at(int i, int j) {
  if (i < 0 || i >= dim_ || j < 0 || j >= dim_)
    throw InvalidArgument("matrix index out of range");
  return cells_[static_cast<std::size_t>(i) * dim_ + j];
}

const AlgebraicReal& ExactMatrix::at(int i, int j) const {
  if (i < 0 || i >= dim_ || j < 0 || j >= dim_)
    throw InvalidArgument("matrix index out of range");
  return cells_[static_cast<std::size_t>(i) * dim_ + j];
}

bool ExactMatrix::is_symmetric() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      if (!(at(i, j) == at(j, i))) return false;
  return true;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.field_ != b.field_ || a.dim_ != b.dim_)
    throw InvalidArgument("matrix product shape or field mismatch");
  ExactMatrix out(a.field_, a.dim_);
  for (int i = 0; i < a.dim_; ++i)
    for (int k = 0; k < a.dim_; ++k) {
      const AlgebraicReal& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < a.dim_; ++j) {
        if (b.at(k, j).is_zero()) continue;
        out.at(i, j) = out.at(i, j) + aik * b.at(k, j);
      }
    }
  return out;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.field_ != b.field_ || a.dim_ != b.dim_) return false;
  for (std::size_t i = 0; i < a.cells_.size(); ++i)
    if (!(a.cells_[i] == b.cells_[i])) return false;
  return true;
}

ExactMatrix gram_matrix(const CoxeterSystem& sys, const Subset& t) {
  t.validate(sys.rank());
  auto field = CyclotomicField::get(sys.cyclotomic_order());
  const auto& members = t.members();
  const int k = t.size();
  ExactMatrix g(field, k);
  for (int i = 0; i < k; ++i) {
    g.at(i, i) = field->one();
    for (int j = i + 1; j < k; ++j) {
      AlgebraicReal b = -cos_pi_over(field, sys.order(members[i], members[j]));
      g.at(i, j) = b;
      g.at(j, i) = std::move(b);
    }
  }
  return g;
}

ExactMatrix reflection_matrix(const CoxeterSystem& sys, int s) {
  if (s < 0 || s >= sys.rank()) throw InvalidArgument("generator index out of range");
  auto field = CyclotomicField::get(sys.cyclotomic_order());
  ExactMatrix m = ExactMatrix::identity(field, sys.rank());
  // row s: sigma_s(alpha_t) = alpha_t - 2 B(s,t) alpha_s, and B(s,s) = 1
  m.at(s, s) = -field->one();
  for (int t = 0; t < sys.rank(); ++t) {
    if (t == s) continue;
    AlgebraicReal b = -cos_pi_over(field, sys.order(s, t));
    m.at(s, t) = -(b + b);
  }
  return m;
}

/*
 * Fraction-free elimination.  A single Bareiss sweep keeps every
 * intermediate entry equal to a minor of the input, and in particular the
 * successive pivots are exactly the leading principal minors; that is what
 * the definiteness test consumes.  Determinant and rank add row pivoting.
 */

bool is_positive_definite(const ExactMatrix& a) {
  if (!a.is_symmetric()) throw InvalidArgument("definiteness test requires symmetry");
  const int n = a.dimension();
  if (n == 0) return true;
  ExactMatrix w = a;
  AlgebraicReal prev = a.field()->one();
  for (int k = 0; k < n; ++k) {
    const AlgebraicReal pivot = w.at(k, k);  // the (k+1)-st leading minor
    if (sign_of(pivot) != Sign::positive) return false;
    if (k == n - 1) break;
    const AlgebraicReal scale = prev.inverse();
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * pivot - w.at(i, k) * w.at(k, j)) * scale;
    prev = pivot;
  }
  return true;
}

AlgebraicReal determinant(const ExactMatrix& a) {
  const int n = a.dimension();
  if (n == 0) return a.field()->one();
  ExactMatrix w = a;
  AlgebraicReal prev = a.field()->one();
  bool negate = false;
  for (int k = 0; k + 1 < n; ++k) {
    if (w.at(k, k).is_zero()) {
      int r = -1;
      for (int i = k + 1; i < n; ++i)
        if (!w.at(i, k).is_zero()) { r = i; break; }
      if (r < 0) return a.field()->zero();
      for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(r, j));
      negate = !negate;
    }
    const AlgebraicReal pivot = w.at(k, k);
    const AlgebraicReal scale = prev.inverse();
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * pivot - w.at(i, k) * w.at(k, j)) * scale;
    prev = pivot;
  }
  return negate ? -w.at(n - 1, n - 1) : w.at(n - 1, n - 1);
}

std::vector<AlgebraicReal> leading_principal_minors(const ExactMatrix& a) {
  std::vector<AlgebraicReal> out;
  for (int k = 1; k <= a.dimension(); ++k) {
    ExactMatrix sub(a.field(), k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub.at(i, j) = a.at(i, j);
    out.push_back(determinant(sub));
  }
  return out;
}

namespace {

// Row echelon form (scaled, fraction-free updates) with row swaps and
// column skipping.  Returns the pivot (row, column) pairs; w is left in
// echelon form.
std::vector<std::pair<int, int>> echelonize(ExactMatrix& w) {
  const int n = w.dimension();
  std::vector<std::pair<int, int>> pivots;
  AlgebraicReal prev = w.field()->one();
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int r = -1;
    for (int i = row; i < n; ++i)
      if (!w.at(i, col).is_zero()) { r = i; break; }
    if (r < 0) continue;
    if (r != row)
      for (int j = 0; j < n; ++j) std::swap(w.at(row, j), w.at(r, j));
    const AlgebraicReal pivot = w.at(row, col);
    const AlgebraicReal scale = prev.inverse();
    for (int i = row + 1; i < n; ++i) {
      for (int j = col + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * pivot - w.at(i, col) * w.at(row, j)) * scale;
      w.at(i, col) = w.field()->zero();
    }
    prev = pivot;
    pivots.emplace_back(row, col);
    ++row;
  }
  return pivots;
}

}  // namespace

int rank(const ExactMatrix& a) {
  ExactMatrix w = a;
  return static_cast<int>(echelonize(w).size());
}

int nullity(const ExactMatrix& a) { return a.dimension() - rank(a); }

std::vector<std::vector<AlgebraicReal>> kernel_basis(const ExactMatrix& a) {
  const int n = a.dimension();
  ExactMatrix w = a;
  const auto pivots = echelonize(w);
  std::vector<bool> is_pivot_col(n, false);
  for (auto [r, c] : pivots) is_pivot_col[static_cast<std::size_t>(c)] = true;

  std::vector<std::vector<AlgebraicReal>> basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot_col[static_cast<std::size_t>(free)]) continue;
    std::vector<AlgebraicReal> v(static_cast<std::size_t>(n), a.field()->zero());
    v[static_cast<std::size_t>(free)] = a.field()->one();
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      auto [r, c] = *it;
      if (c > free) continue;  // v is zero beyond position free
      AlgebraicReal sum = a.field()->zero();
      for (int j = c + 1; j <= free; ++j)
        if (!v[static_cast<std::size_t>(j)].is_zero())
          sum = sum + w.at(r, j) * v[static_cast<std::size_t>(j)];
      v[static_cast<std::size_t>(c)] = -(sum / w.at(r, c));
    }
    // normalize: first nonzero coordinate becomes 1
    for (int i = 0; i < n; ++i) {
      if (v[static_cast<std::size_t>(i)].is_zero()) continue;
      const AlgebraicReal inv = v[static_cast<std::size_t>(i)].inverse();
      for (int j = i; j < n; ++j)
        v[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j)] * inv;
      break;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace coxcert
