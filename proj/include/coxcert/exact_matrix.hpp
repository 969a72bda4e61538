#pragma once

#include <vector>

#include "coxcert/coxeter.hpp"
#include "coxcert/cyclotomic.hpp"

namespace coxcert {

// Dense square matrix over the real cyclotomic field.  Dimension 0 is legal
// and behaves as the empty matrix (positive definite, determinant 1).
class ExactMatrix {
 public:
  ExactMatrix(std::shared_ptr<const CyclotomicField> field, int dim);  // zero matrix
  static ExactMatrix identity(std::shared_ptr<const CyclotomicField> field, int dim);

  int dimension() const { return dim_; }
  const std::shared_ptr<const CyclotomicField>& field() const { return field_; }
  AlgebraicReal& at(int i, int j);
  const AlgebraicReal& at(int i, int j) const;
  bool is_symmetric() const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

 private:
  std::shared_ptr<const CyclotomicField> field_;
  int dim_ = 0;
  std::vector<AlgebraicReal> cells_;  // row-major
};

// Gram matrix of the canonical bilinear form restricted to t:
// entries B(s,s) = 1 and B(s,t) = -cos(pi/m(s,t)), with -1 on infinite bonds.
ExactMatrix gram_matrix(const CoxeterSystem& sys, const Subset& t);

// All leading principal minors det(A[0..k][0..k]) for k = 0..dim-1.  Each
// minor is computed independently so that zero minors in the middle of the
// sequence are handled; the determinant itself uses fraction-free
// elimination with row pivoting.
std::vector<AlgebraicReal> leading_principal_minors(const ExactMatrix& a);

// Sylvester criterion on a symmetric matrix: true iff every leading
// principal minor is strictly positive.  Throws InvalidArgument when the
// matrix is not symmetric.
bool is_positive_definite(const ExactMatrix& a);

AlgebraicReal determinant(const ExactMatrix& a);
int rank(const ExactMatrix& a);
int nullity(const ExactMatrix& a);

// Basis of the kernel, each vector scaled so its first nonzero coordinate
// is 1, ordered by free column.  Empty when the matrix is invertible.
std::vector<std::vector<AlgebraicReal>> kernel_basis(const ExactMatrix& a);

// Matrix of the reflection in alpha_s under the geometric representation,
// acting on the basis of simple roots: row s is delta(s,t) - 2 B(s,t).
ExactMatrix reflection_matrix(const CoxeterSystem& sys, int s);

}  // namespace coxcert
