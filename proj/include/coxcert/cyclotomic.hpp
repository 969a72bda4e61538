#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "coxcert/coxeter.hpp"

namespace coxcert {

enum class Sign { negative, zero, positive };

class CyclotomicField;

// An element of the real subfield of Q(zeta_N), stored as a canonical
// representative of degree < phi(N) on the power basis of zeta_N.  All
// public constructors preserve invariance under complex conjugation, so a
// value always denotes a real number and has a well-defined sign.
class AlgebraicReal {
 public:
  const std::shared_ptr<const CyclotomicField>& field() const { return field_; }
  const std::vector<mpq_class>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;          // all coefficients beyond the constant are 0
  const mpq_class& rational_value() const;  // requires is_rational()
  bool is_conjugation_invariant() const;

  AlgebraicReal operator-() const;
  AlgebraicReal inverse() const;  // throws InvalidArgument on zero

  friend AlgebraicReal operator+(const AlgebraicReal& a, const AlgebraicReal& b);
  friend AlgebraicReal operator-(const AlgebraicReal& a, const AlgebraicReal& b);
  friend AlgebraicReal operator*(const AlgebraicReal& a, const AlgebraicReal& b);
  friend AlgebraicReal operator/(const AlgebraicReal& a, const AlgebraicReal& b);
  friend bool operator==(const AlgebraicReal& a, const AlgebraicReal& b);
  friend bool operator!=(const AlgebraicReal& a, const AlgebraicReal& b) {
    return !(a == b);
  }

  std::string to_string() const;  // debugging aid: polynomial in z = zeta_N

 private:
  friend class CyclotomicField;
  AlgebraicReal(std::shared_ptr<const CyclotomicField> field,
                std::vector<mpq_class> coeffs);
  std::shared_ptr<const CyclotomicField> field_;
  std::vector<mpq_class> coeffs_;  // size == field->degree()
};

// Q(zeta_N) as a quotient of Q[x] by the N-th cyclotomic polynomial.
// Instances are immutable and shared through a process-wide registry, so
// elements of equal order always agree on their field pointer.
class CyclotomicField : public std::enable_shared_from_this<CyclotomicField> {
 public:
  static std::shared_ptr<const CyclotomicField> get(unsigned n);

  unsigned order() const { return n_; }
  unsigned degree() const { return degree_; }  // phi(N)
  const std::vector<mpz_class>& modulus() const { return phi_; }

  AlgebraicReal zero() const;
  AlgebraicReal one() const;
  AlgebraicReal from_rational(const mpq_class& q) const;
  // Accepts any coefficient vector of size <= degree(); rejects values that
  // are not fixed by conjugation (i.e. not real).
  AlgebraicReal from_coefficients(std::vector<mpq_class> coeffs) const;

  ~CyclotomicField();

  // Coefficient-vector utilities (canonical form modulo the N-th cyclotomic
  // polynomial).  Exposed for the element operations; fields are immutable.
  std::vector<mpq_class> reduce(std::vector<mpq_class> raw) const;
  std::vector<mpq_class> conjugate(const std::vector<mpq_class>& coeffs) const;
  AlgebraicReal make(std::vector<mpq_class> coeffs) const;

 private:
  explicit CyclotomicField(unsigned n);
  friend class AlgebraicReal;
  friend Sign sign_of(const AlgebraicReal& x);
  friend std::pair<std::string, std::string> interval_evaluation(
      const AlgebraicReal& x, unsigned precision);
  friend AlgebraicReal cos_pi_over(const std::shared_ptr<const CyclotomicField>&,
                                   CoxOrder);

  unsigned n_ = 0;
  unsigned degree_ = 0;
  std::vector<mpz_class> phi_;  // monic, degree phi(N), index = power of x
  // zeta^k reduced mod phi for every k below N; powers the multiplication
  // reduction, conjugation, and cos(pi/m) construction.
  std::vector<std::vector<mpq_class>> zeta_power_;

  struct SignContext;  // MPFR enclosure cache, defined in the implementation
  std::unique_ptr<SignContext> sign_context_;
};

// cos(pi/m) as an element of the field.  For infinite m the value is 1, the
// standard convention that makes the bilinear form entry -cos(pi/m) equal
// to -1 on an infinite bond.  Requires 2m | N when m is finite.
AlgebraicReal cos_pi_over(const std::shared_ptr<const CyclotomicField>& field,
                          CoxOrder m);

// Certified sign: exact zero test first, then adaptive interval evaluation
// with directed rounding at 64, 128, ... bits until the interval excludes 0.
Sign sign_of(const AlgebraicReal& x);

// One step of the machinery behind sign_of: the outward-rounded enclosure of
// x at a single working precision, printed with directed rounding (low end
// rounded down, high end up), so the decimal interval still contains x.
std::pair<std::string, std::string> interval_evaluation(const AlgebraicReal& x,
                                                        unsigned precision);

}  // namespace coxcert
