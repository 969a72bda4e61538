#include <doctest.h>
#include <mpfr.h>

#include <memory>
#include <random>
#include <vector>

#include "coxcert/coxeter.hpp"
#include "coxcert/cyclotomic.hpp"
#include "coxcert/errors.hpp"
#include "coxcert/exact_matrix.hpp"
#include "test_util.hpp"

using namespace coxcert;
using testutil::load_system;
using testutil::make_system;

namespace {

std::shared_ptr<const CyclotomicField> F(unsigned n) { return CyclotomicField::get(n); }

AlgebraicReal rat(const std::shared_ptr<const CyclotomicField>& f, long p, long q = 1) {
  mpq_class r(p, q);
  r.canonicalize();
  return f->from_rational(r);
}

AlgebraicReal cosm(const std::shared_ptr<const CyclotomicField>& f, unsigned m) {
  return cos_pi_over(f, CoxOrder::finite(m));
}

// Random real element as a rational combination of products of cos(pi/m).
AlgebraicReal random_element(std::mt19937& rng,
                             const std::shared_ptr<const CyclotomicField>& f) {
  static const unsigned ms[] = {2, 3, 5, 6};
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5), pick(0, 3), coin(0, 1),
      depth(0, 2);
  AlgebraicReal x = rat(f, num(rng), den(rng));
  for (int parts = 0; parts < 3; ++parts) {
    AlgebraicReal term = rat(f, num(rng), den(rng));
    const int d = depth(rng);
    for (int i = 0; i < d; ++i) term = term * cosm(f, ms[pick(rng)]);
    x = coin(rng) ? x + term : x - term;
  }
  return x;
}

}  // namespace

TEST_CASE("cosine values satisfy their defining polynomial relations") {
  auto f = F(120);
  const auto one = f->one();

  CHECK(cos_pi_over(f, CoxOrder::infinity()) == one);
  CHECK(cosm(f, 2).is_zero());

  const auto c3 = cosm(f, 3);
  CHECK(c3.is_rational());
  CHECK(c3 == rat(f, 1, 2));

  const auto c4 = cosm(f, 4);                       // sqrt(2)/2
  CHECK(rat(f, 2) * c4 * c4 == one);
  CHECK(sign_of(c4) == Sign::positive);

  const auto c6 = cosm(f, 6);                       // sqrt(3)/2
  CHECK(rat(f, 4) * c6 * c6 == rat(f, 3));
  CHECK(sign_of(c6) == Sign::positive);
  CHECK(sign_of(c6 - c4) == Sign::positive);

  const auto c5 = cosm(f, 5);                       // (1 + sqrt(5))/4
  CHECK(rat(f, 4) * c5 * c5 - rat(f, 2) * c5 == one);
  CHECK(sign_of(c5 - rat(f, 4, 5)) == Sign::positive);
  CHECK(sign_of(c5 - rat(f, 81, 100)) == Sign::negative);

  CHECK_THROWS_AS(cos_pi_over(f, CoxOrder::one()), InvalidArgument);
  CHECK_THROWS_AS(cos_pi_over(F(12), CoxOrder::finite(5)), InvalidArgument);
}

TEST_CASE("field axioms hold on random real cyclotomic values") {
  auto f = F(60);
  std::mt19937 rng(20240817);
  for (int iter = 0; iter < 40; ++iter) {
    const AlgebraicReal x = random_element(rng, f);
    const AlgebraicReal y = random_element(rng, f);
    const AlgebraicReal z = random_element(rng, f);
    CHECK((x + y) * z == x * z + y * z);
    CHECK(x * y == y * x);
    CHECK((x * y) * z == x * (y * z));
    CHECK((x - x).is_zero());
    CHECK(x.is_conjugation_invariant());
    if (!z.is_zero()) {
      CHECK(z * z.inverse() == f->one());
      CHECK((x / z) * z == x);
    }
  }
}

TEST_CASE("sign_of is total and consistent with arithmetic") {
  auto f = F(60);
  std::mt19937 rng(771);
  for (int iter = 0; iter < 60; ++iter) {
    const AlgebraicReal x = random_element(rng, f);
    const Sign s = sign_of(x);
    CHECK((s == Sign::zero) == x.is_zero());
    if (s == Sign::positive) CHECK(sign_of(-x) == Sign::negative);
    if (s == Sign::negative) CHECK(sign_of(-x) == Sign::positive);
    CHECK(sign_of(x * x) != Sign::negative);
    if (!x.is_zero()) CHECK(sign_of(x * x) == Sign::positive);
  }
}

TEST_CASE("interval evaluations always contain a 512-bit reference value") {
  auto f = F(60);
  std::vector<AlgebraicReal> corpus = {cosm(f, 5), cosm(f, 6), cosm(f, 5) * cosm(f, 6),
                                       rat(f, -7, 3) + cosm(f, 5) - cosm(f, 3)};
  std::mt19937 rng(42);
  for (int i = 0; i < 8; ++i) corpus.push_back(random_element(rng, f));

  mpfr_t ref, term, angle, pi, lo, hi;
  mpfr_inits2(512, ref, term, angle, pi, nullptr);
  mpfr_inits2(1100, lo, hi, nullptr);
  for (const auto& x : corpus) {
    const unsigned n = x.field()->order();
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_zero(ref, 1);
    const auto& coeffs = x.coefficients();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] == 0) continue;
      mpfr_mul_ui(angle, pi, 2 * static_cast<unsigned>(k), MPFR_RNDN);
      mpfr_div_ui(angle, angle, n, MPFR_RNDN);
      mpfr_cos(term, angle, MPFR_RNDN);
      mpfr_mul_q(term, term, coeffs[k].get_mpq_t(), MPFR_RNDN);
      mpfr_add(ref, ref, term, MPFR_RNDN);
    }
    for (unsigned prec : {64u, 128u, 256u, 1024u}) {
      const auto [lo_s, hi_s] = interval_evaluation(x, prec);
      REQUIRE(mpfr_set_str(lo, lo_s.c_str(), 10, MPFR_RNDD) == 0);
      REQUIRE(mpfr_set_str(hi, hi_s.c_str(), 10, MPFR_RNDU) == 0);
      CHECK(mpfr_cmp(lo, ref) <= 0);
      CHECK(mpfr_cmp(hi, ref) >= 0);
    }
  }
  mpfr_clears(ref, term, angle, pi, lo, hi, nullptr);
}

TEST_CASE("H3 Gram matrix: positive definite with determinant (3 - sqrt 5)/8") {
  const auto sys = load_system("h3.cox");
  const auto g = gram_matrix(sys, Subset::full(3));
  const auto f = g.field();
  CHECK(g.is_symmetric());
  CHECK(is_positive_definite(g));
  CHECK(rank(g) == 3);
  CHECK(nullity(g) == 0);
  CHECK(kernel_basis(g).empty());

  const auto det = determinant(g);
  const auto e = rat(f, 8) * det - rat(f, 3);  // equals -sqrt(5)
  CHECK(e * e == rat(f, 5));
  CHECK(sign_of(e) == Sign::negative);
  CHECK(sign_of(det) == Sign::positive);

  const auto minors = leading_principal_minors(g);
  REQUIRE(minors.size() == 3);
  CHECK(minors[0] == f->one());
  CHECK(sign_of(minors[1]) == Sign::positive);
  CHECK(minors[2] == det);
}

TEST_CASE("affine triangle: Gram determinant exactly zero, kernel (1,1,1)") {
  const auto sys = load_system("affine_a2.cox");
  const auto g = gram_matrix(sys, Subset::full(3));
  const auto f = g.field();
  CHECK_FALSE(is_positive_definite(g));
  CHECK(determinant(g).is_zero());
  CHECK(rank(g) == 2);
  CHECK(nullity(g) == 1);
  const auto kernel = kernel_basis(g);
  REQUIRE(kernel.size() == 1);
  REQUIRE(kernel[0].size() == 3);
  CHECK(kernel[0][0] == f->one());
  CHECK(kernel[0][1] == f->one());
  CHECK(kernel[0][2] == f->one());
}

TEST_CASE("affine (4,4)-path: Gram determinant exactly zero, kernel (1, sqrt 2, 1)") {
  const auto sys = load_system("affine_b2.cox");
  const auto g = gram_matrix(sys, Subset::full(3));
  const auto f = g.field();
  CHECK_FALSE(is_positive_definite(g));
  CHECK(determinant(g).is_zero());
  CHECK(nullity(g) == 1);
  const auto kernel = kernel_basis(g);
  REQUIRE(kernel.size() == 1);
  const auto& v = kernel[0];
  CHECK(v[0] == f->one());
  CHECK(v[1] * v[1] == rat(f, 2));
  CHECK(sign_of(v[1]) == Sign::positive);
  CHECK(v[2] == f->one());
}

TEST_CASE("positive definiteness implies zero nullity across fixture subsets") {
  for (const char* name : {"a3.cox", "b3.cox", "h3.cox", "f4.cox", "d4.cox",
                           "affine_a2.cox", "affine_b2.cox", "aug_c.cox"}) {
    const auto sys = load_system(name);
    const auto subsets = enumerate_spherical_subsets(sys);
    for (const auto& t : subsets) {
      const auto g = gram_matrix(sys, t);
      REQUIRE(is_positive_definite(g));
      CHECK(nullity(g) == 0);
    }
  }
}

TEST_CASE("reflection matrices have exact order two and product order m") {
  for (unsigned m : {2u, 3u, 4u, 5u, 6u, 7u}) {
    const auto sys = make_system(2, {m});
    const auto s0 = reflection_matrix(sys, 0);
    const auto s1 = reflection_matrix(sys, 1);
    const auto id = ExactMatrix::identity(s0.field(), 2);
    CHECK(s0 * s0 == id);
    CHECK(s1 * s1 == id);
    ExactMatrix p = s0 * s1;
    ExactMatrix power = p;
    for (unsigned k = 1; k < m; ++k) {
      CHECK_FALSE(power == id);
      power = power * p;
    }
    CHECK(power == id);
  }
}

TEST_CASE("infinite bond: the rotation has infinite order") {
  const auto sys = load_system("dihedral_inf.cox");
  const auto s0 = reflection_matrix(sys, 0);
  const auto s1 = reflection_matrix(sys, 1);
  const auto id = ExactMatrix::identity(s0.field(), 2);
  ExactMatrix power = s0 * s1;
  for (int k = 1; k <= 12; ++k) {
    CHECK_FALSE(power == id);
    power = power * (s0 * s1);
  }
}

TEST_CASE("empty matrix conventions") {
  auto f = F(4);
  const ExactMatrix g = gram_matrix(load_system("rank0.cox"), Subset::full(0));
  CHECK(g.dimension() == 0);
  CHECK(is_positive_definite(g));
  CHECK(determinant(g) == g.field()->one());
  CHECK(nullity(g) == 0);
  CHECK(kernel_basis(g).empty());
  (void)f;
}

TEST_CASE("canonical coefficients reject non-real inputs") {
  auto f = F(12);
  // zeta^1 alone is not fixed by conjugation.
  std::vector<mpq_class> coeffs(f->degree(), 0);
  coeffs[1] = 1;
  CHECK_THROWS_AS(f->from_coefficients(coeffs), InvalidArgument);
  // 2 cos(2 pi / 12) = zeta + zeta^-1 is real and equals sqrt(3).
  const auto z_plus_conj = cosm(f, 6) + cosm(f, 6);
  CHECK(z_plus_conj.is_conjugation_invariant());
  CHECK(z_plus_conj * z_plus_conj == rat(f, 3));
}
