#include "coxcert/cyclotomic.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <sstream>

#include "coxcert/errors.hpp"

namespace coxcert {

namespace {

/*
 * Integer polynomial helpers for building the cyclotomic modulus.
 * Polynomials are coefficient vectors, index = power, no trailing zeros.
 */

using ZPoly = std::vector<mpz_class>;

ZPoly x_pow_minus_one(unsigned d) {
  ZPoly p(d + 1, 0);
  p[0] = -1;
  p[d] = 1;
  return p;
}

void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division by a monic divisor; throws on nonzero remainder.
ZPoly divide_exact(ZPoly num, const ZPoly& den) {
  if (den.empty() || den.back() != 1)
    throw ConsistencyFault("cyclotomic division by a non-monic polynomial");
  if (num.size() < den.size())
    throw ConsistencyFault("cyclotomic division underflow");
  ZPoly quot(num.size() - den.size() + 1, 0);
  for (std::size_t i = quot.size(); i-- > 0;) {
    mpz_class c = num[i + den.size() - 1];
    quot[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  trim(num);
  if (!num.empty()) throw ConsistencyFault("cyclotomic division left a remainder");
  return quot;
}

std::vector<unsigned> divisors_of(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

ZPoly cyclotomic_polynomial(unsigned n) {
  std::map<unsigned, ZPoly> memo;
  for (unsigned d : divisors_of(n)) {
    ZPoly num = x_pow_minus_one(d);
    for (unsigned e : divisors_of(d))
      if (e != d) num = divide_exact(std::move(num), memo.at(e));
    memo[d] = std::move(num);
  }
  return memo.at(n);
}

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

/*
 * Minimal RAII wrapper over mpfr_t so enclosures can live in containers.
 */

class MpfrFloat {
 public:
  explicit MpfrFloat(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
  MpfrFloat(MpfrFloat&& o) noexcept {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_swap(x_, o.x_);
  }
  MpfrFloat(const MpfrFloat&) = delete;
  MpfrFloat& operator=(const MpfrFloat&) = delete;
  MpfrFloat& operator=(MpfrFloat&&) = delete;
  ~MpfrFloat() { mpfr_clear(x_); }
  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }

 private:
  mpfr_t x_;
};

struct Enclosure {
  MpfrFloat lo, hi;
  Enclosure(mpfr_prec_t prec) : lo(prec), hi(prec) {}
};

}  // namespace

struct CyclotomicField::SignContext {
  std::mutex mutex;
  // precision -> enclosure of cos(2 pi k / N) for k = 0 .. degree-1
  std::map<mpfr_prec_t, std::vector<Enclosure>> cos_cache;
};

/*
 * Field construction
 */

namespace {
std::mutex g_registry_mutex;
std::map<unsigned, std::shared_ptr<const CyclotomicField>>& registry() {
  static std::map<unsigned, std::shared_ptr<const CyclotomicField>> r;
  return r;
}
}  // namespace

std::shared_ptr<const CyclotomicField> CyclotomicField::get(unsigned n) {
  if (n == 0) throw InvalidArgument("cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(g_registry_mutex);
  auto& reg = registry();
  auto it = reg.find(n);
  if (it != reg.end()) return it->second;
  auto field = std::shared_ptr<const CyclotomicField>(new CyclotomicField(n));
  reg.emplace(n, field);
  return field;
}

CyclotomicField::CyclotomicField(unsigned n)
    : n_(n), degree_(euler_phi(n)), sign_context_(std::make_unique<SignContext>()) {
  ZPoly phi = cyclotomic_polynomial(n);
  if (phi.size() != degree_ + 1 || phi.back() != 1)
    throw ConsistencyFault("cyclotomic polynomial has unexpected degree");
  phi_ = std::move(phi);

  // Powers of zeta reduced mod phi, for all exponents below N.  Used for
  // reduction after multiplication and for conjugation.
  zeta_power_.reserve(n_);
  for (unsigned k = 0; k < std::min(n_, degree_); ++k) {
    std::vector<mpq_class> unit(degree_, 0);
    unit[k] = 1;
    zeta_power_.push_back(std::move(unit));
  }
  std::vector<mpq_class> top(degree_, 0);  // x^degree = -(phi - x^degree)
  for (unsigned i = 0; i < degree_; ++i) top[i] = mpq_class(-phi_[i]);
  if (n_ > degree_) zeta_power_.push_back(top);
  for (unsigned k = degree_ + 1; k < n_; ++k) {
    const auto& prev = zeta_power_.back();
    std::vector<mpq_class> next(degree_, 0);
    for (unsigned i = 0; i + 1 < degree_; ++i) next[i + 1] = prev[i];
    const mpq_class& carry = prev[degree_ - 1];
    if (carry != 0)
      for (unsigned i = 0; i < degree_; ++i)
        next[i] += carry * zeta_power_[degree_][i];
    zeta_power_.push_back(std::move(next));
  }
}

CyclotomicField::~CyclotomicField() = default;

std::vector<mpq_class> CyclotomicField::reduce(std::vector<mpq_class> raw) const {
  std::vector<mpq_class> out(degree_, 0);
  for (std::size_t d = 0; d < raw.size(); ++d) {
    if (raw[d] == 0) continue;
    if (d < degree_) {
      out[d] += raw[d];
      continue;
    }
    const auto& pw = zeta_power_[d % n_];
    for (unsigned i = 0; i < degree_; ++i)
      if (pw[i] != 0) out[i] += raw[d] * pw[i];
  }
  return out;
}

std::vector<mpq_class> CyclotomicField::conjugate(
    const std::vector<mpq_class>& coeffs) const {
  std::vector<mpq_class> out(degree_, 0);
  for (unsigned j = 0; j < degree_; ++j) {
    if (coeffs[j] == 0) continue;
    const auto& pw = zeta_power_[(n_ - j) % n_];
    for (unsigned i = 0; i < degree_; ++i)
      if (pw[i] != 0) out[i] += coeffs[j] * pw[i];
  }
  return out;
}

AlgebraicReal CyclotomicField::make(std::vector<mpq_class> coeffs) const {
  return AlgebraicReal(shared_from_this(), std::move(coeffs));
}

AlgebraicReal CyclotomicField::zero() const {
  return make(std::vector<mpq_class>(degree_, 0));
}

AlgebraicReal CyclotomicField::one() const { return from_rational(1); }

AlgebraicReal CyclotomicField::from_rational(const mpq_class& q) const {
  std::vector<mpq_class> coeffs(degree_, 0);
  coeffs[0] = q;
  return make(std::move(coeffs));
}

AlgebraicReal CyclotomicField::from_coefficients(std::vector<mpq_class> coeffs) const {
  std::vector<mpq_class> reduced = reduce(std::move(coeffs));
  if (conjugate(reduced) != reduced)
    throw InvalidArgument("coefficient vector is not fixed by conjugation (not real)");
  return make(std::move(reduced));
}

/*
 * Elements
 */

AlgebraicReal::AlgebraicReal(std::shared_ptr<const CyclotomicField> field,
                             std::vector<mpq_class> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  assert(coeffs_.size() == field_->degree());
}

bool AlgebraicReal::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const mpq_class& c) { return c == 0; });
}

bool AlgebraicReal::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

const mpq_class& AlgebraicReal::rational_value() const {
  if (!is_rational()) throw InvalidArgument("value is not rational");
  return coeffs_[0];
}

bool AlgebraicReal::is_conjugation_invariant() const {
  return field_->conjugate(coeffs_) == coeffs_;
}

namespace {
void require_same_field(const AlgebraicReal& a, const AlgebraicReal& b) {
  if (a.field() != b.field())
    throw InvalidArgument("mixed cyclotomic fields in arithmetic");
}
}  // namespace

AlgebraicReal operator+(const AlgebraicReal& a, const AlgebraicReal& b) {
  require_same_field(a, b);
  std::vector<mpq_class> out = a.coeffs_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.coeffs_[i];
  return AlgebraicReal(a.field_, std::move(out));
}

AlgebraicReal operator-(const AlgebraicReal& a, const AlgebraicReal& b) {
  require_same_field(a, b);
  std::vector<mpq_class> out = a.coeffs_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.coeffs_[i];
  return AlgebraicReal(a.field_, std::move(out));
}

AlgebraicReal AlgebraicReal::operator-() const {
  std::vector<mpq_class> out = coeffs_;
  for (auto& c : out) c = -c;
  return AlgebraicReal(field_, std::move(out));
}

AlgebraicReal operator*(const AlgebraicReal& a, const AlgebraicReal& b) {
  require_same_field(a, b);
  const unsigned deg = a.field_->degree();
  std::vector<mpq_class> prod(2 * deg - 1, 0);
  for (unsigned i = 0; i < deg; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (unsigned j = 0; j < deg; ++j) {
      if (b.coeffs_[j] == 0) continue;
      prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return AlgebraicReal(a.field_, a.field_->reduce(std::move(prod)));
}

AlgebraicReal AlgebraicReal::inverse() const {
  if (is_zero()) throw InvalidArgument("inverse of zero");
  if (is_rational()) {
    std::vector<mpq_class> out(field_->degree(), 0);
    out[0] = 1 / coeffs_[0];
    return AlgebraicReal(field_, std::move(out));
  }
  // Extended Euclid in Q[x] against the (irreducible) modulus: returns u
  // with u * this == 1 mod phi.
  using QPoly = std::vector<mpq_class>;
  auto trimq = [](QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  auto is_zerop = [](const QPoly& p) { return p.empty(); };

  QPoly r0;  // modulus
  for (const auto& c : field_->modulus()) r0.push_back(mpq_class(c));
  QPoly r1 = coeffs_;
  trimq(r1);
  QPoly t0, t1 = {1};

  while (!is_zerop(r1)) {
    // quotient and remainder of r0 / r1
    QPoly rem = r0;
    const std::size_t dn = r1.size() - 1;
    const mpq_class& lead = r1.back();
    QPoly q(rem.size() >= r1.size() ? rem.size() - dn : 0, 0);
    for (std::size_t i = rem.size(); i-- > dn;) {
      mpq_class c = rem[i] / lead;
      if (c == 0) continue;
      q[i - dn] = c;
      for (std::size_t j = 0; j < r1.size(); ++j) rem[i - dn + j] -= c * r1[j];
    }
    trimq(rem);
    // t2 = t0 - q * t1
    QPoly t2 = t0;
    if (!q.empty() && !t1.empty()) {
      t2.resize(std::max(t2.size(), q.size() + t1.size() - 1), 0);
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0) continue;
        for (std::size_t j = 0; j < t1.size(); ++j) t2[i + j] -= q[i] * t1[j];
      }
    }
    trimq(t2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 is now the gcd; the modulus is irreducible so r0 is a nonzero constant.
  if (r0.size() != 1 || r0[0] == 0)
    throw ConsistencyFault("gcd with the cyclotomic modulus is not a unit");
  for (auto& c : t0) c /= r0[0];
  return AlgebraicReal(field_, field_->reduce(std::move(t0)));
}

AlgebraicReal operator/(const AlgebraicReal& a, const AlgebraicReal& b) {
  return a * b.inverse();
}

bool operator==(const AlgebraicReal& a, const AlgebraicReal& b) {
  require_same_field(a, b);
  return a.coeffs_ == b.coeffs_;
}

std::string AlgebraicReal::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) out << " + ";
    out << coeffs_[i].get_str();
    if (i > 0) out << "*z^" << i;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

/*
 * cos(pi/m) and certified signs
 */

AlgebraicReal cos_pi_over(const std::shared_ptr<const CyclotomicField>& field,
                          CoxOrder m) {
  if (m.is_infinite()) return field->one();
  const unsigned n = field->order();
  const unsigned mm = m.value();
  if (mm < 2)
    throw InvalidArgument("cos(pi/m) requires m >= 2; the diagonal is handled separately");
  if (n % (2 * mm) != 0)
    throw InvalidArgument("field of order " + std::to_string(n) +
                          " does not contain cos(pi/" + std::to_string(mm) + ")");
  const unsigned k = n / (2 * mm);
  std::vector<mpq_class> coeffs(field->degree(), 0);
  const auto& a = field->zeta_power_[k % n];
  const auto& b = field->zeta_power_[(n - k) % n];
  for (unsigned i = 0; i < field->degree(); ++i) coeffs[i] = (a[i] + b[i]) / 2;
  AlgebraicReal out = field->make(std::move(coeffs));
  assert(out.is_conjugation_invariant());
  return out;
}

namespace {

// Enclosure of cos over [lo_angle, hi_angle] via endpoint values widened by
// the interval width (cos is 1-Lipschitz), clamped to [-1, 1].
void cos_over_interval(Enclosure& out, mpfr_srcptr lo_angle, mpfr_srcptr hi_angle,
                       mpfr_prec_t prec) {
  MpfrFloat ca(prec), cb(prec), width(prec);
  mpfr_sub(width.get(), hi_angle, lo_angle, MPFR_RNDU);

  mpfr_cos(ca.get(), lo_angle, MPFR_RNDD);
  mpfr_cos(cb.get(), hi_angle, MPFR_RNDD);
  mpfr_min(out.lo.get(), ca.get(), cb.get(), MPFR_RNDD);
  mpfr_sub(out.lo.get(), out.lo.get(), width.get(), MPFR_RNDD);
  if (mpfr_cmp_si(out.lo.get(), -1) < 0) mpfr_set_si(out.lo.get(), -1, MPFR_RNDD);

  mpfr_cos(ca.get(), lo_angle, MPFR_RNDU);
  mpfr_cos(cb.get(), hi_angle, MPFR_RNDU);
  mpfr_max(out.hi.get(), ca.get(), cb.get(), MPFR_RNDU);
  mpfr_add(out.hi.get(), out.hi.get(), width.get(), MPFR_RNDU);
  if (mpfr_cmp_si(out.hi.get(), 1) > 0) mpfr_set_si(out.hi.get(), 1, MPFR_RNDU);
}

// Fetch (or build once, under the lock) the enclosures of cos(2 pi k/N) at
// one precision.  Built tables are immutable, so reading the returned
// reference outside the lock is safe.
const std::vector<Enclosure>& cos_table(
    std::mutex& mutex, std::map<mpfr_prec_t, std::vector<Enclosure>>& cache,
    unsigned n, unsigned degree, mpfr_prec_t p) {
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(p);
  if (it == cache.end()) {
    std::vector<Enclosure> table;
    table.reserve(degree);
    MpfrFloat pi_lo(p), pi_hi(p), angle_lo(p), angle_hi(p);
    mpfr_const_pi(pi_lo.get(), MPFR_RNDD);
    mpfr_const_pi(pi_hi.get(), MPFR_RNDU);
    for (unsigned k = 0; k < degree; ++k) {
      Enclosure e(p);
      if (k == 0) {
        mpfr_set_si(e.lo.get(), 1, MPFR_RNDD);
        mpfr_set_si(e.hi.get(), 1, MPFR_RNDU);
      } else {
        mpfr_mul_ui(angle_lo.get(), pi_lo.get(), 2 * k, MPFR_RNDD);
        mpfr_div_ui(angle_lo.get(), angle_lo.get(), n, MPFR_RNDD);
        mpfr_mul_ui(angle_hi.get(), pi_hi.get(), 2 * k, MPFR_RNDU);
        mpfr_div_ui(angle_hi.get(), angle_hi.get(), n, MPFR_RNDU);
        cos_over_interval(e, angle_lo.get(), angle_hi.get(), p);
      }
      table.push_back(std::move(e));
    }
    it = cache.emplace(p, std::move(table)).first;
  }
  return it->second;
}

// Outward-rounded sum of coeffs[k] * cos(2 pi k / N) by interval products.
Enclosure sum_enclosure(const std::vector<mpq_class>& coeffs,
                        const std::vector<Enclosure>& cosv, unsigned degree,
                        mpfr_prec_t p) {
  Enclosure acc(p);
  MpfrFloat a_lo(p), a_hi(p), t(p), best(p);
  mpfr_set_zero(acc.lo.get(), 1);
  mpfr_set_zero(acc.hi.get(), 1);
  for (unsigned k = 0; k < degree; ++k) {
    if (coeffs[k] == 0) continue;
    mpfr_set_q(a_lo.get(), coeffs[k].get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(a_hi.get(), coeffs[k].get_mpq_t(), MPFR_RNDU);
    const Enclosure& c = cosv[k];
    // lower bound of a*c over the interval product
    mpfr_mul(best.get(), a_lo.get(), c.lo.get(), MPFR_RNDD);
    mpfr_mul(t.get(), a_lo.get(), c.hi.get(), MPFR_RNDD);
    mpfr_min(best.get(), best.get(), t.get(), MPFR_RNDD);
    mpfr_mul(t.get(), a_hi.get(), c.lo.get(), MPFR_RNDD);
    mpfr_min(best.get(), best.get(), t.get(), MPFR_RNDD);
    mpfr_mul(t.get(), a_hi.get(), c.hi.get(), MPFR_RNDD);
    mpfr_min(best.get(), best.get(), t.get(), MPFR_RNDD);
    mpfr_add(acc.lo.get(), acc.lo.get(), best.get(), MPFR_RNDD);
    // upper bound
    mpfr_mul(best.get(), a_lo.get(), c.lo.get(), MPFR_RNDU);
    mpfr_mul(t.get(), a_lo.get(), c.hi.get(), MPFR_RNDU);
    mpfr_max(best.get(), best.get(), t.get(), MPFR_RNDU);
    mpfr_mul(t.get(), a_hi.get(), c.lo.get(), MPFR_RNDU);
    mpfr_max(best.get(), best.get(), t.get(), MPFR_RNDU);
    mpfr_mul(t.get(), a_hi.get(), c.hi.get(), MPFR_RNDU);
    mpfr_max(best.get(), best.get(), t.get(), MPFR_RNDU);
    mpfr_add(acc.hi.get(), acc.hi.get(), best.get(), MPFR_RNDU);
  }
  return acc;
}

}  // namespace

Sign sign_of(const AlgebraicReal& x) {
  if (x.is_zero()) return Sign::zero;
  if (x.is_rational()) {
    int s = sgn(x.rational_value());
    return s > 0 ? Sign::positive : Sign::negative;
  }
  assert(x.is_conjugation_invariant());
  const CyclotomicField& field = *x.field();
  const auto& coeffs = x.coefficients();

  for (long prec = 64; prec <= (1L << 20); prec *= 2) {
    const mpfr_prec_t p = static_cast<mpfr_prec_t>(prec);
    const auto& cosv = cos_table(field.sign_context_->mutex,
                                 field.sign_context_->cos_cache, field.n_,
                                 field.degree_, p);
    const Enclosure acc = sum_enclosure(coeffs, cosv, field.degree_, p);
    if (mpfr_sgn(acc.lo.get()) > 0) return Sign::positive;
    if (mpfr_sgn(acc.hi.get()) < 0) return Sign::negative;
  }
  // A nonzero algebraic number always separates from zero at some precision.
  throw ConsistencyFault("interval sign determination failed to converge");
}

std::pair<std::string, std::string> interval_evaluation(const AlgebraicReal& x,
                                                        unsigned precision) {
  if (precision < 8 || precision > (1u << 20))
    throw InvalidArgument("interval evaluation precision out of range");
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(precision);
  const CyclotomicField& field = *x.field();
  const auto& cosv = cos_table(field.sign_context_->mutex,
                               field.sign_context_->cos_cache, field.n_,
                               field.degree_, p);
  const Enclosure acc = sum_enclosure(x.coefficients(), cosv, field.degree_, p);
  char* lo_s = nullptr;
  char* hi_s = nullptr;
  mpfr_asprintf(&lo_s, "%.64RDe", acc.lo.get());
  mpfr_asprintf(&hi_s, "%.64RUe", acc.hi.get());
  std::pair<std::string, std::string> out{lo_s, hi_s};
  mpfr_free_str(lo_s);
  mpfr_free_str(hi_s);
  return out;
}

}  // namespace coxcert
