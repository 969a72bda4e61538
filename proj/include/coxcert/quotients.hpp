#pragma once

#include <nlohmann/json.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coxcert/coxeter.hpp"
#include "coxcert/word_engine.hpp"

namespace coxcert {

// Permutation of {0..degree-1}.  The group product is left-to-right
// application: (a * b)(x) = b(a(x)), so the image of a word is the fold of
// its letters' images in word order.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  int apply(int x) const { return images_.at(static_cast<std::size_t>(x)); }
  bool is_identity() const;
  bool is_involution() const;  // p*p = identity (includes the identity)
  Permutation inverse() const;
  const std::vector<int>& images() const { return images_; }

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

  std::string cycle_string() const;  // 1-based cycles, "()" for the identity

 private:
  std::vector<int> images_;
};

// A homomorphism from the Coxeter group onto a permutation group: one
// involution (or identity) per generator, satisfying every finite-order
// relation (pi_s pi_t)^m(s,t) = 1.
struct PermQuotient {
  int degree = 1;
  std::vector<Permutation> images;  // one per generator
  std::uint64_t image_order = 1;    // order of the generated group

  Permutation image_of(const Word& w) const;
  nlohmann::json to_json() const;
};

struct QuotientEvidence {
  enum class Kind { normalizer, centralizer, separation };
  Kind kind = Kind::normalizer;
  PermQuotient quotient;
  std::uint64_t subgroup_image_order = 1;
  std::uint64_t result_order = 1;
  bool tight = false;
  nlohmann::json to_json() const;
};

enum class SearchMode { serial, parallel };

inline constexpr std::uint64_t kQuotientClosureCap = 1000000;

// Deterministic search over involution assignments, degree 1..max_degree,
// assignments in lexicographic order of image tuples (identity first).  The
// all-identity assignment is skipped unless rank = 0.  Every emitted
// quotient has been re-validated by verify_quotient.  The parallel mode
// splits by degree and merges in canonical order, so its output is
// byte-identical to the serial one.
std::vector<PermQuotient> search_quotients(const CoxeterSystem& sys, int max_degree,
                                           std::size_t max_count,
                                           SearchMode mode = SearchMode::serial);

// Independent relation checker: involutivity of every image and exactness
// of every finite (st)-relation.
bool verify_quotient(const CoxeterSystem& sys, const PermQuotient& q);

// First quotient in canonical search order whose image of w is a
// non-identity permutation; nullopt when no quotient within the degree
// bound separates w.  Throws InvalidArgument when w is the identity.
std::optional<PermQuotient> separate_element(const CoxeterSystem& sys, const Word& w,
                                             int max_degree);

// Order of the normalizer of the image of W_T inside the image group, by
// direct enumeration; tight when the normalizer is no larger than the image
// of W_T itself.  Advisory: a loose quotient never refutes anything.
QuotientEvidence normalizer_evidence(const CoxeterSystem& sys, const Subset& t,
                                     const PermQuotient& q);

// Order of the centralizer of the image of W_T in the image group; tight
// when it equals the center of the image of W_T.
QuotientEvidence centralizer_evidence(const CoxeterSystem& sys, const Subset& t,
                                      const PermQuotient& q);

}  // namespace coxcert
