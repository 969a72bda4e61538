#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "coxcert/coxeter.hpp"
#include "coxcert/word_engine.hpp"

namespace coxcert {

// The seven certified conditions, in dependency order.
enum class Condition {
  spherical,
  maximality,
  unique_fixed_point,
  self_normalized,
  bp1,
  bp2,
  bp3,
};

std::string_view condition_name(Condition c);                // "SPHERICAL", ...
Condition condition_from_name(std::string_view name);        // throws ParseError

enum class Justification { computed, theorem_cited };

std::string_view justification_name(Justification j);
Justification justification_from_name(std::string_view name);  // throws ParseError

// Citation anchors.  Verification is closed-world over exactly this list,
// so the strings are part of the certificate format (schema_version "1").
namespace citations {
inline constexpr std::string_view kUniqueFixedPoint =
    "davis-complex-cell-unique-fixed-point";
inline constexpr std::string_view kSelfNormalized =
    "maximal-elliptic-lemma-self-normalized";
inline constexpr std::string_view kFinitelyManyClasses =
    "cocompact-action-finitely-many-maximal-classes";
inline constexpr std::string_view kFiniteOut = "finite-group-has-finite-out";
}  // namespace citations

const std::vector<std::string>& citation_whitelist();

// Outcome of one condition check.  A passing computed check always carries
// evidence; a theorem_cited check always carries a whitelisted citation.
struct CheckResult {
  Condition condition = Condition::spherical;
  bool passed = false;
  Justification justification = Justification::computed;
  std::string citation;     // empty when no theorem carries the step
  nlohmann::json evidence;  // condition-specific payload

  nlohmann::json to_json() const;
  static CheckResult from_json(const nlohmann::json& j);
  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

// Certificate that W_witness is a subgroup along which the automorphism
// group splits off its inner part, or a record of where that fails.  A
// rejected certificate stops at its first failing check and keeps it.
struct BPCertificate {
  std::string system_fingerprint;
  std::vector<int> witness;  // generator indices, strictly increasing
  std::vector<CheckResult> checks;
  bool certified = false;

  nlohmann::json to_json() const;  // canonical form; byte-stable per schema
  static BPCertificate from_json(const nlohmann::json& j);
  friend bool operator==(const BPCertificate&, const BPCertificate&) = default;
};

struct VerifyResult {
  enum class Failure { none, fingerprint_mismatch, unknown_citation, verdict_mismatch };

  bool ok = false;
  Failure failure = Failure::none;
  std::string detail;
};

std::string_view verify_failure_name(VerifyResult::Failure f);

struct CertifyOptions {
  // Attach advisory finite-quotient normalizer evidence to SELF_NORMALIZED
  // when a tight quotient exists within the degree bound.  Never affects
  // the verdict, and verification ignores it.
  bool attach_quotient_evidence = false;
  int quotient_max_degree = 4;
};

// Runs the condition checks for one Coxeter system.  Enumerates the
// spherical subsets once at construction (rank cap applies); the check
// methods are const and safe to call concurrently.
class Certifier {
 public:
  explicit Certifier(CoxeterSystem sys);

  const CoxeterSystem& system() const { return engine_.system(); }
  const WordEngine& engine() const { return engine_; }
  const std::vector<Subset>& spherical_subsets() const { return spherical_; }
  const std::vector<Subset>& maximal_subsets() const { return maximal_; }

  // Lexicographically least maximal spherical subset; the witness used when
  // the caller names none.
  Subset default_witness() const;

  bool is_spherical(const Subset& t) const;          // dual-route
  bool is_maximal_spherical(const Subset& t) const;  // membership in the list

  // Individual checks.  Preconditions (earlier checks in dependency order
  // must pass) are enforced with InvalidArgument.
  CheckResult check_spherical(const Subset& t) const;
  CheckResult check_maximality(const Subset& t) const;
  CheckResult check_unique_fixed_point(const Subset& t) const;
  CheckResult check_self_normalized(const Subset& t,
                                    const CertifyOptions& opts = {}) const;
  CheckResult check_bp1(const Subset& t) const;
  CheckResult check_bp2(const Subset& t) const;
  CheckResult check_bp3(const Subset& t) const;

  // All checks in dependency order, stopping at the first failure.
  BPCertificate certify_bp(const Subset& t, const CertifyOptions& opts = {}) const;

  // Independent re-check of a parsed certificate against this system:
  // fingerprint, citation whitelist, then full recomputation.  Advisory
  // evidence is stripped from both sides before comparison.  Malformed
  // certificates throw ParseError; all other failures are verdicts.
  VerifyResult verify_certificate(const nlohmann::json& certificate_json) const;

 private:
  struct Probe {
    TypeDecomposition decomposition;
    bool positive_definite = false;
  };
  Probe probe_spherical(const Subset& t) const;
  void require_spherical(const Subset& t, std::string_view op) const;
  void require_maximal(const Subset& t, std::string_view op) const;

  WordEngine engine_;
  std::vector<Subset> spherical_;
  std::vector<Subset> maximal_;
};

}  // namespace coxcert
