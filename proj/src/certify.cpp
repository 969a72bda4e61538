#include "coxcert/certify.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <utility>

#include "coxcert/errors.hpp"
#include "coxcert/exact_matrix.hpp"
#include "coxcert/quotients.hpp"
#include "coxcert/report.hpp"

namespace coxcert {

namespace {

constexpr std::array<std::string_view, 7> kConditionNames = {
    "SPHERICAL", "MAXIMALITY", "UNIQUE_FIXED_POINT", "SELF_NORMALIZED",
    "BP1",       "BP2",        "BP3"};

const nlohmann::json& require_key(const nlohmann::json& j, const char* key,
                                  const char* what) {
  if (!j.contains(key))
    throw ParseError(std::string(what) + " missing field " + key);
  return j.at(key);
}

std::string require_string(const nlohmann::json& j, const char* key, const char* what) {
  const auto& v = require_key(j, key, what);
  if (!v.is_string())
    throw ParseError(std::string(what) + " field " + key + " must be a string");
  return v.get<std::string>();
}

nlohmann::json decomposition_json(const TypeDecomposition& d) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : d.components) {
    nlohmann::json jc;
    jc["nodes"] = c.nodes;
    jc["type"] = c.type ? nlohmann::json(c.type->name()) : nlohmann::json(nullptr);
    comps.push_back(std::move(jc));
  }
  return comps;
}

// First quotient in canonical search order whose normalizer evidence for t
// is tight on a proper subgroup image; used only as advisory decoration.
std::optional<QuotientEvidence> find_tight_normalizer(const CoxeterSystem& sys,
                                                      const Subset& t,
                                                      int max_degree) {
  constexpr std::size_t kScanCount = 64;
  for (const auto& q : search_quotients(sys, max_degree, kScanCount)) {
    QuotientEvidence ev = normalizer_evidence(sys, t, q);
    if (ev.tight && ev.subgroup_image_order < q.image_order) return ev;
  }
  return std::nullopt;
}

void strip_advisory(nlohmann::json& cert) {
  for (auto& chk : cert.at("checks"))
    if (chk.contains("evidence") && chk.at("evidence").is_object())
      chk.at("evidence").erase("advisory");
}

std::string difference_detail(const nlohmann::json& given,
                              const nlohmann::json& reference) {
  const auto& g = given.at("checks");
  const auto& r = reference.at("checks");
  const std::size_t n = std::min(g.size(), r.size());
  for (std::size_t i = 0; i < n; ++i)
    if (g.at(i) != r.at(i))
      return "check " + g.at(i).at("condition_id").get<std::string>() +
             " does not match recomputation";
  if (g.size() != r.size()) return "check list length differs from recomputation";
  return "certificate does not match recomputation";
}

}  // namespace

std::string_view condition_name(Condition c) {
  return kConditionNames.at(static_cast<std::size_t>(c));
}

Condition condition_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kConditionNames.size(); ++i)
    if (kConditionNames[i] == name) return static_cast<Condition>(i);
  throw ParseError("unknown condition_id: " + std::string(name));
}

std::string_view justification_name(Justification j) {
  return j == Justification::computed ? "computed" : "theorem_cited";
}

Justification justification_from_name(std::string_view name) {
  if (name == "computed") return Justification::computed;
  if (name == "theorem_cited") return Justification::theorem_cited;
  throw ParseError("unknown justification: " + std::string(name));
}

const std::vector<std::string>& citation_whitelist() {
  static const std::vector<std::string> list = {
      std::string(citations::kUniqueFixedPoint),
      std::string(citations::kSelfNormalized),
      std::string(citations::kFinitelyManyClasses),
      std::string(citations::kFiniteOut)};
  return list;
}

nlohmann::json CheckResult::to_json() const {
  return nlohmann::json{
      {"citation", citation},
      {"condition_id", std::string(condition_name(condition))},
      {"evidence", evidence},
      {"justification", std::string(justification_name(justification))},
      {"verdict", passed ? "pass" : "fail"}};
}

CheckResult CheckResult::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("check result is not a JSON object");
  for (const char* key : {"citation", "condition_id", "evidence", "justification",
                          "verdict"})
    require_key(j, key, "check result");
  if (j.size() != 5) throw ParseError("check result has unexpected fields");
  CheckResult r;
  r.condition = condition_from_name(require_string(j, "condition_id", "check result"));
  const std::string verdict = require_string(j, "verdict", "check result");
  if (verdict != "pass" && verdict != "fail")
    throw ParseError("check verdict must be pass or fail");
  r.passed = verdict == "pass";
  r.justification =
      justification_from_name(require_string(j, "justification", "check result"));
  r.citation = require_string(j, "citation", "check result");
  r.evidence = j.at("evidence");
  return r;
}

nlohmann::json BPCertificate::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) checks_json.push_back(c.to_json());
  return nlohmann::json{{"checks", std::move(checks_json)},
                        {"overall", certified ? "certified" : "rejected"},
                        {"schema_version", std::string(kSchemaVersion)},
                        {"system_fingerprint", system_fingerprint},
                        {"witness", witness}};
}

BPCertificate BPCertificate::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("certificate is not a JSON object");
  for (const char* key : {"checks", "overall", "schema_version", "system_fingerprint",
                          "witness"})
    require_key(j, key, "certificate");
  if (j.size() != 5) throw ParseError("certificate has unexpected fields");
  if (require_string(j, "schema_version", "certificate") != kSchemaVersion)
    throw ParseError("unsupported certificate schema_version");
  BPCertificate cert;
  cert.system_fingerprint = require_string(j, "system_fingerprint", "certificate");
  const auto& w = j.at("witness");
  if (!w.is_array()) throw ParseError("certificate witness must be an array");
  for (const auto& x : w) {
    if (!x.is_number_integer())
      throw ParseError("certificate witness entries must be integers");
    cert.witness.push_back(x.get<int>());
  }
  const std::string overall = require_string(j, "overall", "certificate");
  if (overall != "certified" && overall != "rejected")
    throw ParseError("certificate overall must be certified or rejected");
  cert.certified = overall == "certified";
  const auto& checks = j.at("checks");
  if (!checks.is_array()) throw ParseError("certificate checks must be an array");
  for (const auto& c : checks) cert.checks.push_back(CheckResult::from_json(c));
  return cert;
}

std::string_view verify_failure_name(VerifyResult::Failure f) {
  switch (f) {
    case VerifyResult::Failure::none: return "none";
    case VerifyResult::Failure::fingerprint_mismatch: return "fingerprint_mismatch";
    case VerifyResult::Failure::unknown_citation: return "unknown_citation";
    case VerifyResult::Failure::verdict_mismatch: return "verdict_mismatch";
  }
  throw InvalidArgument("unknown verify failure value");
}

Certifier::Certifier(CoxeterSystem sys) : engine_(std::move(sys)) {
  spherical_ = enumerate_spherical_subsets(system());
  maximal_ = maximal_spherical_subsets(system());
}

Subset Certifier::default_witness() const {
  // Nonempty for every rank: rank 0 has the empty subset as its maximum.
  return maximal_.front();
}

Certifier::Probe Certifier::probe_spherical(const Subset& t) const {
  Probe p;
  p.decomposition = classify_finite_type(system(), t);
  p.positive_definite = is_positive_definite(gram_matrix(system(), t));
  if (p.decomposition.is_spherical != p.positive_definite) {
    std::ostringstream dump;
    dump << "finite-type classification and Gram positive-definiteness disagree on "
         << t.to_string(system().labels()) << ": classification says "
         << (p.decomposition.is_spherical ? "finite" : "infinite") << " [";
    for (std::size_t i = 0; i < p.decomposition.components.size(); ++i) {
      const auto& c = p.decomposition.components[i];
      if (i) dump << ", ";
      dump << "{";
      for (std::size_t k = 0; k < c.nodes.size(); ++k)
        dump << (k ? "," : "") << c.nodes[k];
      dump << "}=" << (c.type ? c.type->name() : std::string("?"));
    }
    dump << "], Gram matrix is " << (p.positive_definite ? "" : "not ")
         << "positive definite";
    throw ConsistencyFault(dump.str());
  }
  return p;
}

bool Certifier::is_spherical(const Subset& t) const {
  return probe_spherical(t).positive_definite;
}

bool Certifier::is_maximal_spherical(const Subset& t) const {
  return std::binary_search(maximal_.begin(), maximal_.end(), t);
}

void Certifier::require_spherical(const Subset& t, std::string_view op) const {
  if (!is_spherical(t))
    throw InvalidArgument(std::string(op) + " requires a spherical subset");
}

void Certifier::require_maximal(const Subset& t, std::string_view op) const {
  if (!is_maximal_spherical(t))
    throw InvalidArgument(std::string(op) + " requires a maximal spherical subset");
}

CheckResult Certifier::check_spherical(const Subset& t) const {
  t.validate(system().rank());
  const Probe p = probe_spherical(t);
  CheckResult r;
  r.condition = Condition::spherical;
  r.passed = p.positive_definite;
  r.justification = Justification::computed;
  r.evidence = nlohmann::json{{"components", decomposition_json(p.decomposition)},
                              {"positive_definite", p.positive_definite}};
  if (r.passed) r.evidence["order"] = to_decimal(order_of(p.decomposition));
  return r;
}

CheckResult Certifier::check_maximality(const Subset& t) const {
  t.validate(system().rank());
  require_spherical(t, "check_maximality");
  nlohmann::json extensions = nlohmann::json::array();
  bool maximal = true;
  for (int s = 0; s < system().rank(); ++s) {
    if (t.contains(s)) continue;
    const bool extension_spherical = is_spherical(t.with(s));
    maximal = maximal && !extension_spherical;
    extensions.push_back(
        {{"extension_spherical", extension_spherical}, {"generator", s}});
  }
  CheckResult r;
  r.condition = Condition::maximality;
  r.passed = maximal;
  r.justification = Justification::computed;
  r.evidence = nlohmann::json{{"extensions", std::move(extensions)}};
  return r;
}

CheckResult Certifier::check_unique_fixed_point(const Subset& t) const {
  t.validate(system().rank());
  require_spherical(t, "check_unique_fixed_point");
  require_maximal(t, "check_unique_fixed_point");
  const int null_dim = nullity(gram_matrix(system(), t));
  CheckResult r;
  r.condition = Condition::unique_fixed_point;
  r.passed = null_dim == 0;
  r.justification = Justification::computed;
  r.citation = std::string(citations::kUniqueFixedPoint);
  r.evidence = nlohmann::json{{"nullity", null_dim}};
  return r;
}

CheckResult Certifier::check_self_normalized(const Subset& t,
                                             const CertifyOptions& opts) const {
  t.validate(system().rank());
  require_spherical(t, "check_self_normalized");
  require_maximal(t, "check_self_normalized");
  if (nullity(gram_matrix(system(), t)) != 0)
    throw InvalidArgument(
        "check_self_normalized requires the unique-fixed-point check to pass");
  CheckResult r;
  r.condition = Condition::self_normalized;
  r.passed = true;
  r.justification = Justification::theorem_cited;
  r.citation = std::string(citations::kSelfNormalized);
  r.evidence = nlohmann::json{
      {"premises",
       nlohmann::json::array({"SPHERICAL", "MAXIMALITY", "UNIQUE_FIXED_POINT"})}};
  if (opts.attach_quotient_evidence) {
    if (auto advisory =
            find_tight_normalizer(system(), t, opts.quotient_max_degree))
      r.evidence["advisory"] = advisory->to_json();
  }
  return r;
}

CheckResult Certifier::check_bp1(const Subset& t) const {
  t.validate(system().rank());
  require_spherical(t, "check_bp1");
  CheckResult r;
  r.condition = Condition::bp1;
  r.passed = true;
  r.justification = Justification::computed;
  r.evidence = nlohmann::json{
      {"center_order", to_decimal(engine_.center_order(t))},
      {"subgroup_order", to_decimal(order_of(classify_finite_type(system(), t)))}};
  return r;
}

CheckResult Certifier::check_bp2(const Subset& t) const {
  t.validate(system().rank());
  require_spherical(t, "check_bp2");
  require_maximal(t, "check_bp2");
  nlohmann::json list = nlohmann::json::array();
  for (const auto& m : maximal_) list.push_back(m.members());
  CheckResult r;
  r.condition = Condition::bp2;
  r.passed = true;
  r.justification = Justification::theorem_cited;
  r.citation = std::string(citations::kFinitelyManyClasses);
  r.evidence = nlohmann::json{{"maximal_spherical_subsets", std::move(list)},
                              {"witness_included", is_maximal_spherical(t)}};
  return r;
}

CheckResult Certifier::check_bp3(const Subset& t) const {
  t.validate(system().rank());
  require_spherical(t, "check_bp3");
  CheckResult r;
  r.condition = Condition::bp3;
  r.passed = true;
  r.justification = Justification::theorem_cited;
  r.citation = std::string(citations::kFiniteOut);
  r.evidence = nlohmann::json{
      {"subgroup_order", to_decimal(order_of(classify_finite_type(system(), t)))}};
  return r;
}

BPCertificate Certifier::certify_bp(const Subset& t, const CertifyOptions& opts) const {
  t.validate(system().rank());
  BPCertificate cert;
  cert.system_fingerprint = system_fingerprint(system());
  cert.witness = t.members();

  const auto run = [&cert](CheckResult r) {
    cert.checks.push_back(std::move(r));
    return cert.checks.back().passed;
  };

  cert.certified = run(check_spherical(t)) && run(check_maximality(t)) &&
                   run(check_unique_fixed_point(t)) &&
                   run(check_self_normalized(t, opts)) && run(check_bp1(t)) &&
                   run(check_bp2(t)) && run(check_bp3(t));
  return cert;
}

VerifyResult Certifier::verify_certificate(const nlohmann::json& certificate_json) const {
  const BPCertificate given = BPCertificate::from_json(certificate_json);

  VerifyResult out;
  if (given.system_fingerprint != system_fingerprint(system())) {
    out.failure = VerifyResult::Failure::fingerprint_mismatch;
    out.detail = "certificate fingerprint " + given.system_fingerprint +
                 " does not match this system";
    return out;
  }

  const auto& whitelist = citation_whitelist();
  for (const auto& chk : given.checks) {
    if (chk.justification != Justification::theorem_cited && chk.citation.empty())
      continue;
    if (std::find(whitelist.begin(), whitelist.end(), chk.citation) ==
        whitelist.end()) {
      out.failure = VerifyResult::Failure::unknown_citation;
      out.detail = "check " + std::string(condition_name(chk.condition)) +
                   " cites unknown anchor \"" + chk.citation + "\"";
      return out;
    }
  }

  Subset witness;
  try {
    witness = Subset(given.witness, system().rank());
  } catch (const InvalidArgument& e) {
    out.failure = VerifyResult::Failure::verdict_mismatch;
    out.detail = std::string("witness is not a valid subset: ") + e.what();
    return out;
  }

  const BPCertificate reference = certify_bp(witness);
  nlohmann::json lhs = given.to_json();
  nlohmann::json rhs = reference.to_json();
  strip_advisory(lhs);
  strip_advisory(rhs);
  if (lhs != rhs) {
    out.failure = VerifyResult::Failure::verdict_mismatch;
    out.detail = difference_detail(lhs, rhs);
    return out;
  }
  out.ok = true;
  return out;
}

}  // namespace coxcert
