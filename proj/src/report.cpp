#include "coxcert/report.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <sstream>

#include "coxcert/errors.hpp"

namespace coxcert {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw ConsistencyFault("SHA-256 computation failed");
  }
  EVP_MD_CTX_free(ctx);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i)
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

std::string system_fingerprint(const CoxeterSystem& sys) {
  return sha256_hex(sys.canonical_text());
}

nlohmann::json Report::to_json() const {
  return nlohmann::json{{"command", command},
                        {"payload", payload},
                        {"schema_version", std::string(kSchemaVersion)},
                        {"system_fingerprint", system_fingerprint},
                        {"tool_version", std::string(kToolVersion)}};
}

Report Report::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("report is not a JSON object");
  for (const char* key : {"command", "payload", "schema_version", "system_fingerprint",
                          "tool_version"}) {
    if (!j.contains(key)) throw ParseError(std::string("report missing field ") + key);
    if (key != std::string_view("payload") && !j.at(key).is_string())
      throw ParseError(std::string("report field ") + key + " must be a string");
  }
  if (j.at("schema_version").get<std::string>() != kSchemaVersion)
    throw ParseError("unsupported report schema_version");
  Report r;
  r.command = j.at("command").get<std::string>();
  r.system_fingerprint = j.at("system_fingerprint").get<std::string>();
  r.payload = j.at("payload");
  return r;
}

/*
 * Human rendering.  Payloads carry labels where needed so rendering never
 * reaches back to the system file.
 */

namespace {

std::string subset_text(const nlohmann::json& members, const nlohmann::json& labels) {
  std::string out = "{";
  bool first = true;
  for (const auto& m : members) {
    if (!first) out += ",";
    out += labels.at(m.get<std::size_t>()).get<std::string>();
    first = false;
  }
  return out + "}";
}

std::string types_text(const nlohmann::json& types) {
  if (types.empty()) return "-";
  std::string out;
  for (const auto& t : types) {
    if (!out.empty()) out += "x";
    out += t.is_null() ? "?" : t.get<std::string>();
  }
  return out;
}

void render_subset_list(std::ostream& os, const nlohmann::json& rows,
                        const nlohmann::json& labels) {
  for (const auto& row : rows) {
    os << "  " << std::left << std::setw(18)
       << subset_text(row.at("members"), labels) << " " << std::setw(12)
       << types_text(row.at("types")) << " order " << row.at("order").get<std::string>()
       << "\n";
  }
}

std::string render_analyze(const Report& r) {
  const auto& p = r.payload;
  std::ostringstream os;
  os << "system: rank " << p.at("rank").get<int>() << "\n";
  os << "labels:";
  for (const auto& l : p.at("labels")) os << " " << l.get<std::string>();
  os << "\n";
  os << "fingerprint: " << r.system_fingerprint << "\n";
  const auto& sph = p.at("spherical_subsets");
  os << "spherical subsets (" << sph.size() << "):\n";
  render_subset_list(os, sph, p.at("labels"));
  const auto& mx = p.at("maximal_spherical_subsets");
  os << "maximal spherical subsets (" << mx.size() << "):\n";
  render_subset_list(os, mx, p.at("labels"));
  return os.str();
}

std::string render_certify(const Report& r) {
  const auto& cert = r.payload.at("certificate");
  const auto& labels = r.payload.at("labels");
  std::ostringstream os;
  os << "witness: " << subset_text(cert.at("witness"), labels) << "\n";
  os << "overall: " << cert.at("overall").get<std::string>() << "\n";
  std::string first_fail;
  os << "checks:\n";
  for (const auto& chk : cert.at("checks")) {
    const std::string verdict = chk.at("verdict").get<std::string>();
    if (verdict == "fail" && first_fail.empty())
      first_fail = chk.at("condition_id").get<std::string>();
    os << "  " << std::left << std::setw(20) << chk.at("condition_id").get<std::string>()
       << " " << std::setw(5) << verdict << " "
       << chk.at("justification").get<std::string>();
    const std::string citation = chk.at("citation").get<std::string>();
    if (!citation.empty()) os << "  [" << citation << "]";
    os << "\n";
  }
  if (!first_fail.empty()) os << "first failing check: " << first_fail << "\n";
  return os.str();
}

std::string render_verify(const Report& r) {
  const auto& p = r.payload;
  std::ostringstream os;
  if (p.at("verified").get<bool>()) {
    os << "certificate verification: PASS\n";
  } else {
    os << "certificate verification: FAIL (" << p.at("failure").get<std::string>()
       << ")\n";
    const std::string detail = p.at("detail").get<std::string>();
    if (!detail.empty()) os << "detail: " << detail << "\n";
  }
  return os.str();
}

std::string render_reduce(const Report& r) {
  const auto& p = r.payload;
  const std::string nf = p.at("normal_form").get<std::string>();
  std::ostringstream os;
  os << "input:       " << p.at("input_word").get<std::string>() << "\n";
  os << "normal form: " << (nf.empty() ? "(identity)" : nf) << "\n";
  os << "length: " << p.at("length").get<int>() << "\n";
  return os.str();
}

void render_quotient_line(std::ostream& os, const nlohmann::json& q,
                          const nlohmann::json& labels) {
  os << "degree " << q.at("degree").get<int>() << ":";
  const auto& gens = q.at("generators");
  for (std::size_t i = 0; i < gens.size(); ++i)
    os << " " << labels.at(i).get<std::string>() << " -> "
       << gens.at(i).get<std::string>()
       << (i + 1 < gens.size() ? "," : "");
  os << "  [image order " << q.at("image_order").get<std::uint64_t>() << "]";
}

std::string render_quotients(const Report& r) {
  const auto& p = r.payload;
  std::ostringstream os;
  os << "quotients found: " << p.at("quotients").size() << " (max degree "
     << p.at("max_degree").get<int>() << ", max count "
     << p.at("max_count").get<std::uint64_t>() << ")\n";
  std::size_t i = 1;
  for (const auto& q : p.at("quotients")) {
    os << "  #" << i++ << " ";
    render_quotient_line(os, q, p.at("labels"));
    os << "\n";
  }
  return os.str();
}

std::string render_separate(const Report& r) {
  const auto& p = r.payload;
  std::ostringstream os;
  os << "word: " << p.at("word").get<std::string>() << "\n";
  if (p.at("found").get<bool>()) {
    os << "separated: yes\n  ";
    render_quotient_line(os, p.at("quotient"), p.at("labels"));
    os << "\n";
    os << "image of word: " << p.at("image").get<std::string>() << "\n";
  } else {
    os << "separated: no quotient of degree <= " << p.at("max_degree").get<int>()
       << " separates this word\n";
  }
  return os.str();
}

}  // namespace

std::string emit_report(const Report& r, OutputMode mode) {
  if (mode == OutputMode::json) return r.to_json().dump() + "\n";
  if (r.command == "analyze") return render_analyze(r);
  if (r.command == "certify") return render_certify(r);
  if (r.command == "verify") return render_verify(r);
  if (r.command == "reduce") return render_reduce(r);
  if (r.command == "quotients") return render_quotients(r);
  if (r.command == "separate") return render_separate(r);
  return r.to_json().dump(2) + "\n";
}

}  // namespace coxcert
