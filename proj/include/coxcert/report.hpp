#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

#include "coxcert/coxeter.hpp"

namespace coxcert {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr std::string_view kSchemaVersion = "1";

std::string sha256_hex(std::string_view bytes);

// SHA-256 of the canonical text form of the system; ties certificates and
// reports to their input file modulo formatting.
std::string system_fingerprint(const CoxeterSystem& sys);

enum class OutputMode { human, json };

// Envelope for every CLI result.  JSON serialization is canonical: sorted
// keys, compact spacing, one trailing newline — byte-identical across runs.
struct Report {
  std::string command;
  std::string system_fingerprint;
  nlohmann::json payload;

  nlohmann::json to_json() const;
  static Report from_json(const nlohmann::json& j);
  friend bool operator==(const Report&, const Report&) = default;
};

std::string emit_report(const Report& r, OutputMode mode);

}  // namespace coxcert
