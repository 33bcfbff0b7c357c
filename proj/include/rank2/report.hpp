#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "rank2/endo.hpp"
#include "rank2/periodicity.hpp"
#include "rank2/tails.hpp"
#include "rank2/theta.hpp"

namespace rank2 {

inline constexpr const char* kVersion = "0.1.0";

/// Lowercase hex SHA-256 of the input bytes.
std::string sha256_hex(std::string_view data);

/// Digest of the canonical forward-table serialization.
std::string theta_digest(const ThetaSpec& theta);

using Json = nlohmann::ordered_json;

Json theta_to_json(const ThetaSpec& theta);
Json gamma_to_json(const GammaTable& gamma, std::size_t table_embed_limit = 4096);
Json witness_to_json(const Witness& w);
Json certificate_to_json(const AperiodicityCertificate& cert);
Json verdict_to_json(const PeriodicityVerdict& verdict);
Json symmetry_to_json(const SymmetryReport& rep);
Json window_to_json(const LatticeWindow& window);
Json tail_to_json(const Tail& tail);

/// The single-document report every command emits. Keys are fixed:
/// command, theta, verdict, period, gamma, witness, certificate,
/// symmetries, seed, elapsed_ms, version.
class Report {
 public:
  Report(std::string command, const ThetaSpec& theta);
  explicit Report(Json doc) : doc_(std::move(doc)) {}

  void set(const std::string& key, Json value) { doc_[key] = std::move(value); }
  void set_verdict(const PeriodicityVerdict& verdict);
  void set_elapsed_ms(std::int64_t ms) { doc_["elapsed_ms"] = ms; }

  const Json& json() const { return doc_; }
  std::string serialize() const { return doc_.dump(2); }
  static Report parse(const std::string& text) {
    return Report(Json::parse(text));
  }

  friend bool operator==(const Report& a, const Report& b) {
    return a.doc_ == b.doc_;
  }

 private:
  Json doc_;
};

}  // namespace rank2
