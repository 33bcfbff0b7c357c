#include "rank2/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <stdexcept>

namespace rank2 {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                  nullptr))
    throw std::runtime_error("sha256: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int k = 0; k < len; ++k) {
    out.push_back(hex[digest[k] >> 4]);
    out.push_back(hex[digest[k] & 0xF]);
  }
  return out;
}

std::string theta_digest(const ThetaSpec& theta) {
  return sha256_hex(theta.canonical());
}

namespace {

// digit string for single-digit alphabets, comma-separated beyond
std::string word_string(const std::vector<int>& letters) {
  bool wide = std::any_of(letters.begin(), letters.end(),
                          [](int l) { return l > 9; });
  std::string s;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    if (wide && k) s += ',';
    s += std::to_string(letters[k]);
  }
  return s;
}

}  // namespace

Json theta_to_json(const ThetaSpec& theta) {
  Json j;
  j["m"] = theta.m();
  j["n"] = theta.n();
  j["digest"] = theta_digest(theta);
  return j;
}

Json gamma_to_json(const GammaTable& gamma, std::size_t table_embed_limit) {
  Json j;
  j["a"] = gamma.a;
  j["b"] = gamma.b;
  j["entries"] = gamma.forward.size();
  std::string canon;
  canon.reserve(gamma.forward.size() * 4);
  for (std::uint32_t v : gamma.forward) {
    canon += std::to_string(v);
    canon += ';';
  }
  j["sha256"] = sha256_hex(canon);
  if (gamma.forward.size() <= table_embed_limit) {
    Json table = Json::object();
    for (std::size_t u = 0; u < gamma.forward.size(); ++u)
      table[word_string(unpack_word(u, gamma.m, gamma.a))] =
          word_string(unpack_word(gamma.forward[u], gamma.n, gamma.b));
    j["table"] = std::move(table);
  }
  return j;
}

Json witness_to_json(const Witness& w) {
  Json j;
  j["kind"] = witness_kind_name(w.kind);
  j["a"] = w.a;
  j["b"] = w.b;
  if (!w.u0.empty()) j["u0"] = word_string(w.u0);
  if (!w.v0.empty()) j["v0"] = word_string(w.v0);
  if (w.j0) j["j0"] = w.j0;
  if (w.i0) j["i0"] = w.i0;
  if (w.step >= 0) j["step"] = w.step;
  if (!w.expected.empty()) {
    j["expected"] = word_string(w.expected);
    j["actual"] = word_string(w.actual);
  }
  if (!w.other_u.empty()) j["other_u0"] = word_string(w.other_u);
  j["description"] = w.describe();
  return j;
}

Json certificate_to_json(const AperiodicityCertificate& cert) {
  Json j;
  j["side"] =
      cert.side == AperiodicityCertificate::Side::Alpha ? "alpha" : "beta";
  j["fixed_set"] = cert.fixed_set;
  j["word"] = cert.word;
  j["map"] = cert.map.table;
  return j;
}

Json verdict_to_json(const PeriodicityVerdict& verdict) {
  Json j;
  j["tag"] = verdict_tag_name(verdict.tag);
  if (verdict.period)
    j["period"] = Json::array({verdict.period->first, verdict.period->second});
  if (verdict.gamma) j["gamma"] = gamma_to_json(*verdict.gamma);
  if (verdict.witness) j["witness"] = witness_to_json(*verdict.witness);
  if (verdict.certificate)
    j["certificate"] = certificate_to_json(*verdict.certificate);
  if (verdict.sampled) {
    j["samples"] = verdict.sampled->samples;
    j["seed"] = verdict.sampled->seed;
    j["note"] = "no counterexample in " +
                std::to_string(verdict.sampled->samples) + " samples (seed " +
                std::to_string(verdict.sampled->seed) + "); not certified";
  }
  if (verdict.tag == VerdictTag::UndecidedUpToBound && verdict.k_bound > 0)
    j["k_bound"] = verdict.k_bound;
  j["summary"] = verdict.summary();
  return j;
}

Json symmetry_to_json(const SymmetryReport& rep) {
  Json j;
  j["depth"] = rep.depth;
  j["bounds"] = Json::array({rep.p_max, rep.q_max});
  Json passing = Json::array();
  for (auto [p, q] : rep.passing) passing.push_back(Json::array({p, q}));
  j["passing"] = std::move(passing);
  Json eventual = Json::array();
  for (auto [p, q, trim] : rep.eventual)
    eventual.push_back(Json::array({p, q, trim}));
  j["eventual"] = std::move(eventual);
  return j;
}

Json window_to_json(const LatticeWindow& window) {
  const int T = window.depth();
  Json j;
  j["depth"] = T;
  Json irows = Json::array();
  for (int s = -T + 1; s <= 0; ++s) {
    Json row = Json::array();
    for (int t = -T; t <= 0; ++t) row.push_back(window.i(s, t));
    irows.push_back(std::move(row));
  }
  Json jrows = Json::array();
  for (int s = -T; s <= 0; ++s) {
    Json row = Json::array();
    for (int t = -T + 1; t <= 0; ++t) row.push_back(window.j(s, t));
    jrows.push_back(std::move(row));
  }
  j["i_grid"] = std::move(irows);
  j["j_grid"] = std::move(jrows);
  return j;
}

Json tail_to_json(const Tail& tail) {
  Json j;
  j["description"] = tail.description();
  if (tail.is_prefix()) {
    Json segs = Json::array();
    for (const Word& w : tail.segments()) segs.push_back(w.str());
    j["segments"] = std::move(segs);
    Degree d = *tail.finite_degree();
    j["degree"] = Json::array({d.e, d.f});
  } else {
    auto dump = [](const std::vector<TailBlock>& blocks) {
      Json arr = Json::array();
      for (const TailBlock& b : blocks) arr.push_back(Json::array({b.e, b.f}));
      return arr;
    };
    j["preperiod"] = dump(tail.preperiod());
    j["period"] = dump(tail.period());
  }
  return j;
}

Report::Report(std::string command, const ThetaSpec& theta) {
  doc_["command"] = std::move(command);
  doc_["theta"] = theta_to_json(theta);
  doc_["version"] = kVersion;
}

void Report::set_verdict(const PeriodicityVerdict& verdict) {
  doc_["verdict"] = verdict_tag_name(verdict.tag);
  if (verdict.period)
    doc_["period"] =
        Json::array({verdict.period->first, verdict.period->second});
  if (verdict.gamma) doc_["gamma"] = gamma_to_json(*verdict.gamma);
  if (verdict.witness) doc_["witness"] = witness_to_json(*verdict.witness);
  if (verdict.certificate)
    doc_["certificate"] = certificate_to_json(*verdict.certificate);
  if (verdict.sampled) {
    doc_["samples"] = verdict.sampled->samples;
    doc_["seed"] = verdict.sampled->seed;
    doc_["note"] = "no counterexample in " +
                   std::to_string(verdict.sampled->samples) +
                   " samples (seed " + std::to_string(verdict.sampled->seed) +
                   "); not certified";
  }
  if (verdict.tag == VerdictTag::UndecidedUpToBound && verdict.k_bound > 0)
    doc_["k_bound"] = verdict.k_bound;
  doc_["summary"] = verdict.summary();
}

}  // namespace rank2
