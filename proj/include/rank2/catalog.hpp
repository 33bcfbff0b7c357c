#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rank2/endo.hpp"
#include "rank2/theta.hpp"

namespace rank2 {

/// Golden data for a catalog entry; only the fields that are known are set.
struct CatalogExpectation {
  std::optional<std::pair<int, int>> minimal_period;
  // u -> v as letter strings, e.g. "11" -> "1"; either the full table or a
  // fragment of it
  std::map<std::string, std::string> gamma_fragments;
  bool gamma_fragments_complete = false;
  std::optional<std::pair<AperiodicityCertificate::Side, std::vector<int>>>
      certificate;                     // side and fixed set B
  std::vector<int> certificate_word;   // expected witness word, when pinned
  bool aperiodic_without_certificate = false;
  std::optional<std::pair<int, int>> constancy;  // (alpha depth, beta depth)
  std::string notes;
};

struct CatalogEntry {
  std::string name;
  std::function<ThetaSpec()> build;
  CatalogExpectation expected;
};

const std::vector<CatalogEntry>& catalog();
std::vector<std::string> catalog_list();
const CatalogEntry* catalog_find(std::string_view name);

/// The m x m family (m >= 4): all flips ((i,j),(j,i)) and fixed points
/// (i,i), except that the pairs with exactly one coordinate in {1,m} form
/// one 4(m-2)-cycle. For m = 4 this is the eight-cycle algebra.
ThetaSpec family_theta(int m);

}  // namespace rank2
