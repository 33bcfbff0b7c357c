#include "rank2/catalog.hpp"

#include <stdexcept>

namespace rank2 {

namespace {

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> cat;

  {
    CatalogEntry e;
    e.name = "flip-2x2";
    e.build = [] {
      return ThetaSpec::from_cycles(2, 2, {{{1, 2}, {2, 1}}});
    };
    e.expected.minimal_period = {{1, 1}};
    e.expected.gamma_fragments = {{"1", "1"}, {"2", "2"}};
    e.expected.gamma_fragments_complete = true;
    e.expected.notes = "e_i f_j = f_i e_j; gamma is the identity";
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "square-2x2";
    e.build = [] {
      return ThetaSpec::from_cycles(2, 2, {{{1, 1}, {1, 2}, {2, 2}, {2, 1}}});
    };
    e.expected.minimal_period = {{2, 2}};
    e.expected.gamma_fragments = {
        {"11", "21"}, {"12", "22"}, {"21", "11"}, {"22", "12"}};
    e.expected.gamma_fragments_complete = true;
    e.expected.notes =
        "no (1,-1) periodicity; gamma(i1 i2) = i1' i2 with i' = i+1 mod 2";
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "fwd3cycle-2x2";
    e.build = [] {
      return ThetaSpec::from_cycles(2, 2, {{{1, 1}, {1, 2}, {2, 1}}});
    };
    e.expected.certificate = {{AperiodicityCertificate::Side::Alpha, {1, 2}}};
    e.expected.certificate_word = {2};
    e.expected.notes = "e_i f_j = f_{i+j} e_j; alpha_2 = id certifies aperiodicity";
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "periodic-2x4";
    e.build = [] {
      return ThetaSpec::from_cycles(
          2, 4, {{{1, 2}, {2, 1}, {1, 3}}, {{2, 2}, {2, 3}, {1, 4}}});
    };
    e.expected.minimal_period = {{2, 1}};
    e.expected.gamma_fragments = {
        {"11", "1"}, {"12", "2"}, {"21", "3"}, {"22", "4"}};
    e.expected.gamma_fragments_complete = true;
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "periodic-3x3";
    e.build = [] {
      return ThetaSpec::from_cycles(
          3, 3, {{{1, 2}, {2, 1}}, {{1, 3}, {3, 2}, {2, 3}, {3, 1}}});
    };
    e.expected.minimal_period = {{2, 2}};
    e.expected.gamma_fragments = {
        {"11", "11"}, {"12", "12"}, {"13", "23"}, {"21", "21"}, {"22", "22"},
        {"23", "13"}, {"31", "31"}, {"32", "32"}, {"33", "33"}};
    e.expected.gamma_fragments_complete = true;
    e.expected.notes = "gamma swaps 13 and 23 and fixes the rest";
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "eight-cycle-4x4";
    e.build = [] { return family_theta(4); };
    e.expected.minimal_period = {{12, 12}};
    e.expected.constancy = {{3, 3}};
    e.expected.notes =
        "periodic only from length 12 on; the flagship exhaustive workload";
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "eight-cycle-3x3";
    e.build = [] {
      return ThetaSpec::from_cycles(
          3, 3,
          {{{1, 3}, {1, 1}, {3, 1}, {3, 3}, {2, 3}, {1, 2}, {2, 1}, {3, 2}}});
    };
    e.expected.aperiodic_without_certificate = true;
    e.expected.constancy = {{1, 2}};
    e.expected.notes =
        "aperiodic although all depth-2 compositions are constant; the "
        "fixed-set criterion is sufficient, not necessary";
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "variant-4x4";
    e.build = [] {
      return ThetaSpec::from_cycles(4, 4,
                                    {{{1, 1}, {3, 2}, {4, 4}, {2, 3}},
                                     {{2, 1}, {1, 2}, {4, 2}, {2, 4}},
                                     {{3, 1}, {3, 4}, {4, 3}, {1, 3}},
                                     {{4, 1}, {1, 4}}});
    };
    e.expected.minimal_period = {{2, 2}};
    e.expected.constancy = {{2, 2}};
    e.expected.notes = "alpha_1=alpha_2, alpha_3=alpha_4, beta_1=beta_3, beta_2=beta_4";
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "flip-family-5";
    e.build = [] { return family_theta(5); };
    e.expected.notes = "odd family member; aperiodic";
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "flip-family-6";
    e.build = [] { return family_theta(6); };
    e.expected.notes =
        "even family member; sampled evidence points at period (24,-24)";
    cat.push_back(std::move(e));
  }

  return cat;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> cat = build_catalog();
  return cat;
}

std::vector<std::string> catalog_list() {
  std::vector<std::string> names;
  for (const auto& e : catalog()) names.push_back(e.name);
  return names;
}

const CatalogEntry* catalog_find(std::string_view name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

ThetaSpec family_theta(int m) {
  if (m < 4) throw std::invalid_argument("family_theta: m must be at least 4");
  std::vector<std::vector<IndexPair>> cycles;
  // the long cycle: (2,1),(1,2),(3,1),(1,3),...,(m-1,1),(1,m-1),
  //                 (m,2),(2,m),(m,3),(3,m),...,(m,m-1),(m-1,m)
  std::vector<IndexPair> big;
  for (int i = 2; i <= m - 1; ++i) {
    big.emplace_back(i, 1);
    big.emplace_back(1, i);
  }
  for (int i = 2; i <= m - 1; ++i) {
    big.emplace_back(m, i);
    big.emplace_back(i, m);
  }
  cycles.push_back(std::move(big));
  // everything else off the diagonal flips
  auto in_edge = [m](int x) { return x == 1 || x == m; };
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      if (in_edge(i) != in_edge(j)) continue;  // covered by the long cycle
      cycles.push_back({{i, j}, {j, i}});
    }
  return ThetaSpec::from_cycles(m, m, cycles);
}

}  // namespace rank2
