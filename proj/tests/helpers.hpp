#pragma once

// Shared helpers for the test suites: random instances and a
// randomized-schedule rewriting oracle kept independent of the library's
// deterministic refactoring path.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "rank2/theta.hpp"
#include "rank2/words.hpp"

namespace rank2::testing {

inline ThetaSpec random_theta(std::mt19937_64& rng, int m, int n) {
  std::vector<IndexPair> pairs;
  pairs.reserve(static_cast<std::size_t>(m) * n);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) pairs.emplace_back(i, j);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  return ThetaSpec(m, n, pairs);
}

inline Word random_word(std::mt19937_64& rng, const ThetaSpec& theta,
                        int max_len) {
  std::uniform_int_distribution<int> len_d(0, max_len);
  std::uniform_int_distribution<int> color_d(0, 1);
  std::uniform_int_distribution<int> e_d(1, theta.m());
  std::uniform_int_distribution<int> f_d(1, theta.n());
  int len = len_d(rng);
  std::vector<Letter> ls;
  ls.reserve(len);
  for (int k = 0; k < len; ++k) {
    if (color_d(rng) == 0)
      ls.push_back(le(e_d(rng)));
    else
      ls.push_back(lf(f_d(rng)));
  }
  return Word(std::move(ls));
}

inline ColorPattern random_pattern(std::mt19937_64& rng, Degree d) {
  ColorPattern p;
  p.insert(p.end(), d.e, Color::E);
  p.insert(p.end(), d.f, Color::F);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Normal form computed by applying elementary swaps at randomly chosen
// admissible positions until none remain. Exercises a different swap
// schedule than the library on every run.
inline Word scrambled_normal_form(const ThetaSpec& theta, const Word& w,
                                  NormalTarget target, std::mt19937_64& rng) {
  std::vector<Letter> ls = w.letters();
  std::vector<std::size_t> sites;
  while (true) {
    sites.clear();
    for (std::size_t k = 0; k + 1 < ls.size(); ++k) {
      bool out_of_order =
          (target == NormalTarget::EF)
              ? (ls[k].color == Color::F && ls[k + 1].color == Color::E)
              : (ls[k].color == Color::E && ls[k + 1].color == Color::F);
      if (out_of_order) sites.push_back(k);
    }
    if (sites.empty()) break;
    std::size_t k = sites[std::uniform_int_distribution<std::size_t>(
        0, sites.size() - 1)(rng)];
    if (target == NormalTarget::EF) {
      auto [i0, j0] = swap_fe(theta, ls[k].index, ls[k + 1].index);
      ls[k] = le(i0);
      ls[k + 1] = lf(j0);
    } else {
      auto [jp, ip] = swap_ef(theta, ls[k].index, ls[k + 1].index);
      ls[k] = lf(jp);
      ls[k + 1] = le(ip);
    }
  }
  return Word(std::move(ls));
}

}  // namespace rank2::testing
