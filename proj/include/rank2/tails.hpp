#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rank2/theta.hpp"
#include "rank2/words.hpp"

namespace rank2 {

/// One step of a tail in standard form: the pair e_i f_j.
struct TailBlock {
  int e = 0;
  int f = 0;

  friend auto operator<=>(const TailBlock&, const TailBlock&) = default;
};

/// An infinite word with infinitely many letters of each color, in the
/// standard alternating form e_{i0} f_{j0} e_{i1} f_{j1} ..., or a finite
/// generated prefix of one.
class Tail {
 public:
  static Tail eventually_periodic(std::vector<TailBlock> preperiod,
                                  std::vector<TailBlock> period);
  static Tail generated_prefix(std::vector<Word> segments,
                               std::string description);

  bool is_prefix() const { return prefix_.has_value(); }
  const std::string& description() const { return description_; }
  const std::vector<Word>& segments() const;
  const std::vector<TailBlock>& preperiod() const { return preperiod_; }
  const std::vector<TailBlock>& period() const { return period_; }

  /// First T blocks of the standard form. Generated prefixes are refactored
  /// on demand and must contain at least T letters of each color.
  std::vector<TailBlock> blocks(const ThetaSpec& theta, int T) const;

  /// letter degree available (prefix kind); unbounded kinds report nullopt
  std::optional<Degree> finite_degree() const;

 private:
  Tail() = default;
  std::vector<TailBlock> preperiod_, period_;
  std::optional<std::vector<Word>> prefix_;
  std::string description_;
};

/// Rewrites an eventually periodic letter sequence into standard alternating
/// block form. The period must contain both colors. The block sequence is
/// found by running the extraction machine until its state recurs; inputs
/// whose machine does not stabilize within `state_limit` states are
/// rejected.
Tail standard_form(const ThetaSpec& theta, const std::vector<Letter>& preperiod,
                   const std::vector<Letter>& period,
                   std::size_t state_limit = 100000);

/// The grid of labels induced by the first T blocks of a tail:
///   i(s,t) for -T <  s <= 0, -T <= t <= 0  (blue edge into (s,t))
///   j(s,t) for -T <= s <= 0, -T <  t <= 0  (red edge into (s,t))
class LatticeWindow {
 public:
  LatticeWindow(int depth, std::vector<int> i_grid, std::vector<int> j_grid);

  int depth() const { return depth_; }
  bool has_i(int s, int t) const;
  bool has_j(int s, int t) const;
  int i(int s, int t) const;
  int j(int s, int t) const;

  /// theta(i(s,t), j(s-1,t)) == (i(s,t-1), j(s,t)) at every interior cell:
  /// the two factorizations of each unit square agree.
  bool square_consistent(const ThetaSpec& theta) const;

  /// i(s,s) and j(s-1,s) match the diagonal written by the blocks.
  bool diagonal_consistent(const std::vector<TailBlock>& blocks) const;

  std::string ascii() const;

 private:
  int depth_;
  std::vector<int> i_grid_, j_grid_;  // row-major over the valid ranges
};

LatticeWindow lattice_window(const ThetaSpec& theta, const Tail& tail, int T);

/// Shift pairs (p,q) under which the window data coincides with itself.
struct SymmetryReport {
  int depth = 0;
  int p_max = 0, q_max = 0;
  std::vector<std::pair<int, int>> passing;  // strict: every overlapping cell
  // (p, q, trim): passes once cells with s > -trim or t > -trim are ignored;
  // trim 0 entries coincide with `passing`
  std::vector<std::tuple<int, int, int>> eventual;

  bool passes(int p, int q) const;
  bool passes_eventually(int p, int q) const;
};

SymmetryReport detect_symmetries(const LatticeWindow& window, int p_max,
                                 int q_max);

/// Searches for a word segment whose occurrence in a tail rules out
/// (p,-q)-symmetry, following the three ways the flip structure can fail:
/// the e-part of the rewritten e_u f_v depending on u, the f-part depending
/// on v, or the two halves not being mutually inverse.
struct BreakingSegment {
  enum class Status { Found, HoldsAsSymmetry, BoundExceeded };
  Status status;
  std::optional<Word> segment;
};

BreakingSegment find_breaking_segment(const ThetaSpec& theta, int p, int q,
                                      std::uint64_t search_bound);

/// Builds a finite prefix of a tail designed to carry no symmetry at all:
/// shells of shift pairs are visited repeatedly; pairs in the closed
/// quadrants get the explicit two-letter-alphabet segments, mixed pairs get
/// breaking segments from find_breaking_segment.
Tail build_aperiodic_tail(const ThetaSpec& theta, int segment_count,
                          std::uint64_t search_bound);

/// Same construction for a semigroup with verified minimal period
/// (a,-b) = k*(a0,-b0): exact multiples of (a,-b) are left intact, every
/// other pair is broken, so the window symmetries are exactly the multiples
/// of (a,-b) in range.
Tail build_minimal_symmetry_tail(const ThetaSpec& theta,
                                 std::pair<int, int> minimal_period,
                                 int segment_count,
                                 std::uint64_t search_bound);

}  // namespace rank2
