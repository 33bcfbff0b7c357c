#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rank2/words.hpp"

namespace rank2 {

using IndexPair = std::pair<int, int>;

/// The permutation theta of {1..m} x {1..n} defining the commutation
/// relations  e_i f_j = f_{j'} e_{i'}  where  theta(i,j) = (i',j').
///
/// Immutable after construction; all operations on it are pure.
class ThetaSpec {
 public:
  /// `forward_pairs[(i-1)*n + (j-1)]` is theta(i,j). Must be a bijection.
  ThetaSpec(int m, int n, const std::vector<IndexPair>& forward_pairs);

  static ThetaSpec identity(int m, int n);

  /// Each cycle maps every listed pair to the next, the last to the first.
  /// Pairs absent from all cycles are fixed points; duplicates are an error.
  static ThetaSpec from_cycles(int m, int n,
                               const std::vector<std::vector<IndexPair>>& cycles);

  /// Parses the line-oriented description:
  ///   m <int>
  ///   n <int>
  ///   cycle (i1,j1) (i2,j2) ... (ik,jk)
  /// '#' starts a comment; blank lines are ignored.
  static ThetaSpec parse(std::string_view text);
  static ThetaSpec load_file(const std::string& path);

  int m() const { return m_; }
  int n() const { return n_; }

  IndexPair forward(int i, int j) const;   // theta(i,j)
  IndexPair backward(int i, int j) const;  // theta^{-1}(i,j)

  /// Color-swapped semigroup: generators renamed so the f's play the role of
  /// the e's. Its defining permutation is  (j,i) -> (j0,i0)  where
  /// theta(i0,j0) = (i,j).
  ThetaSpec transpose() const;

  /// Order of theta as a permutation of the m*n pairs.
  std::uint64_t permutation_order() const;

  /// Fixed-format serialization of the forward table, used for digests.
  std::string canonical() const;

  /// Zero-based tables for hot loops, indexed by i0*n + j0.
  const std::uint8_t* fwd_e0() const { return fwd_e_.data(); }
  const std::uint8_t* fwd_f0() const { return fwd_f_.data(); }
  const std::uint8_t* bwd_e0() const { return bwd_e_.data(); }
  const std::uint8_t* bwd_f0() const { return bwd_f_.data(); }

  friend bool operator==(const ThetaSpec& a, const ThetaSpec& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.fwd_e_ == b.fwd_e_ &&
           a.fwd_f_ == b.fwd_f_;
  }

 private:
  int m_ = 0;
  int n_ = 0;
  std::vector<std::uint8_t> fwd_e_, fwd_f_, bwd_e_, bwd_f_;
};

/// e_i f_j = f_{j'} e_{i'}: returns (j', i').
IndexPair swap_ef(const ThetaSpec& theta, int i, int j);

/// f_j e_i = e_{i0} f_{j0}: returns (i0, j0), i.e. theta^{-1}(i,j) read back.
IndexPair swap_fe(const ThetaSpec& theta, int j, int i);

enum class NormalTarget { EF, FE };

/// Unique factorization with all e's first (EF) or all f's first (FE).
Word normal_form(const ThetaSpec& theta, const Word& w, NormalTarget target);

/// Unique factorization of w with the prescribed color pattern.
/// The pattern must have the same e-count and f-count as degree(w).
Word refactor(const ThetaSpec& theta, const Word& w, const ColorPattern& pattern);

}  // namespace rank2
