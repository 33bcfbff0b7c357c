#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rank2/endo.hpp"
#include "rank2/theta.hpp"
#include "rank2/words.hpp"

namespace rank2 {

/// Raised when an exhaustive enumeration would exceed its configured limit.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// m^a, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, int exp);

/// Exact test of m^a == n^b via prime factorizations (no overflow).
bool equal_powers(int m, int a, int n, int b);

/// Smallest positive (a0, b0) with m^{a0} = n^{b0}; nullopt when no positive
/// solution exists. Every solution is then (k*a0, k*b0). Requires m, n >= 2.
std::optional<std::pair<int, int>> primitive_pair(int m, int n);

/// A candidate period (a, -b); requires m^a = n^b.
struct PeriodCandidate {
  int a = 0;
  int b = 0;

  static PeriodCandidate make(const ThetaSpec& theta, int a, int b);
};

/// The bijection gamma: m^a -> n^b witnessing (a,-b)-periodicity, stored as
/// packed-word tables. Words pack big-endian: the leftmost letter is the
/// most significant digit, letter i becoming digit i-1, so numeric order on
/// packed values is lexicographic order on words.
struct GammaTable {
  int m = 0, n = 0, a = 0, b = 0;
  std::vector<std::uint32_t> forward;   // indexed by packed u
  std::vector<std::uint32_t> backward;  // indexed by packed v

  std::vector<int> apply(const std::vector<int>& u_letters) const;
  std::vector<int> apply_inverse(const std::vector<int>& v_letters) const;
  bool mutually_inverse() const;

  /// Samples pairs (u, v) and confirms the defining relation
  /// e_u f_v = f_{gamma(u)} e_{gamma^{-1}(v)} on each.
  bool defining_relation_spot_check(const ThetaSpec& theta,
                                    std::uint64_t samples,
                                    std::uint64_t seed = 1) const;
};

std::uint64_t pack_word(const std::vector<int>& letters, int base);
std::vector<int> unpack_word(std::uint64_t id, int base, int len);

enum class WitnessKind {
  ForwardWrap,      // forward pass failed to return to (j0, u0)
  InconsistentV0,   // two starters j0 produced different v0 for the same u0
  Collision,        // two u0 produced the same v0
  ReverseWrap,      // reverse pass failed to return to (i0, v0)
  ReverseRecovery,  // reverse pass recovered a u0 different from gamma's
  OracleFPart,      // f-part of NF(e_u f_v) depends on v
  OracleEPart,      // e-part of NF(e_u f_v) depends on u
  OracleInverse,    // the two halves are not mutually inverse
};

std::string witness_kind_name(WitnessKind k);

/// A reproducible counterexample. Replaying the recorded pass from the
/// recorded start deterministically reproduces expected vs actual.
struct Witness {
  WitnessKind kind;
  int a = 0, b = 0;
  std::vector<int> u0, v0;  // letters; whichever apply to the kind
  int j0 = 0, i0 = 0;       // starting letter, when the kind has one
  int step = -1;            // failing step or position, when meaningful
  std::vector<int> expected, actual;
  std::vector<int> other_u;  // collision partner

  std::string describe() const;

  friend bool operator==(const Witness&, const Witness&) = default;
};

enum class VerdictTag {
  Periodic,
  NotPeriodic,
  NoCandidates,
  UndecidedUpToBound,
  DegeneratePeriod,
};

std::string verdict_tag_name(VerdictTag tag);

struct SampledEvidence {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct PeriodicityVerdict {
  VerdictTag tag;
  // (a, b) for period (a, -b); (0, order) / (order, 0) for degenerate sides
  std::optional<std::pair<std::int64_t, std::int64_t>> period;
  std::shared_ptr<const GammaTable> gamma;
  std::optional<Witness> witness;
  std::optional<AperiodicityCertificate> certificate;
  std::optional<SampledEvidence> sampled;
  int k_bound = 0;  // for UndecidedUpToBound

  std::string summary() const;
};

struct ForwardPassResult {
  std::vector<int> v0;  // j_1 ... j_b
  bool ok = false;
  int final_j = 0;           // j after the wrap-around step
  std::vector<int> final_u;  // u after the wrap-around step
};

/// Runs the b+1 steps  e_{u_t} f_{j_t} = f_{j_{t+1}} e_{u_{t+1}}  starting
/// from (u0, j0); ok iff the final step returns to j0 and u0.
ForwardPassResult forward_pass(const ThetaSpec& theta, int a, int b,
                               const std::vector<int>& u0, int j0);

struct ReversePassResult {
  std::vector<int> u0;  // i_a i_{a-1} ... i_1, assembled in reversed order
  bool ok = false;
  int final_i = 0;
  std::vector<int> final_v;
};

/// Runs the a+1 steps  e_{i_t} f_{v_t} = f_{v_{t+1}} e_{i_{t+1}}  starting
/// from (v0, i0); ok iff the final step returns to i0 and v0.
ReversePassResult reverse_pass(const ThetaSpec& theta, int a, int b,
                               const std::vector<int>& v0, int i0);

struct CheckOptions {
  enum class Mode { Exhaustive, Sampled };
  Mode mode = Mode::Exhaustive;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int workers = 1;  // 0 = hardware concurrency
  std::uint64_t enumeration_limit = std::uint64_t{1} << 26;
};

/// Single-pass periodicity test. Exhaustive mode enumerates every u0 in
/// lexicographic order, runs the forward pass for every starter j0, records
/// gamma with collision detection, then runs the reverse pass for every
/// recorded v0 and every starter i0. The reported witness is deterministic:
/// the smallest failing u0 (forward kinds), else the smallest collided v0,
/// else the smallest failing v0 (reverse kinds), independent of worker
/// count. Sampled mode draws u0 words from a counter-based generator; a
/// clean run is reported as UndecidedUpToBound with the evidence attached,
/// never as Periodic.
PeriodicityVerdict check_period(const ThetaSpec& theta,
                                const PeriodCandidate& candidate,
                                const CheckOptions& opts = {});

struct MinimalPeriodOptions {
  std::uint64_t samples = 100000;  // sampled pre-filter before exhaustive
  std::uint64_t seed = 1;
  int workers = 1;
  std::uint64_t enumeration_limit = std::uint64_t{1} << 26;
};

/// Degenerate sides short-circuit to the permutation order; otherwise tests
/// candidates k*(a0,b0) for k = 1..k_max, returning the first Periodic.
/// When the aperiodicity certificate exists the search is skipped and
/// NotPeriodic is returned with the certificate attached.
PeriodicityVerdict minimal_period(const ThetaSpec& theta, int k_max,
                                  const MinimalPeriodOptions& opts = {});

struct ShiftCheckMode {
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
};

/// Verifies e_{i0} f_{gamma(i1..ia)} = f_{gamma(i0..i(a-1))} e_{ia} over all
/// (or sampled) tuples in m^{a+1}, and the dual identity over n^{b+1}.
bool gamma_shift_check(const ThetaSpec& theta, const GammaTable& gamma,
                       const ShiftCheckMode& mode = {});

struct HalfSymmetry {
  std::pair<int, int> period;        // (a*k, b*k)
  std::uint64_t order = 0;           // k = order of beta o alpha
  std::vector<std::uint32_t> alpha;  // packed m^a -> packed n^b
  std::vector<std::uint32_t> beta;   // packed n^b -> packed m^a
};

/// Sufficient test: if NF(e_u f_v) splits as f_{alpha(u)} e_{beta(v)} for
/// all pairs, the semigroup is (a*k, -b*k)-periodic for k = order(beta o
/// alpha).
std::optional<HalfSymmetry> half_symmetry(const ThetaSpec& theta,
                                          const PeriodCandidate& candidate,
                                          std::uint64_t limit = std::uint64_t{1}
                                                                << 22);

/// Independent oracle: builds gamma by demanding that the f-part of
/// NF(e_u f_v) not depend on v and the e-part not depend on u, over all
/// m^a * n^b pairs, then checks bijectivity and mutual inverseness.
PeriodicityVerdict brute_force_oracle(const ThetaSpec& theta,
                                      const PeriodCandidate& candidate,
                                      std::uint64_t limit = std::uint64_t{1}
                                                            << 22);

struct SubTwoGraphResult {
  std::optional<ThetaSpec> induced;
  // violating pair (u, v) and where it lands, when not closed
  std::optional<std::pair<std::vector<int>, std::vector<int>>> violation;
};

/// Checks that the block generators {e_u : u in U} and {f_v : v in V}
/// (|u| = p, |v| = q) are closed under the commutation relations, and
/// returns the induced |U| x |V| permutation; block indices follow the
/// order of U and V.
SubTwoGraphResult sub_two_graph(const ThetaSpec& theta, int p, int q,
                                const std::vector<std::vector<int>>& U,
                                const std::vector<std::vector<int>>& V);

/// Re-runs the recorded pass and confirms it reproduces the witness.
bool replay_witness(const ThetaSpec& theta, const Witness& w);

}  // namespace rank2
