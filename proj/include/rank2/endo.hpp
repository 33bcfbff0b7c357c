#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rank2/theta.hpp"

namespace rank2 {

/// A total map {1..d} -> {1..d}.
struct EndoMap {
  int domain = 0;
  std::vector<int> table;  // table[x-1] = image of x, 1-based

  static EndoMap identity(int d);

  int operator()(int x) const { return table[x - 1]; }

  int rank() const;  // size of the image
  bool is_constant() const { return rank() == 1; }
  bool is_idempotent() const;

  /// Sorted image of t^k for k >= domain; t permutes this set.
  std::vector<int> eventual_image() const;

  /// Sorted image as a set.
  std::vector<int> image_set() const;

  friend auto operator<=>(const EndoMap&, const EndoMap&) = default;
};

/// compose(f, g)(x) = f(g(x))
EndoMap compose(const EndoMap& outer, const EndoMap& inner);

/// The coordinate maps of theta: theta(i,j) = (beta_j(i), alpha_i(j)).
struct CoordinateMaps {
  std::vector<EndoMap> alphas;  // m maps on {1..n}
  std::vector<EndoMap> betas;   // n maps on {1..m}
};

CoordinateMaps extract_maps(const ThetaSpec& theta);

/// word = (i_1, ..., i_k) composes as maps[i_1] o ... o maps[i_k],
/// first index outermost. The word must be non-empty.
EndoMap compose_along(std::span<const EndoMap> maps, std::span<const int> word);

/// Finite semigroup generated by the maps under composition, found
/// breadth-first so every element carries a shortest witness word.
struct MonoidClosure {
  std::vector<EndoMap> elements;
  std::vector<std::vector<int>> witnesses;  // generator word per element

  std::size_t size() const { return elements.size(); }
};

MonoidClosure closure(const std::vector<EndoMap>& generators);

/// A subset B with |B| >= 2 mapped onto itself by the composition along
/// `word`; its existence certifies aperiodicity of the semigroup.
struct AperiodicityCertificate {
  enum class Side { Alpha, Beta };
  Side side;
  std::vector<int> fixed_set;  // B, sorted
  std::vector<int> word;       // non-empty generator word
  EndoMap map;                 // the composition along word
};

std::optional<AperiodicityCertificate> find_certificate(const ThetaSpec& theta);

/// Same search restricted to one generating family.
std::optional<AperiodicityCertificate> find_certificate_side(
    const std::vector<EndoMap>& generators, AperiodicityCertificate::Side side);

/// Smallest k <= k_max such that every length-k composition of the
/// generators is constant; nullopt when no such k exists (detected by a
/// repeating layer of composition values) or k_max is reached first.
std::optional<int> constancy_depth(const std::vector<EndoMap>& generators,
                                   int k_max);

}  // namespace rank2
