#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace rank2 {

/// The two generator families: blue letters e_1..e_m and red letters f_1..f_n.
enum class Color : std::uint8_t { E, F };

char color_char(Color c);

/// A single generator. Indices are 1-based throughout, matching the usual
/// presentation of the semigroup.
struct Letter {
  Color color;
  int index;

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline Letter le(int i) { return Letter{Color::E, i}; }
inline Letter lf(int j) { return Letter{Color::F, j}; }

/// Bidegree of a word: number of e-letters and number of f-letters.
/// Invariant under the commutation relations.
struct Degree {
  int e = 0;
  int f = 0;

  friend auto operator<=>(const Degree&, const Degree&) = default;
};

using ColorPattern = std::vector<Color>;

/// A finite word over the generators. The empty word is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  /// Parses forms like "e1 f2 e2", "e1.f12", "f3e1" (index may be multi-digit).
  static Word parse(std::string_view text);

  /// All-e word from 1-based indices, in the given order.
  static Word all_e(const std::vector<int>& indices);
  /// All-f word from 1-based indices.
  static Word all_f(const std::vector<int>& indices);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t k) const { return letters_[k]; }

  Degree degree() const;
  ColorPattern pattern() const;

  Word& push_back(Letter l) {
    letters_.push_back(l);
    return *this;
  }
  Word& append(const Word& other);

  /// 1-based indices of the e-letters, in word order.
  std::vector<int> e_indices() const;
  /// 1-based indices of the f-letters, in word order.
  std::vector<int> f_indices() const;

  std::string str() const;

  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

Degree degree(const Word& w);

}  // namespace rank2
