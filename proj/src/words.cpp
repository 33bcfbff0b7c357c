#include "rank2/words.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace rank2 {

char color_char(Color c) { return c == Color::E ? 'e' : 'f'; }

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  std::size_t k = 0;
  while (k < text.size()) {
    char c = text[k];
    if (c == ' ' || c == '.' || c == '\t') {
      ++k;
      continue;
    }
    Color color;
    if (c == 'e' || c == 'E') {
      color = Color::E;
    } else if (c == 'f' || c == 'F') {
      color = Color::F;
    } else {
      throw std::invalid_argument("word: unexpected character '" +
                                  std::string(1, c) + "'");
    }
    ++k;
    std::size_t start = k;
    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])))
      ++k;
    if (k == start) throw std::invalid_argument("word: letter without index");
    int idx = std::stoi(std::string(text.substr(start, k - start)));
    if (idx < 1) throw std::invalid_argument("word: indices are 1-based");
    letters.push_back(Letter{color, idx});
  }
  return Word(std::move(letters));
}

Word Word::all_e(const std::vector<int>& indices) {
  std::vector<Letter> ls;
  ls.reserve(indices.size());
  for (int i : indices) ls.push_back(le(i));
  return Word(std::move(ls));
}

Word Word::all_f(const std::vector<int>& indices) {
  std::vector<Letter> ls;
  ls.reserve(indices.size());
  for (int j : indices) ls.push_back(lf(j));
  return Word(std::move(ls));
}

Degree Word::degree() const {
  Degree d;
  for (const Letter& l : letters_)
    (l.color == Color::E ? d.e : d.f) += 1;
  return d;
}

ColorPattern Word::pattern() const {
  ColorPattern p;
  p.reserve(letters_.size());
  for (const Letter& l : letters_) p.push_back(l.color);
  return p;
}

Word& Word::append(const Word& other) {
  letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
  return *this;
}

std::vector<int> Word::e_indices() const {
  std::vector<int> out;
  for (const Letter& l : letters_)
    if (l.color == Color::E) out.push_back(l.index);
  return out;
}

std::vector<int> Word::f_indices() const {
  std::vector<int> out;
  for (const Letter& l : letters_)
    if (l.color == Color::F) out.push_back(l.index);
  return out;
}

std::string Word::str() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    if (k) os << '.';
    os << color_char(letters_[k].color) << letters_[k].index;
  }
  return os.str();
}

Degree degree(const Word& w) { return w.degree(); }

}  // namespace rank2
