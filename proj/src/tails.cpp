#include "rank2/tails.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rank2/periodicity.hpp"

namespace rank2 {

namespace {

// bubble the leftmost letter of the wanted color to the front and pop it
int extract_front(const ThetaSpec& theta, std::vector<Letter>& buf, Color c) {
  std::size_t k = 0;
  while (k < buf.size() && buf[k].color != c) ++k;
  if (k == buf.size())
    throw std::logic_error("extract_front: color not present");
  for (std::size_t t = k; t > 0; --t) {
    Letter& a = buf[t - 1];
    Letter& b = buf[t];
    if (c == Color::E) {
      auto [i0, j0] = swap_fe(theta, a.index, b.index);
      a = le(i0);
      b = lf(j0);
    } else {
      auto [jp, ip] = swap_ef(theta, a.index, b.index);
      a = lf(jp);
      b = le(ip);
    }
  }
  int idx = buf.front().index;
  buf.erase(buf.begin());
  return idx;
}

Word concat_segments(const std::vector<Word>& segments) {
  Word w;
  for (const Word& s : segments) w.append(s);
  return w;
}

void check_letters(const ThetaSpec& theta, const Word& w) {
  for (const Letter& l : w.letters()) {
    int bound = l.color == Color::E ? theta.m() : theta.n();
    if (l.index < 1 || l.index > bound)
      throw std::invalid_argument("tail: letter out of range for this theta");
  }
}

}  // namespace

Tail Tail::eventually_periodic(std::vector<TailBlock> preperiod,
                               std::vector<TailBlock> period) {
  if (period.empty())
    throw std::invalid_argument("tail: period must be non-empty");
  Tail t;
  t.preperiod_ = std::move(preperiod);
  t.period_ = std::move(period);
  t.description_ = "eventually periodic";
  return t;
}

Tail Tail::generated_prefix(std::vector<Word> segments,
                            std::string description) {
  Tail t;
  t.prefix_ = std::move(segments);
  t.description_ = std::move(description);
  return t;
}

const std::vector<Word>& Tail::segments() const {
  if (!prefix_) throw std::logic_error("tail: not a generated prefix");
  return *prefix_;
}

std::optional<Degree> Tail::finite_degree() const {
  if (!prefix_) return std::nullopt;
  return concat_segments(*prefix_).degree();
}

std::vector<TailBlock> Tail::blocks(const ThetaSpec& theta, int T) const {
  if (T < 1) throw std::invalid_argument("tail: T must be positive");
  std::vector<TailBlock> out;
  out.reserve(T);
  if (!prefix_) {
    for (int k = 0; k < T; ++k) {
      const TailBlock& b =
          k < static_cast<int>(preperiod_.size())
              ? preperiod_[k]
              : period_[(k - preperiod_.size()) % period_.size()];
      if (b.e < 1 || b.e > theta.m() || b.f < 1 || b.f > theta.n())
        throw std::invalid_argument("tail: block out of range for this theta");
      out.push_back(b);
    }
    return out;
  }
  Word w = concat_segments(*prefix_);
  check_letters(theta, w);
  Degree d = w.degree();
  if (d.e < T || d.f < T)
    throw std::invalid_argument(
        "tail: generated prefix is too short for the requested window");
  ColorPattern pattern;
  pattern.reserve(w.size());
  for (int k = 0; k < T; ++k) {
    pattern.push_back(Color::E);
    pattern.push_back(Color::F);
  }
  pattern.insert(pattern.end(), d.e - T, Color::E);
  pattern.insert(pattern.end(), d.f - T, Color::F);
  Word alt = refactor(theta, w, pattern);
  for (int k = 0; k < T; ++k)
    out.push_back(TailBlock{alt[2 * k].index, alt[2 * k + 1].index});
  return out;
}

Tail standard_form(const ThetaSpec& theta, const std::vector<Letter>& preperiod,
                   const std::vector<Letter>& period,
                   std::size_t state_limit) {
  if (period.empty())
    throw std::invalid_argument("standard_form: empty period");
  bool has_e = false, has_f = false;
  for (const Letter& l : period) (l.color == Color::E ? has_e : has_f) = true;
  if (!has_e || !has_f)
    throw std::invalid_argument(
        "standard_form: the periodic part lacks one color");
  check_letters(theta, Word(preperiod));
  check_letters(theta, Word(period));

  std::vector<Letter> buf;
  std::size_t consumed = 0;
  auto pull = [&] {
    const Letter& l =
        consumed < preperiod.size()
            ? preperiod[consumed]
            : period[(consumed - preperiod.size()) % period.size()];
    buf.push_back(l);
    ++consumed;
  };
  auto has_color = [&](Color c) {
    return std::any_of(buf.begin(), buf.end(),
                       [c](const Letter& l) { return l.color == c; });
  };

  // run the block-extraction machine until its state recurs; the state is
  // the leftover buffer plus the position inside the period
  std::vector<TailBlock> blocks;
  std::map<std::string, std::size_t> seen;
  while (true) {
    if (consumed >= preperiod.size()) {
      std::ostringstream key;
      key << (consumed - preperiod.size()) % period.size() << '|'
          << Word(buf).str();
      auto [it, inserted] = seen.emplace(key.str(), blocks.size());
      if (!inserted) {
        std::size_t start = it->second;
        return Tail::eventually_periodic(
            std::vector<TailBlock>(blocks.begin(), blocks.begin() + start),
            std::vector<TailBlock>(blocks.begin() + start, blocks.end()));
      }
      if (seen.size() > state_limit)
        throw LimitError(
            "standard_form: block structure did not stabilize within the "
            "state limit");
    }
    TailBlock blk;
    while (!has_color(Color::E)) pull();
    blk.e = extract_front(theta, buf, Color::E);
    while (!has_color(Color::F)) pull();
    blk.f = extract_front(theta, buf, Color::F);
    blocks.push_back(blk);
  }
}

LatticeWindow::LatticeWindow(int depth, std::vector<int> i_grid,
                             std::vector<int> j_grid)
    : depth_(depth), i_grid_(std::move(i_grid)), j_grid_(std::move(j_grid)) {
  if (depth_ < 1 ||
      i_grid_.size() != static_cast<std::size_t>(depth_) * (depth_ + 1) ||
      j_grid_.size() != static_cast<std::size_t>(depth_) * (depth_ + 1))
    throw std::invalid_argument("lattice window: malformed grids");
}

bool LatticeWindow::has_i(int s, int t) const {
  return s > -depth_ && s <= 0 && t >= -depth_ && t <= 0;
}

bool LatticeWindow::has_j(int s, int t) const {
  return s >= -depth_ && s <= 0 && t > -depth_ && t <= 0;
}

int LatticeWindow::i(int s, int t) const {
  if (!has_i(s, t)) throw std::out_of_range("lattice window: i(s,t)");
  return i_grid_[static_cast<std::size_t>(s + depth_ - 1) * (depth_ + 1) +
                 (t + depth_)];
}

int LatticeWindow::j(int s, int t) const {
  if (!has_j(s, t)) throw std::out_of_range("lattice window: j(s,t)");
  return j_grid_[static_cast<std::size_t>(s + depth_) * depth_ +
                 (t + depth_ - 1)];
}

bool LatticeWindow::square_consistent(const ThetaSpec& theta) const {
  for (int s = -depth_ + 1; s <= 0; ++s)
    for (int t = -depth_ + 1; t <= 0; ++t)
      if (theta.forward(i(s, t), j(s - 1, t)) !=
          IndexPair{i(s, t - 1), j(s, t)})
        return false;
  return true;
}

bool LatticeWindow::diagonal_consistent(
    const std::vector<TailBlock>& blocks) const {
  for (int s = -depth_ + 1; s <= 0; ++s) {
    if (i(s, s) != blocks[-s].e) return false;
    if (j(s - 1, s) != blocks[-s].f) return false;
  }
  return true;
}

std::string LatticeWindow::ascii() const {
  std::ostringstream os;
  for (int t = 0; t >= -depth_; --t) {
    for (int s = -depth_; s <= 0; ++s) {
      if (has_i(s, t))
        os << 'e' << i(s, t);
      else
        os << "  ";
      if (has_j(s, t))
        os << 'f' << j(s, t);
      else
        os << "  ";
      os << ' ';
    }
    os << '\n';
  }
  return os.str();
}

LatticeWindow lattice_window(const ThetaSpec& theta, const Tail& tail, int T) {
  if (T < 1) throw std::invalid_argument("lattice_window: T must be positive");
  std::vector<TailBlock> blocks = tail.blocks(theta, T);
  Word word;
  for (const TailBlock& b : blocks) {
    word.push_back(le(b.e));
    word.push_back(lf(b.f));
  }

  std::vector<int> i_grid(static_cast<std::size_t>(T) * (T + 1));
  std::vector<int> j_grid(static_cast<std::size_t>(T) * (T + 1));
  ColorPattern pattern(2 * T);

  // the label at (s,t) is the letter isolated right after a prefix of
  // degree (|s|,|t|); the prefix is the part of the word that maps the
  // vertex back to the origin
  auto build = [&](int as, int at, Color c) {
    std::size_t pos = 0;
    for (int k = 0; k < as; ++k) pattern[pos++] = Color::E;
    for (int k = 0; k < at; ++k) pattern[pos++] = Color::F;
    pattern[pos++] = c;
    int e_left = T - as - (c == Color::E ? 1 : 0);
    int f_left = T - at - (c == Color::F ? 1 : 0);
    for (int k = 0; k < e_left; ++k) pattern[pos++] = Color::E;
    for (int k = 0; k < f_left; ++k) pattern[pos++] = Color::F;
    return refactor(theta, word, pattern)[as + at].index;
  };

  for (int s = -T + 1; s <= 0; ++s)
    for (int t = -T; t <= 0; ++t)
      i_grid[static_cast<std::size_t>(s + T - 1) * (T + 1) + (t + T)] =
          build(-s, -t, Color::E);
  for (int s = -T; s <= 0; ++s)
    for (int t = -T + 1; t <= 0; ++t)
      j_grid[static_cast<std::size_t>(s + T) * T + (t + T - 1)] =
          build(-s, -t, Color::F);

  return LatticeWindow(T, std::move(i_grid), std::move(j_grid));
}

bool SymmetryReport::passes(int p, int q) const {
  return std::find(passing.begin(), passing.end(), std::pair{p, q}) !=
         passing.end();
}

bool SymmetryReport::passes_eventually(int p, int q) const {
  for (const auto& [ep, eq, tr] : eventual)
    if (ep == p && eq == q) return true;
  return false;
}

SymmetryReport detect_symmetries(const LatticeWindow& window, int p_max,
                                 int q_max) {
  const int T = window.depth();
  if (p_max < 0 || q_max < 0 || p_max >= T || q_max >= T)
    throw std::invalid_argument("detect_symmetries: bounds exceed the window");
  SymmetryReport rep;
  rep.depth = T;
  rep.p_max = p_max;
  rep.q_max = q_max;

  // (p,q) passes at a given trim when the data agrees with its shift on
  // every cell with s,t <= -trim whose shifted cell is in the window
  auto matches_at = [&](int p, int q, int trim) {
    for (int s = -T + 1; s <= -trim; ++s)
      for (int t = -T; t <= -trim; ++t)
        if (window.has_i(s + p, t + q) &&
            window.i(s + p, t + q) != window.i(s, t))
          return false;
    for (int s = -T; s <= -trim; ++s)
      for (int t = -T + 1; t <= -trim; ++t)
        if (window.has_j(s + p, t + q) &&
            window.j(s + p, t + q) != window.j(s, t))
          return false;
    return true;
  };

  for (int p = -p_max; p <= p_max; ++p)
    for (int q = -q_max; q <= q_max; ++q)
      for (int trim = 0; trim <= T - 2; ++trim)
        if (matches_at(p, q, trim)) {
          if (trim == 0) rep.passing.emplace_back(p, q);
          rep.eventual.emplace_back(p, q, trim);
          break;
        }
  return rep;
}

namespace {

// e-part of the FE normal form of e_u f_v
std::vector<int> e_of_fe(const ThetaSpec& th, const std::vector<int>& u,
                         const std::vector<int>& v) {
  Word w = Word::all_e(u);
  w.append(Word::all_f(v));
  return normal_form(th, w, NormalTarget::FE).e_indices();
}

// e-part of the EF normal form of f_v e_u
std::vector<int> e_of_ef(const ThetaSpec& th, const std::vector<int>& v,
                         const std::vector<int>& u) {
  Word w = Word::all_f(v);
  w.append(Word::all_e(u));
  return normal_form(th, w, NormalTarget::EF).e_indices();
}

Word efe_word(const std::vector<int>& u1, const std::vector<int>& v,
              const std::vector<int>& u2) {
  Word w = Word::all_e(u1);
  w.append(Word::all_f(v)).append(Word::all_e(u2));
  return w;
}

Word transpose_word(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const Letter& l : w.letters())
    out.push_back(l.color == Color::E ? lf(l.index) : le(l.index));
  return Word(std::move(out));
}

}  // namespace

BreakingSegment find_breaking_segment(const ThetaSpec& theta, int p, int q,
                                      std::uint64_t search_bound) {
  if (p < 1 || q < 1)
    throw std::invalid_argument(
        "find_breaking_segment: p, q must be positive");
  const int m = theta.m(), n = theta.n();
  auto mp = checked_pow(static_cast<std::uint64_t>(m), p);
  auto nq = checked_pow(static_cast<std::uint64_t>(n), q);
  if (!mp || !nq || *mp > search_bound / *nq)
    return {BreakingSegment::Status::BoundExceeded, std::nullopt};
  const std::uint64_t M = *mp, N = *nq;

  // A tail containing e_{u1} f_v e_{u2} carries, at the two vertices the
  // shift (p,-q) relates, the blue chains
  //    A = e-part FE-NF(e_{u1} f_v)   and   B = e-part EF-NF(f_v e_{u2});
  // A != B rules the shift out. If no such triple exists on either the
  // blue or the (color-swapped) red side, the shift is a genuine symmetry.
  const std::vector<int> u_ref = unpack_word(0, m, p);  // 1^p
  for (std::uint64_t v_id = 0; v_id < N; ++v_id) {
    std::vector<int> v = unpack_word(v_id, n, q);
    std::vector<int> a_ref = e_of_fe(theta, u_ref, v);
    std::vector<int> b_ref = e_of_ef(theta, v, u_ref);
    if (a_ref != b_ref)
      return {BreakingSegment::Status::Found, efe_word(u_ref, v, u_ref)};
    for (std::uint64_t u_id = 1; u_id < M; ++u_id) {
      std::vector<int> u = unpack_word(u_id, m, p);
      if (e_of_fe(theta, u, v) != a_ref)
        return {BreakingSegment::Status::Found, efe_word(u, v, u_ref)};
      if (e_of_ef(theta, v, u) != b_ref)
        return {BreakingSegment::Status::Found, efe_word(u_ref, v, u)};
    }
  }

  // mirrored search through the color-swapped semigroup; segments translate
  // back with the colors exchanged
  ThetaSpec tr = theta.transpose();
  BreakingSegment mirrored = [&] {
    const std::vector<int> v_ref = unpack_word(0, n, q);
    for (std::uint64_t u_id = 0; u_id < M; ++u_id) {
      std::vector<int> u = unpack_word(u_id, m, p);
      std::vector<int> a_ref = e_of_fe(tr, v_ref, u);
      std::vector<int> b_ref = e_of_ef(tr, u, v_ref);
      if (a_ref != b_ref)
        return BreakingSegment{BreakingSegment::Status::Found,
                               efe_word(v_ref, u, v_ref)};
      for (std::uint64_t v_id = 1; v_id < N; ++v_id) {
        std::vector<int> v = unpack_word(v_id, n, q);
        if (e_of_fe(tr, v, u) != a_ref)
          return BreakingSegment{BreakingSegment::Status::Found,
                                 efe_word(v, u, v_ref)};
        if (e_of_ef(tr, u, v) != b_ref)
          return BreakingSegment{BreakingSegment::Status::Found,
                                 efe_word(v_ref, u, v)};
      }
    }
    return BreakingSegment{BreakingSegment::Status::HoldsAsSymmetry,
                           std::nullopt};
  }();
  if (mirrored.status == BreakingSegment::Status::Found)
    return {BreakingSegment::Status::Found, transpose_word(*mirrored.segment)};
  return mirrored;
}

namespace {

// canonical shift representatives with max(|p|,|q|) <= r:
// p > 0 with any q, or p = 0 with q > 0
std::vector<std::pair<int, int>> shift_shell(int r) {
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p <= r; ++p)
    for (int q = -r; q <= r; ++q) {
      if (p == 0 && q <= 0) continue;
      out.emplace_back(p, q);
    }
  return out;
}

Word plain_segment(int p, int q) {
  // p*q >= 0: e_1^p f_1^|q| e_2, or f_1^|q| f_2 when p = 0
  Word w;
  if (p > 0) {
    for (int k = 0; k < p; ++k) w.push_back(le(1));
    for (int k = 0; k < std::abs(q); ++k) w.push_back(lf(1));
    w.push_back(le(2));
  } else {
    for (int k = 0; k < std::abs(q); ++k) w.push_back(lf(1));
    w.push_back(lf(2));
  }
  return w;
}

Tail build_tail(const ThetaSpec& theta, int segment_count,
                std::uint64_t search_bound,
                const std::function<bool(int, int)>& skip_mixed,
                const std::string& label) {
  if (theta.m() < 2 || theta.n() < 2)
    throw std::invalid_argument("tail builder: needs m, n >= 2");
  if (segment_count < 1)
    throw std::invalid_argument(
        "tail builder: segment_count must be positive");
  std::vector<Word> segments;
  std::ostringstream notes;
  notes << label;
  for (int r = 1; static_cast<int>(segments.size()) < segment_count; ++r) {
    for (auto [p, q] : shift_shell(r)) {
      if (static_cast<int>(segments.size()) >= segment_count) break;
      if (p * q >= 0) {
        segments.push_back(plain_segment(p, q));
        continue;
      }
      if (skip_mixed(p, -q)) continue;
      BreakingSegment bs = find_breaking_segment(theta, p, -q, search_bound);
      switch (bs.status) {
        case BreakingSegment::Status::Found:
          segments.push_back(*bs.segment);
          break;
        case BreakingSegment::Status::HoldsAsSymmetry:
          notes << "; (" << p << "," << q << ") holds, skipped";
          break;
        case BreakingSegment::Status::BoundExceeded:
          notes << "; (" << p << "," << q
                << ") search bound exceeded, skipped";
          break;
      }
    }
  }
  return Tail::generated_prefix(std::move(segments), notes.str());
}

}  // namespace

Tail build_aperiodic_tail(const ThetaSpec& theta, int segment_count,
                          std::uint64_t search_bound) {
  return build_tail(
      theta, segment_count, search_bound, [](int, int) { return false; },
      "aperiodic prefix");
}

Tail build_minimal_symmetry_tail(const ThetaSpec& theta,
                                 std::pair<int, int> minimal_period,
                                 int segment_count,
                                 std::uint64_t search_bound) {
  auto prim = primitive_pair(theta.m(), theta.n());
  if (!prim)
    throw std::invalid_argument(
        "build_minimal_symmetry_tail: m^a = n^b has no solutions");
  auto [a0, b0] = *prim;
  auto [a, b] = minimal_period;
  if (a <= 0 || b <= 0 || a % a0 != 0 || b % b0 != 0 || a / a0 != b / b0)
    throw std::invalid_argument(
        "build_minimal_symmetry_tail: period is not a multiple of the "
        "primitive pair");
  const int k = a / a0;
  auto skip = [a0 = a0, b0 = b0, k](int p, int q) {
    // exact multiples of the minimal period stay intact
    if (p % a0 != 0 || q % b0 != 0) return false;
    int l = p / a0;
    return l == q / b0 && l % k == 0;
  };
  std::ostringstream label;
  label << "minimal-symmetry prefix for period (" << a << ",-" << b << ")";
  return build_tail(theta, segment_count, search_bound, skip, label.str());
}

}  // namespace rank2
