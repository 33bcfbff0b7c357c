#include "rank2/theta.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rank2 {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("theta: " + msg);
}

}  // namespace

ThetaSpec::ThetaSpec(int m, int n, const std::vector<IndexPair>& forward_pairs)
    : m_(m), n_(n) {
  if (m < 1 || n < 1) fail("m and n must be at least 1");
  if (m == 1 && n == 1) fail("m = n = 1 is not admitted");
  if (m > 255 || n > 255) fail("generator counts above 255 are not supported");
  const std::size_t mn = static_cast<std::size_t>(m) * n;
  if (forward_pairs.size() != mn) fail("forward table has the wrong size");

  fwd_e_.assign(mn, 0);
  fwd_f_.assign(mn, 0);
  bwd_e_.assign(mn, 0);
  bwd_f_.assign(mn, 0);
  std::vector<bool> hit(mn, false);
  for (std::size_t k = 0; k < mn; ++k) {
    auto [ip, jp] = forward_pairs[k];
    if (ip < 1 || ip > m || jp < 1 || jp > n) fail("image index out of range");
    std::size_t img = static_cast<std::size_t>(ip - 1) * n + (jp - 1);
    if (hit[img]) fail("forward table is not a bijection");
    hit[img] = true;
    fwd_e_[k] = static_cast<std::uint8_t>(ip - 1);
    fwd_f_[k] = static_cast<std::uint8_t>(jp - 1);
    bwd_e_[img] = static_cast<std::uint8_t>(k / n);
    bwd_f_[img] = static_cast<std::uint8_t>(k % n);
  }
}

ThetaSpec ThetaSpec::identity(int m, int n) {
  std::vector<IndexPair> pairs;
  pairs.reserve(static_cast<std::size_t>(m) * n);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) pairs.emplace_back(i, j);
  return ThetaSpec(m, n, pairs);
}

ThetaSpec ThetaSpec::from_cycles(
    int m, int n, const std::vector<std::vector<IndexPair>>& cycles) {
  if (m < 1 || n < 1) fail("m and n must be at least 1");
  std::vector<IndexPair> pairs;
  pairs.reserve(static_cast<std::size_t>(m) * n);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) pairs.emplace_back(i, j);
  std::vector<bool> used(static_cast<std::size_t>(m) * n, false);
  for (const auto& cyc : cycles) {
    if (cyc.empty()) fail("empty cycle");
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      auto [i, j] = cyc[k];
      if (i < 1 || i > m || j < 1 || j > n) fail("cycle index out of range");
      std::size_t at = static_cast<std::size_t>(i - 1) * n + (j - 1);
      if (used[at]) fail("pair appears in two cycles");
      used[at] = true;
      pairs[at] = cyc[(k + 1) % cyc.size()];
    }
  }
  return ThetaSpec(m, n, pairs);
}

ThetaSpec ThetaSpec::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int m = -1, n = -1;
  std::vector<std::vector<IndexPair>> cycles;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    // split the line into whitespace- and ';'-separated statements
    std::vector<std::string> stmts;
    {
      std::string cur;
      for (char c : line) {
        if (c == ';') {
          stmts.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      stmts.push_back(cur);
    }
    for (std::string stmt : stmts) {
      std::istringstream ls(stmt);
      std::string head;
      if (!(ls >> head)) continue;
      auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
      if (head == "m" || head == "n") {
        int value;
        if (!(ls >> value)) fail("expected integer after '" + head + "'" + where());
        std::string extra;
        if (ls >> extra) fail("trailing tokens after '" + head + "'" + where());
        int& slot = (head == "m") ? m : n;
        if (slot != -1) fail("duplicate '" + head + "' line" + where());
        slot = value;
      } else if (head == "cycle") {
        if (m == -1 || n == -1) fail("'cycle' before m and n" + where());
        std::vector<IndexPair> cyc;
        std::string rest;
        std::getline(ls, rest);
        std::size_t k = 0;
        auto skip_ws = [&] {
          while (k < rest.size() &&
                 std::isspace(static_cast<unsigned char>(rest[k])))
            ++k;
        };
        auto read_int = [&]() -> int {
          skip_ws();
          std::size_t start = k;
          while (k < rest.size() &&
                 std::isdigit(static_cast<unsigned char>(rest[k])))
            ++k;
          if (k == start) fail("expected integer in cycle" + where());
          return std::stoi(rest.substr(start, k - start));
        };
        auto expect = [&](char c) {
          skip_ws();
          if (k >= rest.size() || rest[k] != c)
            fail(std::string("expected '") + c + "' in cycle" + where());
          ++k;
        };
        while (true) {
          skip_ws();
          if (k >= rest.size()) break;
          expect('(');
          int i = read_int();
          expect(',');
          int j = read_int();
          expect(')');
          cyc.emplace_back(i, j);
        }
        if (cyc.empty()) fail("cycle without pairs" + where());
        cycles.push_back(std::move(cyc));
      } else {
        fail("unrecognized statement '" + head + "'" + where());
      }
    }
  }
  if (m == -1) fail("missing 'm' line");
  if (n == -1) fail("missing 'n' line");
  return from_cycles(m, n, cycles);
}

ThetaSpec ThetaSpec::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

IndexPair ThetaSpec::forward(int i, int j) const {
  std::size_t k = static_cast<std::size_t>(i - 1) * n_ + (j - 1);
  return {fwd_e_[k] + 1, fwd_f_[k] + 1};
}

IndexPair ThetaSpec::backward(int i, int j) const {
  std::size_t k = static_cast<std::size_t>(i - 1) * n_ + (j - 1);
  return {bwd_e_[k] + 1, bwd_f_[k] + 1};
}

ThetaSpec ThetaSpec::transpose() const {
  std::vector<IndexPair> pairs(static_cast<std::size_t>(n_) * m_);
  for (int j = 1; j <= n_; ++j)
    for (int i = 1; i <= m_; ++i) {
      auto [i0, j0] = backward(i, j);
      pairs[static_cast<std::size_t>(j - 1) * m_ + (i - 1)] = {j0, i0};
    }
  return ThetaSpec(n_, m_, pairs);
}

std::uint64_t ThetaSpec::permutation_order() const {
  const std::size_t mn = static_cast<std::size_t>(m_) * n_;
  std::vector<bool> seen(mn, false);
  std::uint64_t order = 1;
  for (std::size_t start = 0; start < mn; ++start) {
    if (seen[start]) continue;
    std::uint64_t len = 0;
    std::size_t k = start;
    while (!seen[k]) {
      seen[k] = true;
      ++len;
      k = static_cast<std::size_t>(fwd_e_[k]) * n_ + fwd_f_[k];
    }
    order = std::lcm(order, len);
  }
  return order;
}

std::string ThetaSpec::canonical() const {
  std::ostringstream os;
  os << "m=" << m_ << ";n=" << n_ << ";";
  for (int i = 1; i <= m_; ++i)
    for (int j = 1; j <= n_; ++j) {
      auto [ip, jp] = forward(i, j);
      os << "(" << i << "," << j << ")->(" << ip << "," << jp << ");";
    }
  return os.str();
}

IndexPair swap_ef(const ThetaSpec& theta, int i, int j) {
  auto [ip, jp] = theta.forward(i, j);
  return {jp, ip};
}

IndexPair swap_fe(const ThetaSpec& theta, int j, int i) {
  return theta.backward(i, j);
}

Word refactor(const ThetaSpec& theta, const Word& w, const ColorPattern& pattern) {
  Degree want;
  for (Color c : pattern) (c == Color::E ? want.e : want.f) += 1;
  if (want != w.degree())
    throw std::invalid_argument("refactor: pattern degree mismatch");

  const int n = theta.n();
  const std::uint8_t* fe = theta.fwd_e0();
  const std::uint8_t* ff = theta.fwd_f0();
  const std::uint8_t* be = theta.bwd_e0();
  const std::uint8_t* bf = theta.bwd_f0();

  std::vector<Letter> cur = w.letters();
  std::vector<Letter> out;
  out.reserve(cur.size());
  std::size_t head = 0;  // letters before `head` are already emitted
  for (Color c : pattern) {
    std::size_t k = head;
    while (cur[k].color != c) ++k;
    // bubble cur[k] down to `head`, rewriting with the commutation relation
    for (std::size_t t = k; t > head; --t) {
      Letter& a = cur[t - 1];
      Letter& b = cur[t];
      std::size_t idx;
      if (c == Color::E) {
        // (f_j, e_i) -> (e_{i0}, f_{j0}) with theta(i0,j0) = (i,j)
        idx = static_cast<std::size_t>(b.index - 1) * n + (a.index - 1);
        a = le(be[idx] + 1);
        b = lf(bf[idx] + 1);
      } else {
        // (e_i, f_j) -> (f_{j'}, e_{i'}) with theta(i,j) = (i',j')
        idx = static_cast<std::size_t>(a.index - 1) * n + (b.index - 1);
        a = lf(ff[idx] + 1);
        b = le(fe[idx] + 1);
      }
    }
    out.push_back(cur[head]);
    ++head;
  }
  return Word(std::move(out));
}

Word normal_form(const ThetaSpec& theta, const Word& w, NormalTarget target) {
  Degree d = w.degree();
  ColorPattern pattern;
  pattern.reserve(w.size());
  if (target == NormalTarget::EF) {
    pattern.insert(pattern.end(), d.e, Color::E);
    pattern.insert(pattern.end(), d.f, Color::F);
  } else {
    pattern.insert(pattern.end(), d.f, Color::F);
    pattern.insert(pattern.end(), d.e, Color::E);
  }
  return refactor(theta, w, pattern);
}

}  // namespace rank2
