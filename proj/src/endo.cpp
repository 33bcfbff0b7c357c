#include "rank2/endo.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace rank2 {

EndoMap EndoMap::identity(int d) {
  EndoMap t{d, std::vector<int>(d)};
  for (int x = 1; x <= d; ++x) t.table[x - 1] = x;
  return t;
}

int EndoMap::rank() const {
  std::vector<bool> seen(domain, false);
  int r = 0;
  for (int v : table)
    if (!seen[v - 1]) {
      seen[v - 1] = true;
      ++r;
    }
  return r;
}

bool EndoMap::is_idempotent() const { return compose(*this, *this) == *this; }

std::vector<int> EndoMap::image_set() const {
  std::vector<int> img(table);
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return img;
}

std::vector<int> EndoMap::eventual_image() const {
  EndoMap power = *this;
  for (int k = 1; k < domain; ++k) power = compose(*this, power);
  return power.image_set();
}

EndoMap compose(const EndoMap& outer, const EndoMap& inner) {
  EndoMap out{inner.domain, std::vector<int>(inner.domain)};
  for (int x = 1; x <= inner.domain; ++x) out.table[x - 1] = outer(inner(x));
  return out;
}

CoordinateMaps extract_maps(const ThetaSpec& theta) {
  CoordinateMaps maps;
  maps.alphas.reserve(theta.m());
  maps.betas.reserve(theta.n());
  for (int i = 1; i <= theta.m(); ++i) {
    EndoMap a{theta.n(), std::vector<int>(theta.n())};
    for (int j = 1; j <= theta.n(); ++j) a.table[j - 1] = theta.forward(i, j).second;
    maps.alphas.push_back(std::move(a));
  }
  for (int j = 1; j <= theta.n(); ++j) {
    EndoMap b{theta.m(), std::vector<int>(theta.m())};
    for (int i = 1; i <= theta.m(); ++i) b.table[i - 1] = theta.forward(i, j).first;
    maps.betas.push_back(std::move(b));
  }
  return maps;
}

EndoMap compose_along(std::span<const EndoMap> maps, std::span<const int> word) {
  if (word.empty()) throw std::invalid_argument("compose_along: empty word");
  for (int i : word)
    if (i < 1 || static_cast<std::size_t>(i) > maps.size())
      throw std::invalid_argument("compose_along: generator index out of range");
  EndoMap acc = maps[word.back() - 1];
  for (std::size_t k = word.size() - 1; k-- > 0;)
    acc = compose(maps[word[k] - 1], acc);
  return acc;
}

MonoidClosure closure(const std::vector<EndoMap>& generators) {
  if (generators.empty())
    throw std::invalid_argument("closure: at least one generator required");
  MonoidClosure c;
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (index.emplace(generators[g].table, c.elements.size()).second) {
      c.elements.push_back(generators[g]);
      c.witnesses.push_back({static_cast<int>(g + 1)});
    }
  }
  // breadth-first over witness length; appending a generator composes on
  // the inner side, so witnesses stay in outermost-first order
  for (std::size_t head = 0; head < c.elements.size(); ++head) {
    EndoMap base = c.elements[head];
    std::vector<int> word = c.witnesses[head];
    for (std::size_t g = 0; g < generators.size(); ++g) {
      EndoMap next = compose(base, generators[g]);
      if (index.emplace(next.table, c.elements.size()).second) {
        std::vector<int> w = word;
        w.push_back(static_cast<int>(g + 1));
        c.elements.push_back(std::move(next));
        c.witnesses.push_back(std::move(w));
      }
    }
  }
  return c;
}

std::optional<AperiodicityCertificate> find_certificate_side(
    const std::vector<EndoMap>& generators, AperiodicityCertificate::Side side) {
  MonoidClosure c = closure(generators);
  for (std::size_t k = 0; k < c.elements.size(); ++k) {
    const EndoMap& t = c.elements[k];
    if (t.is_idempotent() && t.rank() >= 2) {
      AperiodicityCertificate cert;
      cert.side = side;
      cert.fixed_set = t.image_set();
      cert.word = c.witnesses[k];
      cert.map = t;
      return cert;
    }
  }
  return std::nullopt;
}

std::optional<AperiodicityCertificate> find_certificate(const ThetaSpec& theta) {
  CoordinateMaps maps = extract_maps(theta);
  if (auto cert = find_certificate_side(maps.alphas, AperiodicityCertificate::Side::Alpha))
    return cert;
  return find_certificate_side(maps.betas, AperiodicityCertificate::Side::Beta);
}

std::optional<int> constancy_depth(const std::vector<EndoMap>& generators,
                                   int k_max) {
  if (generators.empty())
    throw std::invalid_argument("constancy_depth: no generators");
  if (k_max < 1) throw std::invalid_argument("constancy_depth: k_max < 1");
  std::set<std::vector<int>> layer;
  for (const EndoMap& g : generators) layer.insert(g.table);
  std::set<std::set<std::vector<int>>> seen;
  int d = generators.front().domain;
  for (int k = 1; k <= k_max; ++k) {
    bool all_constant = true;
    for (const auto& t : layer)
      if (EndoMap{d, t}.rank() != 1) {
        all_constant = false;
        break;
      }
    if (all_constant) return k;
    if (!seen.insert(layer).second) return std::nullopt;  // layers now cycle
    std::set<std::vector<int>> next;
    for (const auto& t : layer)
      for (const EndoMap& g : generators)
        next.insert(compose(g, EndoMap{d, t}).table);
    layer = std::move(next);
  }
  return std::nullopt;
}

}  // namespace rank2
