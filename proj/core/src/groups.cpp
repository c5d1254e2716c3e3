#include "scw/groups.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace scw {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
  for (auto n : orders_) {
    if (n <= 0) throw GroupError("cyclic factor orders must be positive");
    order_ *= n;
    exponent_ = std::lcm(exponent_, n);
  }
}

Residues FiniteAbelianGroup::normalize(const Residues& r) const {
  if (r.size() != orders_.size())
    throw GroupError("residue tuple " + format_residues(r) + " has wrong arity for the group");
  Residues out(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) out[j] = mod(r[j], orders_[j]);
  return out;
}

Residues FiniteAbelianGroup::add(const Residues& a, const Residues& b) const {
  Residues out = normalize(a);
  Residues nb = normalize(b);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = (out[j] + nb[j]) % orders_[j];
  return out;
}

Residues FiniteAbelianGroup::scale(const Residues& a, std::int64_t k) const {
  Residues out = normalize(a);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = mod(out[j] * mod(k, orders_[j]), orders_[j]);
  return out;
}

bool FiniteAbelianGroup::is_identity(const Residues& a) const {
  Residues n = normalize(a);
  return std::all_of(n.begin(), n.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t FiniteAbelianGroup::element_order(const Residues& a) const {
  Residues n = normalize(a);
  std::int64_t ord = 1;
  for (std::size_t j = 0; j < n.size(); ++j) ord = std::lcm(ord, orders_[j] / std::gcd(n[j], orders_[j]));
  return ord;
}

std::vector<Residues> FiniteAbelianGroup::elements() const {
  std::vector<Residues> out;
  out.reserve(static_cast<std::size_t>(order_));
  Residues cur = identity();
  for (std::int64_t k = 0; k < order_; ++k) {
    out.push_back(cur);
    for (std::size_t j = orders_.size(); j-- > 0;) {
      if (++cur[j] < orders_[j]) break;
      cur[j] = 0;
    }
  }
  return out;
}

std::int64_t FiniteAbelianGroup::pairing(const Residues& character, const Residues& element) const {
  Residues c = normalize(character);
  Residues e = normalize(element);
  std::int64_t t = 0;
  for (std::size_t j = 0; j < c.size(); ++j) t += c[j] * e[j] * (exponent_ / orders_[j]);
  return mod(t, exponent_);
}

Subgroup generated_subgroup(const FiniteAbelianGroup& g, const std::vector<Residues>& gens) {
  Subgroup s{g.identity()};
  std::deque<Residues> frontier{g.identity()};
  std::vector<Residues> ngens;
  for (const auto& x : gens) ngens.push_back(g.normalize(x));
  while (!frontier.empty()) {
    Residues cur = frontier.front();
    frontier.pop_front();
    for (const auto& x : ngens) {
      Residues next = g.add(cur, x);
      if (s.insert(next).second) frontier.push_back(next);
    }
  }
  return s;
}

std::vector<Subgroup> subgroups_of_order(const FiniteAbelianGroup& g, std::int64_t n) {
  if (n <= 0 || g.order() % n != 0) return {};
  // grow from the cyclic subgroups by adjoining one element at a time
  std::set<Subgroup> found;
  std::set<Subgroup> layer;
  const auto elems = g.elements();
  for (const auto& e : elems) layer.insert(generated_subgroup(g, {e}));
  std::set<Subgroup> all = layer;
  while (!layer.empty()) {
    std::set<Subgroup> next;
    for (const auto& s : layer) {
      for (const auto& e : elems) {
        if (s.count(e)) continue;
        std::vector<Residues> gens(s.begin(), s.end());
        gens.push_back(e);
        Subgroup t = generated_subgroup(g, gens);
        if (all.insert(t).second) next.insert(t);
      }
    }
    layer = std::move(next);
  }
  for (const auto& s : all) {
    if (static_cast<std::int64_t>(s.size()) == n) found.insert(s);
  }
  return {found.begin(), found.end()};
}

bool is_elementary_abelian_2(const FiniteAbelianGroup& g, const Subgroup& s) {
  return std::all_of(s.begin(), s.end(), [&](const Residues& x) { return g.element_order(x) <= 2; });
}

bool pairwise_common_involution(const FiniteAbelianGroup& g, const std::vector<Subgroup>& subgroups) {
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    for (std::size_t j = i + 1; j < subgroups.size(); ++j) {
      bool shared = false;
      for (const auto& x : subgroups[i]) {
        if (g.element_order(x) == 2 && subgroups[j].count(x)) {
          shared = true;
          break;
        }
      }
      if (!shared) return false;
    }
  }
  return true;
}

Subgroup subgroup_of(const FiniteAbelianGroup& g, const CyclicPair& pair) {
  return generated_subgroup(g, {pair.generator});
}

std::int64_t cyclic_order(const FiniteAbelianGroup& g, const CyclicPair& pair) {
  return g.element_order(pair.generator);
}

CyclicPair normalize(const FiniteAbelianGroup& g, const CyclicPair& pair) {
  const std::int64_t m = cyclic_order(g, pair);
  if (m == 1) return CyclicPair{g.identity(), 0};
  const std::int64_t e = mod(pair.exponent, m);
  if (std::gcd(e, m) != 1)
    throw GroupError("character exponent " + std::to_string(pair.exponent) +
                     " is not faithful on a cyclic subgroup of order " + std::to_string(m));
  // smallest generator h = k * gen with gcd(k, m) = 1; phi(h) = zeta^(k e)
  Residues best;
  std::int64_t best_k = 0;
  for (std::int64_t k = 1; k < m; ++k) {
    if (std::gcd(k, m) != 1) continue;
    Residues h = g.scale(pair.generator, k);
    if (best.empty() || h < best) {
      best = h;
      best_k = k;
    }
  }
  return CyclicPair{best, mod(best_k * e, m)};
}

std::int64_t restriction_level(const FiniteAbelianGroup& g, const CyclicPair& pair,
                               const Residues& character) {
  const std::int64_t m = cyclic_order(g, pair);
  if (m == 1) return 0;
  // psi(gen) = zeta_m^t
  const std::int64_t t = g.pairing(character, pair.generator) / (g.exponent() / m);
  for (std::int64_t f = 0; f < m; ++f) {
    if (mod(f * pair.exponent, m) == t) return f;
  }
  throw GroupError("character exponent is not faithful on the cyclic subgroup");
}

bool character_sum_vanishes(const FiniteAbelianGroup& g, const Residues& character) {
  // the values hit each element of a subgroup <zeta^d> equally often, and
  // such a sum vanishes exactly when the subgroup is nontrivial
  std::vector<std::int64_t> hits(static_cast<std::size_t>(g.exponent()), 0);
  for (const auto& x : g.elements()) ++hits[static_cast<std::size_t>(g.pairing(character, x))];
  std::int64_t d = 0;
  for (std::size_t t = 0; t < hits.size(); ++t) {
    if (hits[t] > 0) d = std::gcd(d, static_cast<std::int64_t>(t));
  }
  if (d == 0) return false;
  // image is the subgroup generated by zeta^d; it must be hit uniformly
  const std::int64_t expected = hits[0];
  for (std::int64_t t = 0; t < g.exponent(); t += d) {
    if (hits[static_cast<std::size_t>(t)] != expected) return false;
  }
  return true;
}

std::string format_residues(const Residues& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(r[i]);
  }
  return s + ")";
}

}  // namespace scw
