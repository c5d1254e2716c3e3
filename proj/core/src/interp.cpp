#include "scw/interp.hpp"

#include <memory>
#include <sstream>

#include "scw/linalg.hpp"

namespace scw {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Exponent {
  long a, b, c;
};

std::vector<Exponent> monomials(long d) {
  std::vector<Exponent> out;
  for (long a = d; a >= 0; --a) {
    for (long b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
  }
  return out;
}

Integer falling(long n, long k) {
  Integer r = 1;
  for (long i = 0; i < k; ++i) r *= n - i;
  return r;
}

Integer power(const Integer& x, long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

std::vector<std::uint64_t> consensus_seeds(const SeedPolicy& policy) {
  std::uint64_t state = policy.seed;
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < std::max<std::size_t>(policy.consensus, 1); ++i) out.push_back(splitmix64(state));
  return out;
}

std::size_t interpolation_dimension(long degree, const std::vector<std::pair<Vec3, long>>& conditions) {
  if (degree < 0) return 0;
  for (const auto& [p, m] : conditions) {
    if (m > degree) return 0;
  }
  const auto mons = monomials(degree);
  IntegerMatrix rows;
  for (const auto& [p, m] : conditions) {
    if (m <= 0) continue;
    // all partial derivatives of order m - 1 vanish at p
    for (const auto& der : monomials(m - 1)) {
      std::vector<Integer> row;
      row.reserve(mons.size());
      for (const auto& mon : mons) {
        if (mon.a < der.a || mon.b < der.b || mon.c < der.c) {
          row.emplace_back(0);
          continue;
        }
        row.push_back(falling(mon.a, der.a) * falling(mon.b, der.b) * falling(mon.c, der.c) *
                      power(p[0], mon.a - der.a) * power(p[1], mon.b - der.b) * power(p[2], mon.c - der.c));
      }
      rows.push_back(std::move(row));
    }
  }
  return mons.size() - rank(std::move(rows));
}

InterpolationOracle::InterpolationOracle(SeedPolicy policy) : policy_(policy), seeds_(consensus_seeds(policy)) {}

const Realization& InterpolationOracle::realization(const BlowupSurface& surface, std::uint64_t seed) {
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(surface.fingerprint(), seed);
  auto it = realizations_.find(key);
  if (it == realizations_.end())
    it = realizations_.emplace(key, realize_configuration(surface.script, surface.blown_up_points(), seed)).first;
  return it->second;
}

std::size_t InterpolationOracle::h0_at(const BlowupSurface& surface, const DivisorClass& d, std::uint64_t seed) {
  if (!d.lattice() || !d.lattice()->same_as(*surface.lattice))
    throw LatticeError("class is not on the lattice of surface '" + surface.id + "'");
  if (!d.is_integral()) throw LatticeError("h0 requires an integral class, got " + d.to_string());
  const long degree = d[0].get_num().get_si();
  if (degree < 0) return 0;
  const Realization& r = realization(surface, seed);
  std::vector<std::pair<Vec3, long>> conditions;
  for (std::size_t i = 0; i < surface.blowups.size(); ++i) {
    long m = -d[i + 1].get_num().get_si();
    if (m > 0) conditions.emplace_back(r.points.at(surface.blowups[i].point), m);
  }
  return interpolation_dimension(degree, conditions);
}

std::vector<std::size_t> InterpolationOracle::h0_per_seed(const BlowupSurface& surface, const DivisorClass& d) {
  std::vector<std::size_t> out;
  for (auto seed : seeds_) out.push_back(h0_at(surface, d, seed));
  return out;
}

std::size_t InterpolationOracle::h0(const BlowupSurface& surface, const DivisorClass& d) {
  std::string key = surface.fingerprint() + "#";
  for (const auto& c : d.coefficients()) key += to_string(c) + ",";
  {
    std::lock_guard lock(mutex_);
    auto it = values_.find(key);
    if (it != values_.end()) return it->second;
  }
  auto values = h0_per_seed(surface, d);
  for (auto v : values) {
    if (v != values.front()) {
      std::ostringstream msg;
      msg << "h0 of " << d.to_string() << " on '" << surface.id << "' depends on the realization:";
      for (std::size_t i = 0; i < values.size(); ++i) msg << " seed " << seeds_[i] << " -> " << values[i] << ";";
      throw OracleDisagreement(msg.str());
    }
  }
  std::lock_guard lock(mutex_);
  values_[key] = values.front();
  return values.front();
}

InterpolationOracle& shared_oracle(const SeedPolicy& policy) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint64_t, std::size_t>, std::unique_ptr<InterpolationOracle>> oracles;
  std::lock_guard lock(mutex);
  auto& slot = oracles[{policy.seed, policy.consensus}];
  if (!slot) slot = std::make_unique<InterpolationOracle>(policy);
  return *slot;
}

std::size_t h0(const BlowupSurface& surface, const DivisorClass& d, const SeedPolicy& policy) {
  return shared_oracle(policy).h0(surface, d);
}

}  // namespace scw
