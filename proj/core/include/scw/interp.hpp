#pragma once

// Sections of divisor classes on blowup surfaces, computed as the dimension
// of plane curves of degree d with prescribed multiplicities at an exact
// random realization of the configuration.

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "scw/configuration.hpp"

namespace scw {

struct SeedPolicy {
  std::uint64_t seed = 0;
  /// Number of independent realizations that must agree.
  std::size_t consensus = 3;
};

/// The realization seeds used for a policy (deterministic in policy.seed).
std::vector<std::uint64_t> consensus_seeds(const SeedPolicy& policy);

class OracleDisagreement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension of degree-d forms vanishing to order m_j at the given points.
/// Points are exact projective integer triples.
std::size_t interpolation_dimension(long degree, const std::vector<std::pair<Vec3, long>>& conditions);

class InterpolationOracle {
 public:
  explicit InterpolationOracle(SeedPolicy policy = {});

  const SeedPolicy& policy() const { return policy_; }

  /// h^0(D). Negative exceptional coefficients impose nothing; negative L
  /// degree gives 0. Throws OracleDisagreement when realizations disagree.
  std::size_t h0(const BlowupSurface& surface, const DivisorClass& d);

  /// The value at each consensus seed, without the agreement check.
  std::vector<std::size_t> h0_per_seed(const BlowupSurface& surface, const DivisorClass& d);

  const Realization& realization(const BlowupSurface& surface, std::uint64_t seed);

 private:
  std::size_t h0_at(const BlowupSurface& surface, const DivisorClass& d, std::uint64_t seed);

  SeedPolicy policy_;
  std::vector<std::uint64_t> seeds_;
  std::mutex mutex_;
  std::map<std::pair<std::string, std::uint64_t>, Realization> realizations_;
  std::map<std::string, std::size_t> values_;
};

/// Convenience wrapper sharing one oracle per seed policy.
std::size_t h0(const BlowupSurface& surface, const DivisorClass& d, const SeedPolicy& policy = {});

/// The oracle shared by the convenience wrapper for this policy.
InterpolationOracle& shared_oracle(const SeedPolicy& policy);

}  // namespace scw
