#pragma once

// Fixed-point bookkeeping for involutions and order-3 automorphisms of
// surfaces with p_g = q = 0, and the small finite enumerations built on it.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "scw/exact.hpp"
#include "scw/report.hpp"

namespace scw {

struct InvolutionCounts {
  Integer k;   // isolated fixed points
  Integer tr;  // trace on H^2
};

/// k = K.R + 4, tr = 2 - R^2.
InvolutionCounts involution_counts(const Integer& kr, const Integer& r2);

/// Inverse of involution_counts.
std::pair<Integer, Integer> involution_profile(const Integer& k, const Integer& tr);

struct Order3Counts {
  Integer r1;
  Integer r2;
};

struct Infeasible {
  std::string reason;
};

/// Solves r1 + r2 = tr + 2 + K.R + R^2 and r1 + 2 r2 = 6 + (3/2) K.R - R^2/2
/// for nonnegative integers.
std::variant<Order3Counts, Infeasible> order3_counts(const Integer& kr, const Integer& r2, const Integer& tr);

struct RangeConstraints {
  /// When set, keep only K.R with (K.R)^2 >= K^2 * R^2.
  std::optional<Integer> hodge_r2;
  std::set<Integer> exclusions;
  Integer max_fixed_points = 11;
};

/// K.R >= 1 with k = K.R + 4 odd and at most the bound.
std::vector<Integer> involution_range_filter(const Integer& k2, const RangeConstraints& constraints = {});

/// Integer polynomial in named variables.
class Polynomial {
 public:
  using Monomial = std::vector<unsigned>;  // exponent per variable

  Polynomial() = default;
  explicit Polynomial(std::vector<std::string> variables);

  /// Parses sums of terms like "2*x^2*y", "-y^2", "7". Variables are
  /// collected in order of first appearance unless `variables` is given.
  static Polynomial parse(const std::string& text, std::vector<std::string> variables = {});

  const std::vector<std::string>& variables() const { return variables_; }
  void add_term(const Integer& coeff, Monomial exponents);
  Integer evaluate(const std::vector<Integer>& values) const;
  std::string to_string() const;

 private:
  std::vector<std::string> variables_;
  std::map<Monomial, Integer> terms_;
};

using Point = std::vector<Integer>;

/// All points of the product of `domains` (one value list per variable)
/// where the polynomial takes a value in `targets`, in lexicographic order.
std::vector<Point> diophantine_enumerate(const Polynomial& p, const std::vector<std::vector<Integer>>& domains,
                                         const std::set<Integer>& targets = {Integer(0)});

/// Inclusive integer range as a domain.
std::vector<Integer> range(long lo, long hi);

struct TripleCase {
  std::string label;
  std::vector<Integer> kr;        // K.R_i, i = 1..3
  std::vector<Integer> products;  // R1.R2, R1.R3, R2.R3
  std::vector<Integer> r2{-1, -1, -1};
  Integer k2 = 7;
};

/// The three numerical cases for Z2^2 actions with K^2 = 7, p_g = 0.
std::vector<TripleCase> classification_cases();

VerificationReport theorem11_consistency(const TripleCase& c);

struct NamedCheck {
  std::string tag;
  std::string summary;
  std::vector<std::string> params;  // trailing '?' marks optional ones
  std::function<VerificationReport(const std::map<std::string, std::string>&)> run;
  /// Parameter sets exercised by the bundled suite; empty means one run
  /// without parameters.
  std::vector<std::map<std::string, std::string>> examples;
};

const std::vector<NamedCheck>& named_checks();
const NamedCheck* find_named_check(const std::string& tag);

/// Runs a registered check; throws std::invalid_argument for unknown tags
/// or malformed parameters.
VerificationReport run_named_check(const std::string& tag, const std::map<std::string, std::string>& params = {});

}  // namespace scw
