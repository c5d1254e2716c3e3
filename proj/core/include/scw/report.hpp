#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace scw {

enum class CheckStatus { Pass, Fail, Unsupported };

std::string to_string(CheckStatus status);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string computed;
  std::string expected;
  std::string citation;
  std::string detail;
};

/// Named check results. Output is sorted by check name so it never depends
/// on evaluation order.
class VerificationReport {
 public:
  void add(CheckResult result);
  void add(std::string name, bool passed, std::string computed, std::string expected,
           std::string citation = {}, std::string detail = {});
  void unsupported(std::string name, std::string detail, std::string citation = {});
  /// Appends every check of `other`, prefixing names with `prefix`.
  void merge(const VerificationReport& other, const std::string& prefix = {});

  const std::vector<CheckResult>& checks() const { return checks_; }
  std::vector<CheckResult> sorted() const;
  const CheckResult* find(const std::string& name) const;

  std::size_t count(CheckStatus status) const;
  bool all_passed() const { return count(CheckStatus::Fail) == 0 && count(CheckStatus::Unsupported) == 0; }
  bool any_failed() const { return count(CheckStatus::Fail) > 0; }
  /// Names of checks with the given status, sorted.
  std::vector<std::string> names_with(CheckStatus status) const;

  void set_seed(std::uint64_t seed) { seed_ = seed; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  std::string to_text() const;
  std::string to_json() const;

 private:
  std::vector<CheckResult> checks_;
  std::optional<std::uint64_t> seed_;
};

}  // namespace scw
