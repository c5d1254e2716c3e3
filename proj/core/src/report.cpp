#include "scw/report.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <sstream>

namespace scw {

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Unsupported: break;
  }
  return "unsupported";
}

void VerificationReport::add(CheckResult result) { checks_.push_back(std::move(result)); }

void VerificationReport::add(std::string name, bool passed, std::string computed, std::string expected,
                             std::string citation, std::string detail) {
  checks_.push_back(CheckResult{std::move(name), passed ? CheckStatus::Pass : CheckStatus::Fail,
                                std::move(computed), std::move(expected), std::move(citation),
                                std::move(detail)});
}

void VerificationReport::unsupported(std::string name, std::string detail, std::string citation) {
  checks_.push_back(
      CheckResult{std::move(name), CheckStatus::Unsupported, "", "", std::move(citation), std::move(detail)});
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (auto c : other.checks_) {
    c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
}

std::vector<CheckResult> VerificationReport::sorted() const {
  std::vector<CheckResult> out = checks_;
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::size_t VerificationReport::count(CheckStatus status) const {
  return static_cast<std::size_t>(
      std::count_if(checks_.begin(), checks_.end(), [&](const auto& c) { return c.status == status; }));
}

std::vector<std::string> VerificationReport::names_with(CheckStatus status) const {
  std::vector<std::string> out;
  for (const auto& c : sorted()) {
    if (c.status == status) out.push_back(c.name);
  }
  return out;
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : sorted()) {
    out << '[' << to_string(c.status) << "] " << c.name;
    if (!c.computed.empty() || !c.expected.empty()) out << ": computed " << c.computed << ", expected " << c.expected;
    if (!c.citation.empty()) out << " {" << c.citation << '}';
    if (!c.detail.empty()) out << " -- " << c.detail;
    out << '\n';
  }
  out << "summary: " << count(CheckStatus::Pass) << " passed, " << count(CheckStatus::Fail) << " failed, "
      << count(CheckStatus::Unsupported) << " unsupported";
  if (seed_) out << " (seed " << *seed_ << ')';
  out << '\n';
  return out.str();
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["summary"] = {{"pass", count(CheckStatus::Pass)},
                  {"fail", count(CheckStatus::Fail)},
                  {"unsupported", count(CheckStatus::Unsupported)}};
  if (seed_) j["seed"] = *seed_;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : sorted()) {
    j["checks"].push_back({{"name", c.name},
                           {"status", to_string(c.status)},
                           {"computed", c.computed},
                           {"expected", c.expected},
                           {"citation", c.citation},
                           {"detail", c.detail}});
  }
  return j.dump(2) + "\n";
}

}  // namespace scw
