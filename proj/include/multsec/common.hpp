#pragma once

#include <string>
#include <vector>

namespace multsec {

// Validators collect every violation instead of stopping at the first one.
struct Report {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  void fail(std::string what) { violations.push_back(std::move(what)); }
  void merge(const Report& other) {
    violations.insert(violations.end(), other.violations.begin(),
                      other.violations.end());
  }
  std::string summary() const {
    if (ok()) return "valid";
    std::string out;
    for (const auto& v : violations) {
      out += v;
      out += '\n';
    }
    return out;
  }
};

enum class CheckLevel { fast, full };

}  // namespace multsec
