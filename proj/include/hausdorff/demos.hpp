#pragma once

#include <string>
#include <vector>

namespace hausdorff {

struct DemoCheck {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct DemoResult {
  std::string name;
  std::vector<DemoCheck> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass)
        return false;
    return !checks.empty();
  }
};

const std::vector<std::string>& demo_names();

/// Runs a canned scenario against its stored expectations; unknown names
/// throw unknown-demo.
DemoResult run_demo(const std::string& name);

} // namespace hausdorff
