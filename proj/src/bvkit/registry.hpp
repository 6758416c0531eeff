#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bvkit {

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct ExampleReport {
    std::string id;
    std::string title;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;
    double seconds = 0;
    bool ok() const;
};

// exa1..exa8, fp-so3, bundle-flat, derham-a1.
const std::vector<std::string>& example_ids();
std::string example_title(const std::string& id);
// Problem-file text for examples given by a single action, if any.
std::optional<std::string> example_problem(const std::string& id);
// Throws invalid() for an unknown id; failing checks are reported, not thrown.
ExampleReport run_example(const std::string& id);

}  // namespace bvkit
