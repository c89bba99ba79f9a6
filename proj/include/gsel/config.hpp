#pragma once

#include <string>

#include "gsel/harness.hpp"

namespace gsel {

// Strict JSON experiment config: unknown keys are errors, defaults are
// applied for omitted optional keys (n0=10, macros=20000, plug-in
// variances, uninformative prior). See docs/file-formats.md.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text, const std::string& source_name);

// One-line echo of the effective configuration after defaults.
std::string describe_config(const ExperimentConfig& config);

}  // namespace gsel
