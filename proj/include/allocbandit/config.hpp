#pragma once

#include <string>
#include <vector>

#include "allocbandit/harness.hpp"

namespace allocbandit {

// Parses the line-oriented key = value experiment format. `#` starts a
// comment. Recognized keys:
//   policy      single | exclusive | multi | lcs-approx        (required)
//   c           exploration constant (required unless lcs-approx)
//   n           horizon, >= 1                                  (required)
//   reps        replications, >= 1                             (required)
//   seed        64-bit master seed                             (required)
//   arms        comma-separated thresholds      (exactly one arm spec
//   arm_family  linear | hard                    must be present)
//   K, m        linear family: nu_k = 2k/m^2 for k = 1..K
//   r           hard family: K = 2r
//   checkpoints pow2 (default) | final
//   inject_fault none (default) | overflow    (test hook)
// Unknown or duplicate keys are errors. The resulting config is validated.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config_file(const std::string& path);

// "0.4,0.6" -> {0.4, 0.6}; rejects empty items and non-numbers.
std::vector<double> parse_double_list(const std::string& text);

} // namespace allocbandit
