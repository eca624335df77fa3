// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "harness.hpp"

namespace lrctl {

/// Raised on malformed config text; the message names the offending key.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses the flat key=value experiment description ('#' starts a
/// comment, blank lines ignored). Unset keys fall back to the desk-scale
/// defaults; unset controller gains derive from the initial rate
/// (kp = lr(0), kd = 5 * lr(0)). The parsed config is validated.
ExperimentConfig parseConfig(const std::string& text);

ExperimentConfig parseConfigFile(const std::string& path);

/// Applies one assignment to an existing config; the same machinery the
/// parser uses, also serving sweep overrides and CLI seed overrides.
/// `explicitGains` tracks whether kp/kd were user-set and should stop
/// tracking initial_lr.
void applyConfigKey(ExperimentConfig& config, const std::string& key, const std::string& value,
                    bool& explicitGainP, bool& explicitGainD);

/// Renders every key in a fixed order with full float precision, so
/// parseConfig(renderConfig(c)) == c.
std::string renderConfig(const ExperimentConfig& config);

}  // namespace lrctl
