// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "metrics.hpp"

namespace lrctl {

enum class SweepParameter { InitialLr, ScheduleKind };

/// Parameter names as accepted on the command line / C API.
bool sweepParameterFromString(const std::string& name, SweepParameter& out);

struct SweepSpec {
    ExperimentConfig base;
    SweepParameter parameter = SweepParameter::InitialLr;
    std::vector<std::string> values;
};

struct SweepResult {
    std::string label;
    MetricsSummary summary;
    Trace trace;
};

/// Applies one swept value to a copy of the config. For initial_lr, gains
/// still at their derived defaults (kp = lr(0), kd = 5*lr(0)) follow the
/// new rate; explicitly pinned gains stay put.
ExperimentConfig configForSweepValue(const ExperimentConfig& base, SweepParameter parameter,
                                     const std::string& value);

/// One experiment per value, in the given order. Every experiment keeps
/// the base seed, so runs are paired across values (identical network
/// initializations and data).
std::vector<SweepResult> runSweep(const SweepSpec& spec);

}  // namespace lrctl
