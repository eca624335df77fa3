// SPDX-License-Identifier: Apache-2.0
#include "sweep.hpp"

#include <stdexcept>

#include "config.hpp"

namespace lrctl {

bool sweepParameterFromString(const std::string& name, SweepParameter& out)
{
    if (name == "initial_lr") out = SweepParameter::InitialLr;
    else if (name == "schedule") out = SweepParameter::ScheduleKind;
    else return false;
    return true;
}

ExperimentConfig configForSweepValue(const ExperimentConfig& base, SweepParameter parameter,
                                     const std::string& value)
{
    ExperimentConfig config = base;
    if (parameter == SweepParameter::InitialLr) {
        bool unusedP = false, unusedD = false;
        const double oldLr = config.schedule.initialLr;
        applyConfigKey(config, "initial_lr", value, unusedP, unusedD);
        if (base.schedule.gainP == oldLr) config.schedule.gainP = config.schedule.initialLr;
        if (base.schedule.gainD == 5.0 * oldLr)
            config.schedule.gainD = 5.0 * config.schedule.initialLr;
    } else {
        if (!scheduleKindFromString(value, config.schedule.kind))
            throw ConfigError("sweep: unknown schedule kind '" + value + "'");
    }
    try {
        config.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("sweep: value '") + value + "': " + err.what());
    }
    return config;
}

std::vector<SweepResult> runSweep(const SweepSpec& spec)
{
    if (spec.values.empty()) throw ConfigError("sweep: the value list must not be empty");
    spec.base.validate();

    std::vector<SweepResult> results;
    results.reserve(spec.values.size());
    for (const std::string& value : spec.values) {
        const ExperimentConfig config = configForSweepValue(spec.base, spec.parameter, value);
        SweepResult result;
        result.label = value;
        result.trace = runExperiment(config);
        result.summary = aggregate(result.trace);
        results.push_back(std::move(result));
    }
    return results;
}

}  // namespace lrctl
