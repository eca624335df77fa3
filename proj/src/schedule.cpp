// SPDX-License-Identifier: Apache-2.0
#include "schedule.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace lrctl {

const char* scheduleKindName(ScheduleKind kind)
{
    switch (kind) {
    case ScheduleKind::Constant: return "constant";
    case ScheduleKind::TimeInverseDecay: return "time_inverse";
    case ScheduleKind::ExpSineWaveDecay: return "exp_sine";
    case ScheduleKind::PControl: return "p";
    case ScheduleKind::PDControl: return "pd";
    case ScheduleKind::EpdControl: return "epd";
    }
    return "?";
}

std::ostream& operator<<(std::ostream& out, ScheduleKind kind)
{
    return out << scheduleKindName(kind);
}

bool scheduleKindFromString(const std::string& name, ScheduleKind& out)
{
    if (name == "constant") out = ScheduleKind::Constant;
    else if (name == "time_inverse") out = ScheduleKind::TimeInverseDecay;
    else if (name == "exp_sine") out = ScheduleKind::ExpSineWaveDecay;
    else if (name == "p") out = ScheduleKind::PControl;
    else if (name == "pd") out = ScheduleKind::PDControl;
    else if (name == "epd") out = ScheduleKind::EpdControl;
    else return false;
    return true;
}

void Schedule::validate() const
{
    if (!(initialLr > 0.0) || !std::isfinite(initialLr))
        throw std::invalid_argument("schedule: initial_lr must be a positive finite real");
    if (timeDecay < 0.0 || !std::isfinite(timeDecay))
        throw std::invalid_argument("schedule: delta must be a nonnegative finite real");
    if (gainP < 0.0 || !std::isfinite(gainP))
        throw std::invalid_argument("schedule: kp must be a nonnegative finite real");
    if (gainD < 0.0 || !std::isfinite(gainD))
        throw std::invalid_argument("schedule: kd must be a nonnegative finite real");
    if (epochsPerBatch < 1)
        throw std::invalid_argument("schedule: epochs_per_batch must be at least 1");
    if (kind == ScheduleKind::ExpSineWaveDecay) {
        // gamma in [0, 0.5) keeps the bracket of the rate formula >= 0.5 - gamma > 0.
        if (!(sineAmplitude >= 0.0 && sineAmplitude < 0.5))
            throw std::invalid_argument(
                "schedule: gamma must lie in [0, 0.5) for exp_sine (positivity)");
        if (!std::isfinite(expDecayRate) || !std::isfinite(sineFrequency))
            throw std::invalid_argument("schedule: alpha and beta must be finite");
    }
    if (kind == ScheduleKind::EpdControl && epochsPerBatch < 2)
        throw std::invalid_argument(
            "schedule: epochs_per_batch must be at least 2 for epd (phase switch "
            "needs one observation)");
}

double timeInverseNextLr(double previousLr, double timeDecay, int epoch)
{
    if (epoch < 1)
        throw std::invalid_argument("timeInverseNextLr: epoch index must be >= 1");
    return previousLr / (1.0 + timeDecay * static_cast<double>(epoch));
}

double expSineWaveLr(const Schedule& schedule, int epoch)
{
    if (epoch < 0)
        throw std::invalid_argument("expSineWaveLr: epoch index must be >= 0");
    const double k = static_cast<double>(epoch);
    const double envelope =
        std::exp(-schedule.expDecayRate * k / static_cast<double>(schedule.epochsPerBatch));
    const double ripple =
        schedule.sineAmplitude * std::sin(schedule.sineFrequency * k / (2.0 * std::numbers::pi));
    return schedule.initialLr * envelope * (ripple + envelope + 0.5);
}

double proportionalLr(double gainP, double currentLoss, double initialLoss)
{
    if (!(initialLoss > 0.0))
        throw std::invalid_argument("proportionalLr: loss(0) must be positive");
    return gainP * currentLoss / initialLoss;
}

double pdLrWithFallback(double gainP, double gainD, double currentLoss,
                        double previousLoss, double initialLoss)
{
    const double pValue = proportionalLr(gainP, currentLoss, initialLoss);
    const double pdValue = pValue - gainD * (currentLoss - previousLoss) / initialLoss;
    return pdValue > 0.0 ? pdValue : pValue;
}

}  // namespace lrctl
