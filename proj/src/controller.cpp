// SPDX-License-Identifier: Apache-2.0
#include "controller.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace lrctl {

std::ostream& operator<<(std::ostream& out, EpdPhase phase)
{
    switch (phase) {
    case EpdPhase::ExponentialGrowth: return out << "exponential_growth";
    case EpdPhase::PdReset: return out << "pd_reset";
    case EpdPhase::PdSteady: return out << "pd_steady";
    }
    return out << "?";
}

LrController::LrController(Schedule schedule) : schedule_(schedule)
{
    schedule_.validate();
}

void LrController::resetForBatch(double initialLoss)
{
    if (!std::isfinite(initialLoss) || initialLoss <= 0.0)
        throw std::invalid_argument(
            "resetForBatch: initial loss must be a positive finite measurement");
    state_ = ControllerState{};
    state_.currentLr = schedule_.initialLr;
    state_.batchInitialLoss = initialLoss;
    state_.lastLoss = initialLoss;
    state_.prevLoss = initialLoss;
    armed_ = true;
    awaitingObservation_ = false;
}

double LrController::nextLr()
{
    if (!armed_)
        throw std::logic_error("nextLr: resetForBatch has not been called for this batch");
    if (awaitingObservation_)
        throw std::logic_error("nextLr: the previous epoch's loss has not been observed");

    const int upcomingEpoch = state_.epoch + 1;
    double lr = 0.0;
    switch (schedule_.kind) {
    case ScheduleKind::Constant:
        lr = schedule_.initialLr;
        break;
    case ScheduleKind::TimeInverseDecay:
        lr = timeInverseNextLr(state_.currentLr, schedule_.timeDecay, upcomingEpoch);
        break;
    case ScheduleKind::ExpSineWaveDecay:
        lr = expSineWaveLr(schedule_, upcomingEpoch);
        break;
    case ScheduleKind::PControl:
        lr = std::max(proportionalLr(schedule_.gainP, state_.lastLoss, state_.batchInitialLoss),
                      kLrFloor);
        break;
    case ScheduleKind::PDControl:
        lr = std::max(pdLrWithFallback(schedule_.gainP, schedule_.gainD, state_.lastLoss,
                                       state_.prevLoss, state_.batchInitialLoss),
                      kLrFloor);
        break;
    case ScheduleKind::EpdControl:
        switch (state_.phase) {
        case EpdPhase::ExponentialGrowth:
            lr = 2.0 * state_.currentLr;  // epoch k trains at 2^k * lr(0)
            break;
        case EpdPhase::PdReset:
            lr = 0.5 * state_.currentLr;  // one epoch at half the last doubled rate
            break;
        case EpdPhase::PdSteady:
            lr = std::max(pdLrWithFallback(state_.tunedGainP, state_.tunedGainD, state_.lastLoss,
                                           state_.prevLoss, state_.batchInitialLoss),
                          kLrFloor);
            break;
        }
        break;
    }

    state_.currentLr = lr;
    state_.epoch = upcomingEpoch;
    awaitingObservation_ = true;
    return lr;
}

void LrController::observeLoss(double loss)
{
    if (!armed_ || !awaitingObservation_)
        throw std::logic_error("observeLoss: no epoch is awaiting a loss observation");
    if (!std::isfinite(loss) || loss < 0.0)
        throw std::invalid_argument("observeLoss: loss must be a nonnegative finite measurement");

    if (schedule_.kind == ScheduleKind::EpdControl) {
        if (state_.phase == EpdPhase::ExponentialGrowth && loss > state_.lastLoss) {
            // Growth stops at the first loss increase; the PD law takes over
            // with K_P at half the last doubled rate and K_D at 5 * lr(0).
            state_.tunedGainP = 0.5 * state_.currentLr;
            state_.tunedGainD = 5.0 * schedule_.initialLr;
            state_.phase = EpdPhase::PdReset;
        } else if (state_.phase == EpdPhase::PdReset) {
            state_.phase = EpdPhase::PdSteady;
        }
    }

    state_.prevLoss = state_.lastLoss;
    state_.lastLoss = loss;
    awaitingObservation_ = false;
}

}  // namespace lrctl
