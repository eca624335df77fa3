// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "schedule.hpp"

namespace lrctl {

/// Phases of the two-phase E/PD policy within one data batch.
/// Transitions are one-way: ExponentialGrowth -> PdReset -> PdSteady.
/// resetForBatch() restores ExponentialGrowth.
enum class EpdPhase {
    ExponentialGrowth,  // rate doubles every epoch while the loss keeps falling
    PdReset,            // one epoch at half the last doubled rate
    PdSteady,           // PD law with the gains tuned during the growth phase
};

std::ostream& operator<<(std::ostream& out, EpdPhase phase);

/// Mutable per-batch state of a running policy. Exposed read-only through
/// LrController::state() so tests and traces can inspect the machine.
struct ControllerState {
    int epoch = 0;                 // epochs emitted since the last batch arrival
    EpdPhase phase = EpdPhase::ExponentialGrowth;
    double currentLr = 0.0;        // most recently emitted rate; lr(0) right after reset
    double batchInitialLoss = 0.0; // loss(0), the normalizer, measured at batch arrival
    double lastLoss = 0.0;         // loss(k)
    double prevLoss = 0.0;         // loss(k-1)
    double tunedGainP = 0.0;       // K_P adopted at the E-phase exit (E/PD only)
    double tunedGainD = 0.0;       // K_D adopted at the E-phase exit (E/PD only)
};

/// Uniform "observe validation loss, emit next learning rate" state machine
/// covering every schedule kind. The driving loop per batch is:
///
///   controller.resetForBatch(lossAtArrival);
///   for each epoch:
///       double lr = controller.nextLr();   // rate for the upcoming epoch
///       ... train one epoch at lr ...
///       controller.observeLoss(validationLossAfterEpoch);
///
/// nextLr() and observeLoss() must strictly alternate; the controller
/// throws std::logic_error otherwise. Every emitted rate is strictly
/// positive for any nonnegative observed-loss sequence.
class LrController {
public:
    explicit LrController(Schedule schedule);

    /// Arm the controller for a new data batch. `initialLoss` is the
    /// validation loss measured before the batch's first training epoch;
    /// it must be positive since it normalizes the P/PD terms.
    void resetForBatch(double initialLoss);

    /// Emit the learning rate for the upcoming epoch and advance the
    /// epoch counter. Deterministic in (schedule, observed-loss history).
    double nextLr();

    /// Record the validation loss measured after the epoch nextLr() was
    /// emitted for. Drives the E/PD phase transitions.
    void observeLoss(double loss);

    const Schedule& schedule() const { return schedule_; }
    const ControllerState& state() const { return state_; }

private:
    Schedule schedule_;
    ControllerState state_;
    bool armed_ = false;
    bool awaitingObservation_ = false;
};

}  // namespace lrctl
