// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

namespace lrctl {

/// Learning-rate policies selectable per experiment.
enum class ScheduleKind {
    Constant,
    TimeInverseDecay,   // lr(k) = lr(k-1) / (1 + delta*k), restarted per batch
    ExpSineWaveDecay,   // exponentially decaying envelope with a sine ripple
    PControl,           // lr proportional to loss(k)/loss(0)
    PDControl,          // P term plus a derivative penalty on loss increase
    EpdControl,         // exponential growth phase, then self-tuned PD
};

const char* scheduleKindName(ScheduleKind kind);
bool scheduleKindFromString(const std::string& name, ScheduleKind& out);
std::ostream& operator<<(std::ostream& out, ScheduleKind kind);

/// Static description of one learning-rate policy and its hyperparameters.
/// Only the fields relevant to `kind` are consulted at runtime; the rest
/// keep their defaults so configs stay round-trippable.
struct Schedule {
    ScheduleKind kind = ScheduleKind::EpdControl;
    double initialLr = 0.01;     // lr(0), shared by every policy
    double timeDecay = 0.001;    // delta, TimeInverseDecay steepness
    double expDecayRate = 3.0;   // alpha, ExpSineWaveDecay envelope rate
    double sineFrequency = 6.0;  // beta, ExpSineWaveDecay ripple frequency
    double sineAmplitude = 0.4;  // gamma, ExpSineWaveDecay ripple amplitude
    double gainP = 0.01;         // K_P for P/PD control
    double gainD = 0.05;         // K_D for PD control
    int epochsPerBatch = 20;     // E, training epochs run on each data batch

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    bool operator==(const Schedule&) const = default;
};

/// Emitted learning rates never fall below this floor; keeps degenerate
/// zero-loss inputs from silencing the control signal entirely.
inline constexpr double kLrFloor = 1e-12;

/// One recursion step of the inverse-time decay: lr(k) = lr(k-1)/(1 + delta*k).
/// Recursive as specified; deliberately not the closed form lr(0)/(1 + delta*k).
double timeInverseNextLr(double previousLr, double timeDecay, int epoch);

/// Closed-form exponential-sine-wave rate at epoch k:
///   lr(k) = lr(0) * e^(-alpha*k/E) * (gamma*sin(beta*k/(2*pi)) + e^(-alpha*k/E) + 0.5)
/// Strictly positive for gamma in [0, 0.5).
double expSineWaveLr(const Schedule& schedule, int epoch);

/// Proportional rate K_P * loss(k)/loss(0). Returns 0 for zero loss; the
/// controller applies kLrFloor on emission.
double proportionalLr(double gainP, double currentLoss, double initialLoss);

/// PD rate K_P*loss(k)/loss(0) - K_D*(loss(k)-loss(k-1))/loss(0).
/// Falls back to the plain P value whenever the PD value is not positive.
double pdLrWithFallback(double gainP, double gainD, double currentLoss,
                        double previousLoss, double initialLoss);

}  // namespace lrctl
