// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include "harness.hpp"

namespace lrctl {

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // population (divide-by-n) standard deviation
};

/// The four evaluation indicators, each aggregated over complete runs.
/// Accuracy figures are in percent.
struct MetricsSummary {
    MeanStd finalLoss;
    MeanStd finalAccuracy;
    MeanStd lastWindowAccuracyStd;
    MeanStd firstEpochTo95;
    int runsAggregated = 0;
};

double populationStd(const std::vector<double>& values);

/// Validation loss and accuracy (percent) at the run's last epoch.
std::pair<double, double> finalValues(const Trace& trace, int runId);

/// Population standard deviation of the accuracy curve (percent) over the
/// final ceil(windowFraction * totalEpochs) epochs; the window must hold
/// at least two epochs.
double lastWindowStd(const Trace& trace, int runId, double windowFraction = 0.10);

/// Smallest 1-based global epoch whose accuracy reaches 95% of the run's
/// final accuracy. Always exists: the final epoch qualifies.
int firstEpochTo95(const Trace& trace, int runId);

/// Reduces the per-run indicators of every complete run to mean and
/// population standard deviation. Throws if no run completed.
MetricsSummary aggregate(const Trace& trace);

}  // namespace lrctl
