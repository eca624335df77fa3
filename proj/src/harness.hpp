// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "controller.hpp"
#include "network.hpp"
#include "stream.hpp"

namespace lrctl {

/// Where the batch stream comes from: synthetic Gaussian clusters or an
/// IDX image/label file quartet.
struct StreamSpec {
    enum class Source { Synthetic, Idx };
    Source source = Source::Synthetic;

    // Synthetic scenario
    int numClasses = 10;
    int featureDim = 32;
    double spread = 0.8;
    std::size_t testSize = 500;

    // Shared stream shape
    std::size_t batchSize = 1000;
    std::size_t numBatches = 5;

    // IDX paths (when source == Idx)
    std::string idxTrainImages;
    std::string idxTrainLabels;
    std::string idxTestImages;
    std::string idxTestLabels;

    bool operator==(const StreamSpec&) const = default;
};

struct PlantSpec {
    std::vector<int> hiddenLayers = {64, 48, 32, 24};
    int miniBatchSize = 32;

    bool operator==(const PlantSpec&) const = default;
};

struct ExperimentConfig {
    Schedule schedule;
    StreamSpec stream;
    PlantSpec plant;
    int runs = 3;
    std::int64_t baseSeed = 1;

    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

struct EpochRecord {
    int runId = 0;
    int batchIndex = 0;     // 0-based batch within the stream
    int epochInBatch = 0;   // 1-based epoch within the batch
    int globalEpoch = 0;    // 1-based epoch within the run
    double lrUsed = 0.0;
    double valLoss = 0.0;
    double valAccuracy = 0.0;  // fraction in [0, 1]
};

struct RunOutcome {
    bool completed = false;
    std::string diagnostic;  // set when the run terminated early
};

struct Trace {
    std::vector<EpochRecord> records;  // ordered by (runId, globalEpoch)
    std::vector<RunOutcome> runOutcomes;

    int completeRuns() const;
};

/// Builds the batch stream described by the spec. Data generation and
/// partitioning depend only on (spec, baseSeed), so every run of an
/// experiment sees the same batches and test set; per-run seeds vary only
/// the network initialization and the mini-batch shuffles.
BatchStream buildStream(const StreamSpec& spec, int epochsPerBatch, std::int64_t baseSeed);

/// Test hooks into the training loop; normal callers leave both empty.
struct RunObserver {
    std::function<void(int run, int batch, const Network&)> onBatchArrival;
    std::function<void(int run, int batch, int epochInBatch, const Network&)> onEpochEnd;
};

/// Runs the full experiment. Per run r (seeded baseSeed + r): initialize
/// the network once, then for each arriving batch evaluate loss(0) on the
/// test set, reset the controller, and run E epochs of train-at-emitted-
/// rate / evaluate / feed the loss back. Weights persist across batches;
/// data does not. A non-finite or > 1e6 validation loss, or a non-finite
/// gradient, terminates that run early with a diagnostic.
Trace runExperiment(const ExperimentConfig& config, const RunObserver& observer = {});

/// One-parameter analytic stand-in for the trained network: an epoch at
/// rate lr maps w <- w * (1 - lr * curvature) and the loss is
/// 0.5 * curvature * w^2, so the loss strictly decreases iff lr < 2/curvature.
class QuadraticPlant {
public:
    QuadraticPlant(double curvature, double initialWeight);

    double loss() const { return 0.5 * curvature_ * weight_ * weight_; }
    void trainEpoch(double lr) { weight_ *= 1.0 - lr * curvature_; }
    double weight() const { return weight_; }

private:
    double curvature_;
    double weight_;
};

struct QuadraticEpoch {
    int batchIndex = 0;
    int epochInBatch = 0;
    double lrUsed = 0.0;
    double loss = 0.0;
};

/// Drives a schedule against the quadratic plant through the same
/// per-batch loop as runExperiment (loss(0) at arrival, then E epochs).
std::vector<QuadraticEpoch> runScheduleOnQuadratic(const Schedule& schedule, double curvature,
                                                   double initialWeight, int numBatches);

}  // namespace lrctl
