// SPDX-License-Identifier: Apache-2.0
#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lrctl {

namespace {

// Keeps the data-side RNG stream away from the per-run seeds baseSeed+r.
constexpr std::uint64_t kPartitionSeedSalt = 0x9e3779b97f4a7c15ull;

constexpr double kDivergenceLossCap = 1e6;

std::vector<int> fullLayerSizes(const ExperimentConfig& config, const BatchStream& stream)
{
    std::vector<int> sizes;
    sizes.push_back(static_cast<int>(stream.testSet().featureDim()));
    for (int h : config.plant.hiddenLayers) sizes.push_back(h);
    sizes.push_back(static_cast<int>(stream.testSet().numClasses()));
    return sizes;
}

}  // namespace

void ExperimentConfig::validate() const
{
    schedule.validate();
    if (runs < 1) throw std::invalid_argument("config: runs must be at least 1");
    if (stream.batchSize == 0 || stream.numBatches == 0)
        throw std::invalid_argument("config: batch_size and num_batches must be positive");
    if (plant.miniBatchSize < 1)
        throw std::invalid_argument("config: mini_batch_size must be at least 1");
    for (int h : plant.hiddenLayers)
        if (h < 1) throw std::invalid_argument("config: hidden layer sizes must be positive");
    if (stream.source == StreamSpec::Source::Synthetic) {
        if (stream.numClasses < 2)
            throw std::invalid_argument("config: num_classes must be at least 2");
        if (stream.featureDim < 1)
            throw std::invalid_argument("config: feature_dim must be positive");
        if (stream.testSize < 2)
            throw std::invalid_argument("config: test_size must be at least 2");
        if (!(stream.spread > 0.0))
            throw std::invalid_argument("config: spread must be positive");
    } else {
        if (stream.idxTrainImages.empty() || stream.idxTrainLabels.empty() ||
            stream.idxTestImages.empty() || stream.idxTestLabels.empty())
            throw std::invalid_argument("config: all four idx_* paths are required for stream=idx");
    }
}

int Trace::completeRuns() const
{
    int n = 0;
    for (const RunOutcome& outcome : runOutcomes)
        if (outcome.completed) ++n;
    return n;
}

BatchStream buildStream(const StreamSpec& spec, int epochsPerBatch, std::int64_t baseSeed)
{
    const std::uint64_t dataSeed = static_cast<std::uint64_t>(baseSeed);
    LabeledSet trainPool;
    LabeledSet testSet;

    if (spec.source == StreamSpec::Source::Synthetic) {
        const std::size_t needTrain = spec.batchSize * spec.numBatches;
        const std::size_t classes = static_cast<std::size_t>(spec.numClasses);
        const std::size_t perClassTrain = (needTrain + classes - 1) / classes;
        const std::size_t perClassTest = (spec.testSize + classes - 1) / classes;

        // One draw covers train and test so both see the same class means;
        // the per-class blocks are then split so the sets stay disjoint.
        const LabeledSet all =
            synthesizeBlobs(spec.numClasses, spec.featureDim,
                            static_cast<int>(perClassTrain + perClassTest), spec.spread, dataSeed);

        trainPool.features = Matrix(perClassTrain * classes, all.featureDim());
        trainPool.labels = Matrix(perClassTrain * classes, classes);
        testSet.features = Matrix(spec.testSize, all.featureDim());
        testSet.labels = Matrix(spec.testSize, classes);

        const std::size_t perClassAll = perClassTrain + perClassTest;
        std::size_t trainRow = 0;
        for (std::size_t c = 0; c < classes; ++c) {
            for (std::size_t i = 0; i < perClassTrain; ++i, ++trainRow) {
                const std::size_t src = c * perClassAll + i;
                std::copy_n(all.features.row(src), all.featureDim(), trainPool.features.row(trainRow));
                std::copy_n(all.labels.row(src), classes, trainPool.labels.row(trainRow));
            }
        }
        // Interleave classes so truncation to testSize stays near-balanced.
        std::size_t testRow = 0;
        for (std::size_t i = 0; i < perClassTest && testRow < spec.testSize; ++i) {
            for (std::size_t c = 0; c < classes && testRow < spec.testSize; ++c, ++testRow) {
                const std::size_t src = c * perClassAll + perClassTrain + i;
                std::copy_n(all.features.row(src), all.featureDim(), testSet.features.row(testRow));
                std::copy_n(all.labels.row(src), classes, testSet.labels.row(testRow));
            }
        }
    } else {
        trainPool = loadIdx(spec.idxTrainImages, spec.idxTrainLabels);
        testSet = loadIdx(spec.idxTestImages, spec.idxTestLabels);
    }

    BatchStream stream = partitionIntoBatches(std::move(trainPool), spec.batchSize,
                                              spec.numBatches, dataSeed ^ kPartitionSeedSalt);
    stream.setTestSet(std::move(testSet));
    stream.setEpochsPerBatch(epochsPerBatch);
    return stream;
}

Trace runExperiment(const ExperimentConfig& config, const RunObserver& observer)
{
    config.validate();

    const BatchStream stream =
        buildStream(config.stream, config.schedule.epochsPerBatch, config.baseSeed);
    const std::vector<int> layerSizes = fullLayerSizes(config, stream);
    const int epochs = config.schedule.epochsPerBatch;

    Trace trace;
    trace.runOutcomes.resize(static_cast<std::size_t>(config.runs));

    for (int run = 0; run < config.runs; ++run) {
        const std::uint64_t runSeed = static_cast<std::uint64_t>(config.baseSeed) +
                                      static_cast<std::uint64_t>(run);
        Network net = xavierInit(layerSizes, runSeed);
        std::mt19937_64 epochRng(runSeed);
        LrController controller(config.schedule);
        RunOutcome& outcome = trace.runOutcomes[static_cast<std::size_t>(run)];
        outcome.completed = true;

        BatchStream::Cursor cursor = stream.cursor();
        LabeledSet batch;
        int globalEpoch = 0;
        for (int batchIndex = 0; cursor.next(batch); ++batchIndex) {
            if (observer.onBatchArrival) observer.onBatchArrival(run, batchIndex, net);

            const EvalResult arrival = evaluate(net, stream.testSet());
            if (!std::isfinite(arrival.loss)) {
                outcome = {false, "non-finite validation loss at batch arrival"};
                break;
            }
            controller.resetForBatch(arrival.loss);

            bool aborted = false;
            for (int epoch = 1; epoch <= epochs; ++epoch) {
                const double lr = controller.nextLr();
                try {
                    trainOneEpoch(net, batch, lr, config.plant.miniBatchSize, epochRng);
                } catch (const DivergenceError& err) {
                    outcome = {false, err.what()};
                    aborted = true;
                    break;
                }
                const EvalResult eval = evaluate(net, stream.testSet());
                ++globalEpoch;
                trace.records.push_back({run, batchIndex, epoch, globalEpoch, lr, eval.loss,
                                         eval.accuracy});
                if (observer.onEpochEnd) observer.onEpochEnd(run, batchIndex, epoch, net);
                if (!std::isfinite(eval.loss) || eval.loss > kDivergenceLossCap) {
                    outcome = {false, "validation loss diverged at global epoch " +
                                          std::to_string(globalEpoch)};
                    aborted = true;
                    break;
                }
                controller.observeLoss(eval.loss);
            }
            if (aborted) break;
        }
    }
    return trace;
}

QuadraticPlant::QuadraticPlant(double curvature, double initialWeight)
    : curvature_(curvature), weight_(initialWeight)
{
    if (!(curvature > 0.0))
        throw std::invalid_argument("QuadraticPlant: curvature must be positive");
}

std::vector<QuadraticEpoch> runScheduleOnQuadratic(const Schedule& schedule, double curvature,
                                                   double initialWeight, int numBatches)
{
    if (numBatches < 1)
        throw std::invalid_argument("runScheduleOnQuadratic: need at least one batch");

    QuadraticPlant plant(curvature, initialWeight);
    LrController controller(schedule);
    std::vector<QuadraticEpoch> epochsOut;
    for (int batch = 0; batch < numBatches; ++batch) {
        controller.resetForBatch(plant.loss());
        for (int epoch = 1; epoch <= schedule.epochsPerBatch; ++epoch) {
            const double lr = controller.nextLr();
            plant.trainEpoch(lr);
            const double loss = plant.loss();
            controller.observeLoss(loss);
            epochsOut.push_back({batch, epoch, lr, loss});
        }
    }
    return epochsOut;
}

}  // namespace lrctl
