// SPDX-License-Identifier: Apache-2.0
#include "metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace lrctl {

namespace {

std::vector<const EpochRecord*> runRecords(const Trace& trace, int runId)
{
    std::vector<const EpochRecord*> records;
    for (const EpochRecord& r : trace.records)
        if (r.runId == runId) records.push_back(&r);
    if (records.empty())
        throw std::invalid_argument("metrics: no records for run " + std::to_string(runId));
    return records;
}

}  // namespace

double populationStd(const std::vector<double>& values)
{
    if (values.empty()) throw std::invalid_argument("populationStd: empty input");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    return std::sqrt(var / static_cast<double>(values.size()));
}

std::pair<double, double> finalValues(const Trace& trace, int runId)
{
    const auto records = runRecords(trace, runId);
    const EpochRecord& last = *records.back();
    return {last.valLoss, 100.0 * last.valAccuracy};
}

double lastWindowStd(const Trace& trace, int runId, double windowFraction)
{
    const auto records = runRecords(trace, runId);
    const std::size_t window = static_cast<std::size_t>(
        std::ceil(windowFraction * static_cast<double>(records.size())));
    if (window < 2)
        throw std::invalid_argument("lastWindowStd: window holds fewer than 2 epochs");
    std::vector<double> tail;
    tail.reserve(window);
    for (std::size_t i = records.size() - window; i < records.size(); ++i)
        tail.push_back(100.0 * records[i]->valAccuracy);
    return populationStd(tail);
}

int firstEpochTo95(const Trace& trace, int runId)
{
    const auto records = runRecords(trace, runId);
    const double threshold = 0.95 * records.back()->valAccuracy;
    for (const EpochRecord* r : records)
        if (r->valAccuracy >= threshold) return r->globalEpoch;
    return records.back()->globalEpoch;
}

MetricsSummary aggregate(const Trace& trace)
{
    std::vector<double> losses, accuracies, windowStds, firstEpochs;
    for (std::size_t run = 0; run < trace.runOutcomes.size(); ++run) {
        if (!trace.runOutcomes[run].completed) continue;
        const int runId = static_cast<int>(run);
        const auto [loss, accuracy] = finalValues(trace, runId);
        losses.push_back(loss);
        accuracies.push_back(accuracy);
        windowStds.push_back(lastWindowStd(trace, runId));
        firstEpochs.push_back(static_cast<double>(firstEpochTo95(trace, runId)));
    }
    if (losses.empty()) throw std::runtime_error("aggregate: no complete runs to aggregate");

    const auto reduce = [](const std::vector<double>& values) {
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        return MeanStd{mean, populationStd(values)};
    };
    MetricsSummary summary;
    summary.finalLoss = reduce(losses);
    summary.finalAccuracy = reduce(accuracies);
    summary.lastWindowAccuracyStd = reduce(windowStds);
    summary.firstEpochTo95 = reduce(firstEpochs);
    summary.runsAggregated = static_cast<int>(losses.size());
    return summary;
}

}  // namespace lrctl
