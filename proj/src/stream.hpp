// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dataset.hpp"

namespace lrctl {

/// A sequence of training batches arriving one at a time, plus the fixed
/// test set evaluated throughout. Batches are materialized on demand
/// through a forward-only cursor, so a consumer ever holds one batch; the
/// previous batch's data is dropped when the next one arrives.
class BatchStream {
public:
    BatchStream(std::shared_ptr<const LabeledSet> source, std::vector<std::size_t> order,
                std::size_t batchSize, std::size_t numBatches);

    std::size_t batchSize() const { return batchSize_; }
    std::size_t numBatches() const { return numBatches_; }

    const LabeledSet& testSet() const { return testSet_; }
    void setTestSet(LabeledSet testSet) { testSet_ = std::move(testSet); }

    int epochsPerBatch() const { return epochsPerBatch_; }
    void setEpochsPerBatch(int epochs) { epochsPerBatch_ = epochs; }

    /// Forward-only iteration over the batches. Each stream can hand out
    /// any number of independent cursors (one per run).
    class Cursor {
    public:
        bool next(LabeledSet& out);

    private:
        friend class BatchStream;
        explicit Cursor(const BatchStream* stream) : stream_(stream) {}
        const BatchStream* stream_;
        std::size_t index_ = 0;
    };

    Cursor cursor() const { return Cursor(this); }

private:
    std::shared_ptr<const LabeledSet> source_;
    std::vector<std::size_t> order_;  // first batchSize*numBatches entries are used
    std::size_t batchSize_;
    std::size_t numBatches_;
    LabeledSet testSet_;
    int epochsPerBatch_ = 0;
};

/// Splits `set` into `numBatches` disjoint shuffled batches of exactly
/// `batchSize` instances; leftover instances go unused. Deterministic in
/// the seed.
BatchStream partitionIntoBatches(LabeledSet set, std::size_t batchSize, std::size_t numBatches,
                                 std::uint64_t seed);

}  // namespace lrctl
