// SPDX-License-Identifier: Apache-2.0
#include "stream.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "rng.hpp"

namespace lrctl {

BatchStream::BatchStream(std::shared_ptr<const LabeledSet> source, std::vector<std::size_t> order,
                         std::size_t batchSize, std::size_t numBatches)
    : source_(std::move(source)),
      order_(std::move(order)),
      batchSize_(batchSize),
      numBatches_(numBatches)
{
}

bool BatchStream::Cursor::next(LabeledSet& out)
{
    if (index_ >= stream_->numBatches_) return false;

    const LabeledSet& src = *stream_->source_;
    const std::size_t start = index_ * stream_->batchSize_;
    out.features = Matrix(stream_->batchSize_, src.featureDim());
    out.labels = Matrix(stream_->batchSize_, src.numClasses());
    for (std::size_t i = 0; i < stream_->batchSize_; ++i) {
        const std::size_t from = stream_->order_[start + i];
        std::copy_n(src.features.row(from), src.featureDim(), out.features.row(i));
        std::copy_n(src.labels.row(from), src.numClasses(), out.labels.row(i));
    }
    ++index_;
    return true;
}

BatchStream partitionIntoBatches(LabeledSet set, std::size_t batchSize, std::size_t numBatches,
                                 std::uint64_t seed)
{
    if (batchSize == 0 || numBatches == 0)
        throw std::invalid_argument("partitionIntoBatches: batch size and count must be positive");
    if (set.size() < batchSize * numBatches)
        throw std::invalid_argument("partitionIntoBatches: insufficient data for " +
                                    std::to_string(numBatches) + " batches of " +
                                    std::to_string(batchSize));

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order = randomPermutation(rng, set.size());
    return BatchStream(std::make_shared<const LabeledSet>(std::move(set)), std::move(order),
                       batchSize, numBatches);
}

}  // namespace lrctl
