// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace lrctl {

/// Labeled data: features is T x D, labels is the T x C one-hot matrix
/// (exactly one 1 per row).
struct LabeledSet {
    Matrix features;
    Matrix labels;

    std::size_t size() const { return features.rows; }
    std::size_t featureDim() const { return features.cols; }
    std::size_t numClasses() const { return labels.cols; }

    bool operator==(const LabeledSet&) const = default;
};

/// One-hot label row helper; classIndex must be < numClasses.
void setOneHot(Matrix& labels, std::size_t row, std::size_t classIndex);

/// Index of the 1 in a one-hot label row.
std::size_t labelClass(const LabeledSet& set, std::size_t row);

/// Synthetic Gaussian clusters: one mean per class, drawn uniform in
/// [-1, 1]^dim from the seed, then perClassCount instances per class at
/// mean + spread * N(0, I). Instances are ordered class block by class
/// block; labels are one-hot.
LabeledSet synthesizeBlobs(int numClasses, int dim, int perClassCount, double spread,
                           std::uint64_t seed);

/// Reads an IDX image/label file pair (the distribution format used by
/// MNIST-style datasets): big-endian u32 magic (0x00000803 images,
/// 0x00000801 labels) and dimensions, then a raw u8 payload. Pixels are
/// scaled to [0, 1] and flattened row-major; labels become one-hot over
/// 10 classes.
LabeledSet loadIdx(const std::string& imagesPath, const std::string& labelsPath);

/// Writers for the same format, used by `gen-fixtures` and the tests.
void writeIdxImages(const std::string& path, const std::vector<std::uint8_t>& pixels,
                    std::uint32_t count, std::uint32_t rows, std::uint32_t cols);
void writeIdxLabels(const std::string& path, const std::vector<std::uint8_t>& labels);

/// Writes the small reference fixture (two 2x2 images, labels {3, 7}) as
/// fixture-images-idx3-ubyte / fixture-labels-idx1-ubyte under `directory`.
void writeIdxFixture(const std::string& directory);

/// Raised on malformed input files and failed writes.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lrctl
