// SPDX-License-Identifier: Apache-2.0
#include "dataset.hpp"

#include <array>
#include <fstream>
#include <random>

#include "rng.hpp"

namespace lrctl {

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803;
constexpr std::uint32_t kLabelsMagic = 0x00000801;
constexpr std::size_t kIdxClasses = 10;

std::uint32_t readBigEndianU32(std::istream& in, const std::string& path)
{
    std::array<unsigned char, 4> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), 4))
        throw IoError("loadIdx: truncated header in " + path);
    return (static_cast<std::uint32_t>(bytes[0]) << 24) |
           (static_cast<std::uint32_t>(bytes[1]) << 16) |
           (static_cast<std::uint32_t>(bytes[2]) << 8) | static_cast<std::uint32_t>(bytes[3]);
}

void writeBigEndianU32(std::ostream& out, std::uint32_t value)
{
    const std::array<char, 4> bytes = {static_cast<char>((value >> 24) & 0xff),
                                       static_cast<char>((value >> 16) & 0xff),
                                       static_cast<char>((value >> 8) & 0xff),
                                       static_cast<char>(value & 0xff)};
    out.write(bytes.data(), 4);
}

}  // namespace

void setOneHot(Matrix& labels, std::size_t row, std::size_t classIndex)
{
    if (classIndex >= labels.cols)
        throw std::invalid_argument("setOneHot: class index out of range");
    double* dst = labels.row(row);
    for (std::size_t c = 0; c < labels.cols; ++c) dst[c] = 0.0;
    dst[classIndex] = 1.0;
}

std::size_t labelClass(const LabeledSet& set, std::size_t row)
{
    const double* y = set.labels.row(row);
    for (std::size_t c = 0; c < set.labels.cols; ++c)
        if (y[c] == 1.0) return c;
    throw std::logic_error("labelClass: row is not one-hot");
}

LabeledSet synthesizeBlobs(int numClasses, int dim, int perClassCount, double spread,
                           std::uint64_t seed)
{
    if (numClasses < 2) throw std::invalid_argument("synthesizeBlobs: need at least 2 classes");
    if (dim < 1) throw std::invalid_argument("synthesizeBlobs: dimension must be positive");
    if (perClassCount < 1)
        throw std::invalid_argument("synthesizeBlobs: per-class count must be positive");
    if (!(spread > 0.0)) throw std::invalid_argument("synthesizeBlobs: spread must be positive");

    std::mt19937_64 rng(seed);
    Matrix means(static_cast<std::size_t>(numClasses), static_cast<std::size_t>(dim));
    for (double& v : means.data) v = uniformIn(rng, -1.0, 1.0);

    const std::size_t total = static_cast<std::size_t>(numClasses) * perClassCount;
    LabeledSet set;
    set.features = Matrix(total, static_cast<std::size_t>(dim));
    set.labels = Matrix(total, static_cast<std::size_t>(numClasses));
    std::size_t row = 0;
    for (int c = 0; c < numClasses; ++c) {
        const double* mean = means.row(static_cast<std::size_t>(c));
        for (int i = 0; i < perClassCount; ++i, ++row) {
            double* x = set.features.row(row);
            for (int d = 0; d < dim; ++d) x[d] = mean[d] + spread * gaussian(rng);
            setOneHot(set.labels, row, static_cast<std::size_t>(c));
        }
    }
    return set;
}

LabeledSet loadIdx(const std::string& imagesPath, const std::string& labelsPath)
{
    std::ifstream images(imagesPath, std::ios::binary);
    if (!images) throw IoError("loadIdx: cannot open " + imagesPath);
    std::ifstream labels(labelsPath, std::ios::binary);
    if (!labels) throw IoError("loadIdx: cannot open " + labelsPath);

    if (readBigEndianU32(images, imagesPath) != kImagesMagic)
        throw IoError("loadIdx: bad image magic in " + imagesPath);
    const std::uint32_t imageCount = readBigEndianU32(images, imagesPath);
    const std::uint32_t rows = readBigEndianU32(images, imagesPath);
    const std::uint32_t cols = readBigEndianU32(images, imagesPath);

    if (readBigEndianU32(labels, labelsPath) != kLabelsMagic)
        throw IoError("loadIdx: bad label magic in " + labelsPath);
    const std::uint32_t labelCount = readBigEndianU32(labels, labelsPath);

    if (imageCount != labelCount)
        throw IoError("loadIdx: image/label count mismatch (" + std::to_string(imageCount) +
                      " vs " + std::to_string(labelCount) + ")");
    if (imageCount == 0) throw IoError("loadIdx: empty dataset in " + imagesPath);

    const std::size_t pixelsPerImage = static_cast<std::size_t>(rows) * cols;
    std::vector<unsigned char> pixels(static_cast<std::size_t>(imageCount) * pixelsPerImage);
    if (!images.read(reinterpret_cast<char*>(pixels.data()),
                     static_cast<std::streamsize>(pixels.size())))
        throw IoError("loadIdx: truncated image payload in " + imagesPath);

    std::vector<unsigned char> rawLabels(imageCount);
    if (!labels.read(reinterpret_cast<char*>(rawLabels.data()),
                     static_cast<std::streamsize>(rawLabels.size())))
        throw IoError("loadIdx: truncated label payload in " + labelsPath);

    LabeledSet set;
    set.features = Matrix(imageCount, pixelsPerImage);
    set.labels = Matrix(imageCount, kIdxClasses);
    for (std::size_t i = 0; i < imageCount; ++i) {
        double* x = set.features.row(i);
        const unsigned char* src = pixels.data() + i * pixelsPerImage;
        for (std::size_t p = 0; p < pixelsPerImage; ++p)
            x[p] = static_cast<double>(src[p]) / 255.0;
        if (rawLabels[i] >= kIdxClasses)
            throw IoError("loadIdx: label byte out of range in " + labelsPath);
        setOneHot(set.labels, i, rawLabels[i]);
    }
    return set;
}

void writeIdxImages(const std::string& path, const std::vector<std::uint8_t>& pixels,
                    std::uint32_t count, std::uint32_t rows, std::uint32_t cols)
{
    if (pixels.size() != static_cast<std::size_t>(count) * rows * cols)
        throw std::invalid_argument("writeIdxImages: payload size does not match dimensions");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("writeIdxImages: cannot open " + path);
    writeBigEndianU32(out, kImagesMagic);
    writeBigEndianU32(out, count);
    writeBigEndianU32(out, rows);
    writeBigEndianU32(out, cols);
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
    if (!out) throw IoError("writeIdxImages: write failed for " + path);
}

void writeIdxLabels(const std::string& path, const std::vector<std::uint8_t>& labels)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("writeIdxLabels: cannot open " + path);
    writeBigEndianU32(out, kLabelsMagic);
    writeBigEndianU32(out, static_cast<std::uint32_t>(labels.size()));
    out.write(reinterpret_cast<const char*>(labels.data()),
              static_cast<std::streamsize>(labels.size()));
    if (!out) throw IoError("writeIdxLabels: write failed for " + path);
}

void writeIdxFixture(const std::string& directory)
{
    const std::vector<std::uint8_t> pixels = {0, 63, 127, 255, 8, 16, 32, 64};
    writeIdxImages(directory + "/fixture-images-idx3-ubyte", pixels, 2, 2, 2);
    writeIdxLabels(directory + "/fixture-labels-idx1-ubyte", {3, 7});
}

}  // namespace lrctl
