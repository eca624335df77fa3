// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "dataset.hpp"
#include "matrix.hpp"

namespace lrctl {

/// Dense feedforward classifier: ReLU hidden layers, softmax output,
/// trained by plain SGD. Weights are stored input-major: weights[l] has
/// shape layerSizes[l] x layerSizes[l+1].
struct Network {
    std::vector<int> layerSizes;
    std::vector<Matrix> weights;
    std::vector<std::vector<double>> biases;

    std::size_t layerCount() const { return weights.size(); }
    int inputDim() const { return layerSizes.front(); }
    int outputDim() const { return layerSizes.back(); }

    bool operator==(const Network&) const = default;
};

/// Per-layer weight and bias gradients, same shapes as the network.
struct Gradients {
    std::vector<Matrix> weights;
    std::vector<std::vector<double>> biases;
};

struct EvalResult {
    double loss = 0.0;
    double accuracy = 0.0;  // fraction in [0, 1]
};

/// Xavier-uniform initialization: weights uniform in
/// +/- sqrt(6 / (fanIn + fanOut)), biases zero, deterministic in seed.
Network xavierInit(const std::vector<int>& layerSizes, std::uint64_t seed);

/// Forward pass; returns the T x C row-stochastic prediction matrix.
Matrix forward(const Network& net, const Matrix& features);

/// Class-summed binary cross-entropy, averaged over instances:
///   -(1/T) sum_i sum_c  y*log(p) + (1-y)*log(1-p)
/// Predictions are clipped to [1e-7, 1 - 1e-7] before the logarithms, so
/// the result is finite even for inputs containing exact 0s and 1s.
double crossEntropyLoss(const Matrix& predictions, const Matrix& labels);

/// Analytic gradients of crossEntropyLoss(forward(net, features), labels)
/// with respect to every weight and bias.
Gradients computeGradients(const Network& net, const Matrix& features, const Matrix& labels);

/// One SGD step on the given mini-batch: w <- w - lr * grad.
/// Throws DivergenceError if any gradient is non-finite.
void sgdStep(Network& net, const Matrix& features, const Matrix& labels, double lr);

/// One epoch over the batch: shuffle once, then SGD steps on consecutive
/// mini-batches of `miniBatchSize` (the last one may be smaller).
void trainOneEpoch(Network& net, const LabeledSet& batch, double lr, int miniBatchSize,
                   std::mt19937_64& rng);

/// Full-set loss plus argmax accuracy (prediction ties break to the
/// lowest class index).
EvalResult evaluate(const Network& net, const LabeledSet& testSet);

/// Raised when training produces non-finite gradients; the harness turns
/// this into an early run termination with a diagnostic.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lrctl
