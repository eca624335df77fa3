// SPDX-License-Identifier: Apache-2.0
#include "network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rng.hpp"

namespace lrctl {

namespace {

constexpr double kProbClip = 1e-7;

double clipProb(double p)
{
    return std::min(std::max(p, kProbClip), 1.0 - kProbClip);
}

// Forward pass keeping every layer's post-activation; activations[0] is
// the input, activations.back() the softmax output.
std::vector<Matrix> forwardCached(const Network& net, const Matrix& features)
{
    if (features.cols != static_cast<std::size_t>(net.inputDim()))
        throw std::invalid_argument("forward: feature dimension does not match the input layer");

    std::vector<Matrix> activations;
    activations.reserve(net.layerCount() + 1);
    activations.push_back(features);

    for (std::size_t l = 0; l < net.layerCount(); ++l) {
        const Matrix& w = net.weights[l];
        const std::vector<double>& b = net.biases[l];
        const Matrix& in = activations.back();
        Matrix out(in.rows, w.cols);
        for (std::size_t i = 0; i < in.rows; ++i) {
            const double* src = in.row(i);
            double* dst = out.row(i);
            for (std::size_t j = 0; j < w.cols; ++j) dst[j] = b[j];
            for (std::size_t k = 0; k < w.rows; ++k) {
                const double a = src[k];
                if (a == 0.0) continue;
                const double* wrow = w.row(k);
                for (std::size_t j = 0; j < w.cols; ++j) dst[j] += a * wrow[j];
            }
            if (l + 1 == net.layerCount()) {
                // softmax with max subtraction, overflow-safe
                double mx = dst[0];
                for (std::size_t j = 1; j < w.cols; ++j) mx = std::max(mx, dst[j]);
                double sum = 0.0;
                for (std::size_t j = 0; j < w.cols; ++j) {
                    dst[j] = std::exp(dst[j] - mx);
                    sum += dst[j];
                }
                for (std::size_t j = 0; j < w.cols; ++j) dst[j] /= sum;
            } else {
                for (std::size_t j = 0; j < w.cols; ++j) dst[j] = std::max(dst[j], 0.0);
            }
        }
        activations.push_back(std::move(out));
    }
    return activations;
}

}  // namespace

Network xavierInit(const std::vector<int>& layerSizes, std::uint64_t seed)
{
    if (layerSizes.size() < 2)
        throw std::invalid_argument("xavierInit: need at least an input and an output layer");
    for (int s : layerSizes)
        if (s < 1) throw std::invalid_argument("xavierInit: layer sizes must be positive");

    std::mt19937_64 rng(seed);
    Network net;
    net.layerSizes = layerSizes;
    for (std::size_t l = 0; l + 1 < layerSizes.size(); ++l) {
        const int fanIn = layerSizes[l];
        const int fanOut = layerSizes[l + 1];
        const double limit = std::sqrt(6.0 / static_cast<double>(fanIn + fanOut));
        Matrix w(static_cast<std::size_t>(fanIn), static_cast<std::size_t>(fanOut));
        for (double& v : w.data) v = uniformIn(rng, -limit, limit);
        net.weights.push_back(std::move(w));
        net.biases.emplace_back(static_cast<std::size_t>(fanOut), 0.0);
    }
    return net;
}

Matrix forward(const Network& net, const Matrix& features)
{
    return forwardCached(net, features).back();
}

double crossEntropyLoss(const Matrix& predictions, const Matrix& labels)
{
    if (!predictions.sameShape(labels))
        throw std::invalid_argument("crossEntropyLoss: predictions and labels differ in shape");
    if (predictions.rows == 0)
        throw std::invalid_argument("crossEntropyLoss: empty input");

    double total = 0.0;
    for (std::size_t i = 0; i < predictions.rows; ++i) {
        const double* p = predictions.row(i);
        const double* y = labels.row(i);
        for (std::size_t c = 0; c < predictions.cols; ++c) {
            const double pc = clipProb(p[c]);
            total += y[c] * std::log(pc) + (1.0 - y[c]) * std::log(1.0 - pc);
        }
    }
    return -total / static_cast<double>(predictions.rows);
}

Gradients computeGradients(const Network& net, const Matrix& features, const Matrix& labels)
{
    if (labels.cols != static_cast<std::size_t>(net.outputDim()))
        throw std::invalid_argument("computeGradients: label width does not match the output layer");
    if (features.rows != labels.rows)
        throw std::invalid_argument("computeGradients: feature/label row counts differ");
    if (features.rows == 0)
        throw std::invalid_argument("computeGradients: empty mini-batch");

    const std::vector<Matrix> acts = forwardCached(net, features);
    const std::size_t layers = net.layerCount();
    const double invCount = 1.0 / static_cast<double>(features.rows);

    Gradients grads;
    grads.weights.reserve(layers);
    grads.biases.reserve(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        grads.weights.emplace_back(net.weights[l].rows, net.weights[l].cols);
        grads.biases.emplace_back(net.biases[l].size(), 0.0);
    }

    // Output delta. For L = -(1/T) sum y*log(p) + (1-y)*log(1-p) composed
    // with softmax: with g_c = dL/dp_c, dL/dz_j = p_j * (g_j - sum_c g_c p_c).
    const Matrix& probs = acts.back();
    Matrix delta(probs.rows, probs.cols);
    for (std::size_t i = 0; i < probs.rows; ++i) {
        const double* p = probs.row(i);
        const double* y = labels.row(i);
        double* dz = delta.row(i);
        double dot = 0.0;
        for (std::size_t c = 0; c < probs.cols; ++c) {
            const double pc = clipProb(p[c]);
            const double g = -invCount * (y[c] / pc - (1.0 - y[c]) / (1.0 - pc));
            dz[c] = g;  // hold dL/dp for now
            dot += g * p[c];
        }
        for (std::size_t c = 0; c < probs.cols; ++c) dz[c] = p[c] * (dz[c] - dot);
    }

    for (std::size_t l = layers; l-- > 0;) {
        const Matrix& in = acts[l];
        Matrix& gw = grads.weights[l];
        std::vector<double>& gb = grads.biases[l];
        for (std::size_t i = 0; i < in.rows; ++i) {
            const double* a = in.row(i);
            const double* dz = delta.row(i);
            for (std::size_t k = 0; k < gw.rows; ++k) {
                const double ak = a[k];
                if (ak == 0.0) continue;
                double* grow = gw.row(k);
                for (std::size_t j = 0; j < gw.cols; ++j) grow[j] += ak * dz[j];
            }
            for (std::size_t j = 0; j < gw.cols; ++j) gb[j] += dz[j];
        }
        if (l == 0) break;
        // Propagate through the ReLU of layer l-1's output.
        const Matrix& w = net.weights[l];
        Matrix prev(in.rows, w.rows);
        for (std::size_t i = 0; i < in.rows; ++i) {
            const double* dz = delta.row(i);
            const double* a = in.row(i);
            double* dprev = prev.row(i);
            for (std::size_t k = 0; k < w.rows; ++k) {
                if (a[k] <= 0.0) {
                    dprev[k] = 0.0;
                    continue;
                }
                const double* wrow = w.row(k);
                double sum = 0.0;
                for (std::size_t j = 0; j < w.cols; ++j) sum += wrow[j] * dz[j];
                dprev[k] = sum;
            }
        }
        delta = std::move(prev);
    }
    return grads;
}

void sgdStep(Network& net, const Matrix& features, const Matrix& labels, double lr)
{
    if (!(lr >= 0.0) || !std::isfinite(lr))
        throw std::invalid_argument("sgdStep: learning rate must be a nonnegative finite real");

    const Gradients grads = computeGradients(net, features, labels);
    for (std::size_t l = 0; l < net.layerCount(); ++l) {
        for (double g : grads.weights[l].data)
            if (!std::isfinite(g)) throw DivergenceError("sgdStep: non-finite weight gradient");
        for (double g : grads.biases[l])
            if (!std::isfinite(g)) throw DivergenceError("sgdStep: non-finite bias gradient");
    }
    for (std::size_t l = 0; l < net.layerCount(); ++l) {
        Matrix& w = net.weights[l];
        const Matrix& gw = grads.weights[l];
        for (std::size_t idx = 0; idx < w.data.size(); ++idx) w.data[idx] -= lr * gw.data[idx];
        std::vector<double>& b = net.biases[l];
        const std::vector<double>& gb = grads.biases[l];
        for (std::size_t j = 0; j < b.size(); ++j) b[j] -= lr * gb[j];
    }
}

void trainOneEpoch(Network& net, const LabeledSet& batch, double lr, int miniBatchSize,
                   std::mt19937_64& rng)
{
    if (batch.size() == 0) throw std::invalid_argument("trainOneEpoch: empty batch");
    if (miniBatchSize < 1) throw std::invalid_argument("trainOneEpoch: mini-batch size must be >= 1");

    const std::vector<std::size_t> order = randomPermutation(rng, batch.size());
    const std::size_t mb = static_cast<std::size_t>(miniBatchSize);
    for (std::size_t start = 0; start < order.size(); start += mb) {
        const std::size_t count = std::min(mb, order.size() - start);
        Matrix feats(count, batch.featureDim());
        Matrix labels(count, batch.numClasses());
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t src = order[start + i];
            std::copy_n(batch.features.row(src), feats.cols, feats.row(i));
            std::copy_n(batch.labels.row(src), labels.cols, labels.row(i));
        }
        sgdStep(net, feats, labels, lr);
    }
}

EvalResult evaluate(const Network& net, const LabeledSet& testSet)
{
    if (testSet.size() == 0) throw std::invalid_argument("evaluate: empty test set");

    const Matrix probs = forward(net, testSet.features);
    EvalResult result;
    result.loss = crossEntropyLoss(probs, testSet.labels);

    std::size_t correct = 0;
    for (std::size_t i = 0; i < probs.rows; ++i) {
        const double* p = probs.row(i);
        const double* y = testSet.labels.row(i);
        std::size_t predicted = 0, truth = 0;
        for (std::size_t c = 1; c < probs.cols; ++c) {
            if (p[c] > p[predicted]) predicted = c;  // ties keep the lowest index
            if (y[c] > y[truth]) truth = c;
        }
        if (predicted == truth) ++correct;
    }
    result.accuracy = static_cast<double>(correct) / static_cast<double>(probs.rows);
    return result;
}

}  // namespace lrctl
