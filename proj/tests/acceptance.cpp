// SPDX-License-Identifier: Apache-2.0
//
// Release acceptance suite. Each criterion prints one [PASS]/[FAIL] line;
// the binary exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "controller.hpp"
#include "harness.hpp"
#include "metrics.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "sweep.hpp"

using namespace lrctl;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> check;
};

bool closeRel(double actual, double expected, double tolerance)
{
    const double scale = std::max(std::abs(actual), std::abs(expected));
    return scale == 0.0 ? true : std::abs(actual - expected) / scale <= tolerance;
}

#define EXPECT(cond, message)                      \
    do {                                           \
        if (!(cond)) {                             \
            detail = (message);                    \
            return false;                          \
        }                                          \
    } while (0)

// ---- 1. scheduler exactness -------------------------------------------

bool schedulerExactness(std::string& detail)
{
    Schedule timeInv;
    timeInv.kind = ScheduleKind::TimeInverseDecay;
    timeInv.initialLr = 0.01;
    timeInv.timeDecay = 0.001;
    LrController tiCtl(timeInv);
    tiCtl.resetForBatch(1.0);
    const double l1 = tiCtl.nextLr();
    tiCtl.observeLoss(1.0);
    const double l2 = tiCtl.nextLr();
    EXPECT(closeRel(l1, 0.00999000999000999001, 1e-12), "time-inverse lr(1)");
    EXPECT(closeRel(l2, 0.00997006985030937127, 1e-12), "time-inverse lr(2)");

    Schedule expSine;
    expSine.kind = ScheduleKind::ExpSineWaveDecay;
    expSine.initialLr = 0.01;
    expSine.expDecayRate = 3.0;
    expSine.sineFrequency = 6.0;
    expSine.sineAmplitude = 0.4;
    expSine.epochsPerBatch = 60;
    EXPECT(closeRel(expSineWaveLr(expSine, 0), 0.015, 1e-12), "exp-sine lr(0)");
    EXPECT(closeRel(expSineWaveLr(expSine, 1), 0.016910373300138862288, 1e-12), "exp-sine lr(1)");

    EXPECT(closeRel(proportionalLr(0.01, 1.0, 2.0), 0.005, 1e-12), "P value");
    EXPECT(closeRel(pdLrWithFallback(0.01, 0.05, 1.0, 1.2, 2.0), 0.01, 1e-12), "PD value");
    EXPECT(closeRel(pdLrWithFallback(0.01, 0.05, 1.0, 0.5, 2.0), 0.005, 1e-12), "PD fallback");

    // E/PD hand trace: losses 2.30 (arrival), 2.10, 2.00, 2.05.
    Schedule epd;
    epd.kind = ScheduleKind::EpdControl;
    epd.initialLr = 0.01;
    LrController ctl(epd);
    ctl.resetForBatch(2.30);
    EXPECT(ctl.nextLr() == 0.02, "E/PD epoch-1 rate");
    ctl.observeLoss(2.10);
    EXPECT(ctl.nextLr() == 0.04, "E/PD epoch-2 rate");
    ctl.observeLoss(2.00);
    EXPECT(ctl.nextLr() == 0.08, "E/PD epoch-3 rate");
    ctl.observeLoss(2.05);
    EXPECT(ctl.nextLr() == 0.04, "E/PD reset-epoch rate");
    EXPECT(ctl.state().tunedGainP == 0.04, "E/PD tuned K_P");
    EXPECT(ctl.state().tunedGainD == 0.05, "E/PD tuned K_D");

    // Rise at the very first observation drops the rate back to lr(0).
    LrController early(epd);
    early.resetForBatch(2.0);
    early.nextLr();
    early.observeLoss(2.5);
    EXPECT(early.state().tunedGainP == 0.01, "E/PD early-rise K_P");
    EXPECT(early.nextLr() == 0.01, "E/PD early-rise epoch-2 rate");
    return true;
}

// ---- 2. gradient check --------------------------------------------------

bool gradientCheck(std::string& detail)
{
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        std::mt19937_64 rng(seed);
        Network net = xavierInit({6, 5, 4, 3}, seed);
        // Small bias offsets keep every pre-activation away from the ReLU
        // kink, where central differences see a one-sided slope.
        for (std::vector<double>& layerBiases : net.biases)
            for (double& b : layerBiases) b = 0.1 * gaussian(rng);
        Matrix features(8, 6);
        for (double& v : features.data) v = 1.5 * gaussian(rng);
        Matrix labels(8, 3);
        for (std::size_t i = 0; i < 8; ++i) labels.at(i, rng() % 3) = 1.0;

        const Gradients grads = computeGradients(net, features, labels);
        std::vector<double*> params;
        std::vector<double> analytic;
        for (std::size_t l = 0; l < net.layerCount(); ++l)
            for (std::size_t i = 0; i < net.weights[l].data.size(); ++i) {
                params.push_back(&net.weights[l].data[i]);
                analytic.push_back(grads.weights[l].data[i]);
            }
        for (std::size_t l = 0; l < net.layerCount(); ++l)
            for (std::size_t i = 0; i < net.biases[l].size(); ++i) {
                params.push_back(&net.biases[l][i]);
                analytic.push_back(grads.biases[l][i]);
            }

        const double h = 1e-6;
        for (int sample = 0; sample < 100; ++sample) {
            const std::size_t idx = rng() % params.size();
            const double original = *params[idx];
            *params[idx] = original + h;
            const double plus = crossEntropyLoss(forward(net, features), labels);
            *params[idx] = original - h;
            const double minus = crossEntropyLoss(forward(net, features), labels);
            *params[idx] = original;
            const double numeric = (plus - minus) / (2.0 * h);
            const double scale = std::max(std::abs(analytic[idx]), std::abs(numeric));
            if (scale < 1e-8) continue;
            const double relErr = std::abs(analytic[idx] - numeric) / scale;
            if (relErr >= 1e-5) {
                std::ostringstream oss;
                oss << "seed " << seed << " parameter " << idx << " relative error " << relErr;
                detail = oss.str();
                return false;
            }
        }
    }
    return true;
}

// ---- 3. quadratic-plant stability ---------------------------------------

bool quadraticStability(std::string& detail)
{
    // (a) any constant rate below 2/a descends strictly, every epoch.
    for (double curvature : {0.5, 1.0, 4.0}) {
        for (double fraction : {0.01, 0.2, 0.5, 0.9, 1.1, 1.5, 1.99}) {
            Schedule s;
            s.kind = ScheduleKind::Constant;
            s.initialLr = fraction / curvature;
            s.epochsPerBatch = 25;
            double prev = 0.5 * curvature;  // loss at w0 = 1
            for (const QuadraticEpoch& e : runScheduleOnQuadratic(s, curvature, 1.0, 2)) {
                if (!(e.loss < prev)) {
                    std::ostringstream oss;
                    oss << "constant lr " << s.initialLr << " (a = " << curvature
                        << ") failed to descend at batch " << e.batchIndex << " epoch "
                        << e.epochInBatch;
                    detail = oss.str();
                    return false;
                }
                prev = e.loss;
            }
        }
    }

    // (b) E/PD exits the growth phase exactly where the analytic map
    // first increases the loss, then descends at the halved rate.
    Schedule epd;
    epd.kind = ScheduleKind::EpdControl;
    epd.initialLr = 0.01;
    epd.epochsPerBatch = 20;
    const double curvature = 1.0;
    const auto epochs = runScheduleOnQuadratic(epd, curvature, 1.0, 1);

    int analyticExit = 0;  // first k where |1 - 2^k lr(0) a| > 1
    for (int k = 1; analyticExit == 0; ++k)
        if (std::abs(1.0 - std::ldexp(epd.initialLr, k) * curvature) > 1.0) analyticExit = k;
    EXPECT(analyticExit == 8, "analytic exit epoch should be 8");

    for (int k = 1; k <= analyticExit; ++k)
        EXPECT(epochs[static_cast<std::size_t>(k - 1)].lrUsed ==
                   std::ldexp(epd.initialLr, k),
               "E/PD still doubling before the analytic exit epoch");
    for (int k = 2; k < analyticExit; ++k)
        EXPECT(epochs[static_cast<std::size_t>(k - 1)].loss <
                   epochs[static_cast<std::size_t>(k - 2)].loss,
               "loss should fall before the exit epoch");
    EXPECT(epochs[static_cast<std::size_t>(analyticExit - 1)].loss >
               epochs[static_cast<std::size_t>(analyticExit - 2)].loss,
           "loss should rise exactly at the exit epoch");

    const QuadraticEpoch& reset = epochs[static_cast<std::size_t>(analyticExit)];
    EXPECT(reset.lrUsed == 0.5 * epochs[static_cast<std::size_t>(analyticExit - 1)].lrUsed,
           "reset epoch should train at half the last doubled rate");
    EXPECT(reset.loss < epochs[static_cast<std::size_t>(analyticExit - 1)].loss,
           "loss should resume strict decrease at the halved rate");
    return true;
}

// ---- 4. desk-scale trend reproduction -----------------------------------

ExperimentConfig deskConfig(ScheduleKind kind, std::int64_t baseSeed)
{
    ExperimentConfig config = parseConfig("");  // desk-scale defaults
    config.schedule.kind = kind;
    config.baseSeed = baseSeed;
    return config;
}

bool deskScaleTrends(std::string& detail)
{
    int seedsWithOrdering = 0;
    std::ostringstream log;
    for (std::int64_t baseSeed : {1, 2, 3}) {
        const Trace epdTrace = runExperiment(deskConfig(ScheduleKind::EpdControl, baseSeed));
        const Trace tiTrace = runExperiment(deskConfig(ScheduleKind::TimeInverseDecay, baseSeed));
        if (epdTrace.completeRuns() < 3 || tiTrace.completeRuns() < 3) {
            log << " seed " << baseSeed << ": incomplete runs;";
            continue;
        }
        const MetricsSummary epd = aggregate(epdTrace);
        const MetricsSummary ti = aggregate(tiTrace);
        const bool faster = epd.firstEpochTo95.mean < ti.firstEpochTo95.mean;
        const bool steadier = epd.lastWindowAccuracyStd.mean <= ti.lastWindowAccuracyStd.mean;
        log << " seed " << baseSeed << ": epoch95 " << epd.firstEpochTo95.mean << " vs "
            << ti.firstEpochTo95.mean << ", tail-std " << epd.lastWindowAccuracyStd.mean
            << " vs " << ti.lastWindowAccuracyStd.mean << ";";
        if (faster && steadier) ++seedsWithOrdering;
    }
    detail = "ordering held on " + std::to_string(seedsWithOrdering) + " of 3 seeds:" + log.str();
    return seedsWithOrdering >= 2;
}

// ---- 5. robustness sweep smoke test --------------------------------------

bool sweepSmoke(std::string& detail)
{
    SweepSpec spec;
    spec.base = parseConfig("");
    spec.parameter = SweepParameter::InitialLr;
    spec.values = {"0.001", "0.002", "0.05", "0.1"};
    const auto results = runSweep(spec);
    EXPECT(results.size() == 4, "expected 4 summary rows");
    for (const SweepResult& result : results)
        for (const EpochRecord& r : result.trace.records)
            if (!(r.lrUsed > 0.0)) {
                detail = "non-positive rate at value " + result.label;
                return false;
            }
    return true;
}

// ---- 6. metrics oracle ----------------------------------------------------

bool metricsOracle(std::string& detail)
{
    Trace trace;
    const int reach[3] = {61, 62, 61};
    for (int run = 0; run < 3; ++run) {
        trace.runOutcomes.push_back({true, ""});
        for (int epoch = 1; epoch <= 100; ++epoch) {
            const double accuracy = epoch == 100 ? 1.0 : (epoch >= reach[run] ? 0.96 : 0.5);
            trace.records.push_back({run, 0, epoch, epoch, 0.01, 1.0, accuracy});
        }
    }
    const MetricsSummary summary = aggregate(trace);
    EXPECT(std::abs(summary.firstEpochTo95.mean - 61.333) <= 1e-3,
           "mean " + std::to_string(summary.firstEpochTo95.mean));
    EXPECT(std::abs(summary.firstEpochTo95.std - 0.471) <= 1e-3,
           "std " + std::to_string(summary.firstEpochTo95.std));
    return true;
}

// ---- 7. CLI determinism ----------------------------------------------------

bool cliDeterminism(std::string& detail)
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "lrctl_acceptance";
    fs::create_directories(dir);
    const fs::path configPath = dir / "run.cfg";
    {
        std::ofstream out(configPath);
        out << "schedule = epd\nepochs_per_batch = 10\nnum_classes = 4\nfeature_dim = 8\n"
               "batch_size = 120\nnum_batches = 2\ntest_size = 60\nhidden_layers = 12\n"
               "mini_batch_size = 24\nruns = 2\nbase_seed = 11\n";
    }
    const fs::path traceA = dir / "a.csv";
    const fs::path traceB = dir / "b.csv";

    const auto invoke = [&](const fs::path& tracePath) {
        const std::string cmd = std::string(LRCTL_CLI_PATH) + " run --config " +
                                configPath.string() + " --out-trace " + tracePath.string() +
                                " --out-summary " + (dir / "summary.csv").string();
        return std::system(cmd.c_str());
    };
    EXPECT(invoke(traceA) == 0, "first CLI invocation failed");
    EXPECT(invoke(traceB) == 0, "second CLI invocation failed");

    std::ifstream a(traceA, std::ios::binary), b(traceB, std::ios::binary);
    const std::string bytesA{std::istreambuf_iterator<char>(a), std::istreambuf_iterator<char>()};
    const std::string bytesB{std::istreambuf_iterator<char>(b), std::istreambuf_iterator<char>()};
    EXPECT(!bytesA.empty(), "empty trace output");
    EXPECT(bytesA == bytesB, "trace CSVs differ between invocations");
    return true;
}

// ---- 8. loss-formula oracle -------------------------------------------------

bool lossOracle(std::string& detail)
{
    Matrix labels(1, 2);
    labels.data = {1.0, 0.0};
    Matrix half(1, 2);
    half.data = {0.5, 0.5};
    EXPECT(std::abs(crossEntropyLoss(half, labels) - 1.3862943611198906) <= 1e-9,
           "uniform binary case");

    Matrix perfect(1, 2);
    perfect.data = {1.0, 0.0};
    const double nearZero = crossEntropyLoss(perfect, labels);
    EXPECT(std::isfinite(nearZero) && nearZero > 0.0 && nearZero < 1e-6,
           "clipped perfect prediction");

    Matrix tenLabels(1, 10), uniform(1, 10, 0.1);
    tenLabels.data[0] = 1.0;
    EXPECT(std::abs(crossEntropyLoss(uniform, tenLabels) - 3.2508297339144824) <= 1e-9,
           "uniform ten-class case");

    Matrix hard(2, 3), hardLabels(2, 3);
    hard.data = {0, 1, 0, 1, 0, 0};
    hardLabels.data = {1, 0, 0, 0, 0, 1};
    EXPECT(std::isfinite(crossEntropyLoss(hard, hardLabels)), "finite on exact 0/1 inputs");
    return true;
}

}  // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {"scheduler exactness", schedulerExactness},
        {"gradient check vs central differences", gradientCheck},
        {"quadratic-plant stability", quadraticStability},
        {"desk-scale trend reproduction (E/PD vs time-inverse)", deskScaleTrends},
        {"robustness sweep smoke test", sweepSmoke},
        {"metrics aggregation oracle", metricsOracle},
        {"CLI run determinism", cliDeterminism},
        {"loss-formula oracle", lossOracle},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool passed = false;
        try {
            passed = criteria[i].check(detail);
        } catch (const std::exception& err) {
            detail = std::string("exception: ") + err.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %zu. %s (%.2fs)%s%s\n", passed ? "PASS" : "FAIL", i + 1,
                    criteria[i].name.c_str(), seconds, detail.empty() ? "" : " — ",
                    detail.c_str());
        if (!passed) ++failures;
    }
    if (failures) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}
