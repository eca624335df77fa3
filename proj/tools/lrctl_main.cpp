// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end for the lrctl engine. Talks to the shared
// library strictly through the C API in lrctl/lrctl.h.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "lrctl/lrctl.h"

namespace {

int exitCode(lrctl_status status)
{
    switch (status) {
    case LRCTL_OK: return 0;
    case LRCTL_ERROR_CONFIG: return 1;
    case LRCTL_ERROR_RUNTIME: return 2;
    case LRCTL_ERROR_IO: return 3;
    case LRCTL_ERROR_INVALID_ARGUMENT: return 1;
    }
    return 2;
}

int fail(lrctl_status status)
{
    std::fprintf(stderr, "lrctl: %s\n", lrctl_last_error());
    return exitCode(status);
}

struct ConfigDeleter {
    void operator()(lrctl_config* c) const { lrctl_config_free(c); }
};
struct TraceDeleter {
    void operator()(lrctl_trace* t) const { lrctl_trace_free(t); }
};
struct ReportDeleter {
    void operator()(lrctl_report* r) const { lrctl_report_free(r); }
};

using ConfigPtr = std::unique_ptr<lrctl_config, ConfigDeleter>;
using TracePtr = std::unique_ptr<lrctl_trace, TraceDeleter>;
using ReportPtr = std::unique_ptr<lrctl_report, ReportDeleter>;

// Loads the config file and applies the LRCTL_BASE_SEED override if set.
lrctl_status loadConfig(const std::string& path, ConfigPtr& out)
{
    lrctl_config* raw = nullptr;
    if (lrctl_status s = lrctl_config_parse_file(path.c_str(), &raw)) return s;
    out.reset(raw);
    if (const char* seed = std::getenv("LRCTL_BASE_SEED")) {
        if (lrctl_status s = lrctl_config_set(out.get(), "base_seed", seed)) return s;
    }
    return LRCTL_OK;
}

lrctl_report_format parseFormat(const std::string& name)
{
    return name == "json" ? LRCTL_REPORT_JSON : LRCTL_REPORT_CSV;
}

int cmdRun(const std::string& configPath, const std::string& outTrace,
           const std::string& outSummary, const std::string& format)
{
    ConfigPtr config;
    if (lrctl_status s = loadConfig(configPath, config)) return fail(s);

    lrctl_trace* rawTrace = nullptr;
    if (lrctl_status s = lrctl_run(config.get(), &rawTrace)) return fail(s);
    TracePtr trace(rawTrace);

    if (!outTrace.empty()) {
        if (lrctl_status s = lrctl_trace_write_csv(trace.get(), outTrace.c_str())) return fail(s);
    }

    const int total = lrctl_trace_total_runs(trace.get());
    const int complete = lrctl_trace_complete_runs(trace.get());
    if (complete > 0) {
        lrctl_report* rawReport = nullptr;
        if (lrctl_status s = lrctl_aggregate(trace.get(), &rawReport)) return fail(s);
        ReportPtr report(rawReport);
        lrctl_status s = lrctl_report_write(report.get(),
                                            outSummary.empty() ? nullptr : outSummary.c_str(),
                                            parseFormat(format));
        if (s != LRCTL_OK) return fail(s);
    }
    if (complete < total) {
        std::fprintf(stderr, "lrctl: %d of %d runs terminated early (divergence)\n",
                     total - complete, total);
        return 2;
    }
    return 0;
}

int cmdSweep(const std::string& configPath, const std::string& param, const std::string& values,
             const std::string& outSummary, const std::string& format)
{
    ConfigPtr config;
    if (lrctl_status s = loadConfig(configPath, config)) return fail(s);

    lrctl_report* rawReport = nullptr;
    if (lrctl_status s = lrctl_sweep(config.get(), param.c_str(), values.c_str(), &rawReport))
        return fail(s);
    ReportPtr report(rawReport);

    lrctl_status s = lrctl_report_write(report.get(),
                                        outSummary.empty() ? nullptr : outSummary.c_str(),
                                        parseFormat(format));
    return s == LRCTL_OK ? 0 : fail(s);
}

int cmdGenFixtures(const std::string& outDir)
{
    if (lrctl_status s = lrctl_write_idx_fixture(outDir.c_str())) return fail(s);
    std::printf("wrote fixture-images-idx3-ubyte and fixture-labels-idx1-ubyte to %s\n",
                outDir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Performance-based learning-rate control experiments"};
    app.require_subcommand(1);

    std::string configPath, outTrace, outSummary, format = "csv";
    std::string param, values, outDir = ".";

    CLI::App* run = app.add_subcommand("run", "Run one experiment from a config file");
    run->add_option("--config", configPath, "Path to the key=value config")->required();
    run->add_option("--out-trace", outTrace, "Write the per-epoch trace CSV here");
    run->add_option("--out-summary", outSummary, "Write the metrics summary here (default stdout)");
    run->add_option("--format", format, "Summary format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* sweep = app.add_subcommand("sweep", "Run one experiment per swept value");
    sweep->add_option("--config", configPath, "Path to the key=value config")->required();
    sweep->add_option("--param", param, "Swept parameter: initial_lr or schedule")->required();
    sweep->add_option("--values", values, "Comma-separated value list")->required();
    sweep->add_option("--out-summary", outSummary, "Write the summary table here (default stdout)");
    sweep->add_option("--format", format, "Summary format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* fixtures = app.add_subcommand("gen-fixtures", "Write the IDX test fixture pair");
    fixtures->add_option("--out-dir", outDir, "Target directory (default: current)");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmdRun(configPath, outTrace, outSummary, format);
    if (sweep->parsed()) return cmdSweep(configPath, param, values, outSummary, format);
    if (fixtures->parsed()) return cmdGenFixtures(outDir);
    return 1;
}
