// SPDX-License-Identifier: Apache-2.0
#include "lrctl/lrctl.h"

#include <cstring>
#include <iostream>
#include <new>
#include <sstream>
#include <string>

#include "config.hpp"
#include "report.hpp"
#include "sweep.hpp"

using namespace lrctl;

struct lrctl_config {
    ExperimentConfig value;
};

struct lrctl_trace {
    Trace value;
};

struct lrctl_report {
    std::vector<SummaryRow> rows;
};

namespace {

thread_local std::string tlsLastError;

void setError(const std::string& message)
{
    tlsLastError = message;
}

char* copyString(const std::string& s)
{
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Maps the core exception taxonomy onto the C error classes.
template <typename Fn>
lrctl_status guarded(Fn&& fn)
{
    try {
        fn();
        return LRCTL_OK;
    } catch (const ConfigError& err) {
        setError(err.what());
        return LRCTL_ERROR_CONFIG;
    } catch (const IoError& err) {
        setError(err.what());
        return LRCTL_ERROR_IO;
    } catch (const std::invalid_argument& err) {
        setError(err.what());
        return LRCTL_ERROR_CONFIG;
    } catch (const std::bad_alloc&) {
        setError("out of memory");
        return LRCTL_ERROR_RUNTIME;
    } catch (const std::exception& err) {
        setError(err.what());
        return LRCTL_ERROR_RUNTIME;
    }
}

lrctl_status requireArgs(bool ok)
{
    if (!ok) setError("null argument");
    return ok ? LRCTL_OK : LRCTL_ERROR_INVALID_ARGUMENT;
}

double metricValue(const MetricsSummary& s, lrctl_metric metric, bool& known)
{
    known = true;
    switch (metric) {
    case LRCTL_METRIC_FINAL_LOSS_MEAN: return s.finalLoss.mean;
    case LRCTL_METRIC_FINAL_LOSS_STD: return s.finalLoss.std;
    case LRCTL_METRIC_FINAL_ACCURACY_MEAN: return s.finalAccuracy.mean;
    case LRCTL_METRIC_FINAL_ACCURACY_STD: return s.finalAccuracy.std;
    case LRCTL_METRIC_LAST_WINDOW_STD_MEAN: return s.lastWindowAccuracyStd.mean;
    case LRCTL_METRIC_LAST_WINDOW_STD_STD: return s.lastWindowAccuracyStd.std;
    case LRCTL_METRIC_FIRST_EPOCH_TO_95_MEAN: return s.firstEpochTo95.mean;
    case LRCTL_METRIC_FIRST_EPOCH_TO_95_STD: return s.firstEpochTo95.std;
    }
    known = false;
    return 0.0;
}

}  // namespace

extern "C" {

const char* lrctl_version(void)
{
    return "0.1.0";
}

const char* lrctl_last_error(void)
{
    return tlsLastError.c_str();
}

lrctl_status lrctl_config_create(lrctl_config** out)
{
    if (lrctl_status s = requireArgs(out != nullptr)) return s;
    return guarded([&] { *out = new lrctl_config{parseConfig("")}; });
}

lrctl_status lrctl_config_parse(const char* text, lrctl_config** out)
{
    if (lrctl_status s = requireArgs(text && out)) return s;
    return guarded([&] { *out = new lrctl_config{parseConfig(text)}; });
}

lrctl_status lrctl_config_parse_file(const char* path, lrctl_config** out)
{
    if (lrctl_status s = requireArgs(path && out)) return s;
    return guarded([&] { *out = new lrctl_config{parseConfigFile(path)}; });
}

lrctl_status lrctl_config_set(lrctl_config* config, const char* key, const char* value)
{
    if (lrctl_status s = requireArgs(config && key && value)) return s;
    return guarded([&] {
        ExperimentConfig updated = config->value;
        bool unusedP = false, unusedD = false;
        applyConfigKey(updated, key, value, unusedP, unusedD);
        updated.validate();
        config->value = updated;
    });
}

lrctl_status lrctl_config_render(const lrctl_config* config, char** out_text)
{
    if (lrctl_status s = requireArgs(config && out_text)) return s;
    return guarded([&] { *out_text = copyString(renderConfig(config->value)); });
}

void lrctl_config_free(lrctl_config* config)
{
    delete config;
}

void lrctl_string_free(char* text)
{
    delete[] text;
}

lrctl_status lrctl_run(const lrctl_config* config, lrctl_trace** out)
{
    if (lrctl_status s = requireArgs(config && out)) return s;
    return guarded([&] { *out = new lrctl_trace{runExperiment(config->value)}; });
}

size_t lrctl_trace_record_count(const lrctl_trace* trace)
{
    return trace ? trace->value.records.size() : 0;
}

lrctl_status lrctl_trace_value(const lrctl_trace* trace, size_t record, lrctl_trace_field field,
                               double* out)
{
    if (lrctl_status s = requireArgs(trace && out)) return s;
    if (record >= trace->value.records.size()) {
        setError("trace record index out of range");
        return LRCTL_ERROR_INVALID_ARGUMENT;
    }
    const EpochRecord& r = trace->value.records[record];
    switch (field) {
    case LRCTL_TRACE_RUN: *out = r.runId; return LRCTL_OK;
    case LRCTL_TRACE_BATCH: *out = r.batchIndex; return LRCTL_OK;
    case LRCTL_TRACE_EPOCH_GLOBAL: *out = r.globalEpoch; return LRCTL_OK;
    case LRCTL_TRACE_EPOCH_IN_BATCH: *out = r.epochInBatch; return LRCTL_OK;
    case LRCTL_TRACE_LR: *out = r.lrUsed; return LRCTL_OK;
    case LRCTL_TRACE_VAL_LOSS: *out = r.valLoss; return LRCTL_OK;
    case LRCTL_TRACE_VAL_ACCURACY: *out = r.valAccuracy; return LRCTL_OK;
    }
    setError("unknown trace field");
    return LRCTL_ERROR_INVALID_ARGUMENT;
}

int lrctl_trace_total_runs(const lrctl_trace* trace)
{
    return trace ? static_cast<int>(trace->value.runOutcomes.size()) : 0;
}

int lrctl_trace_complete_runs(const lrctl_trace* trace)
{
    return trace ? trace->value.completeRuns() : 0;
}

lrctl_status lrctl_trace_write_csv(const lrctl_trace* trace, const char* path)
{
    if (lrctl_status s = requireArgs(trace && path)) return s;
    return guarded([&] { writeTraceCsv(trace->value, std::string(path)); });
}

void lrctl_trace_free(lrctl_trace* trace)
{
    delete trace;
}

lrctl_status lrctl_aggregate(const lrctl_trace* trace, lrctl_report** out)
{
    if (lrctl_status s = requireArgs(trace && out)) return s;
    return guarded([&] {
        lrctl_report* report = new lrctl_report;
        report->rows.push_back({"-", aggregate(trace->value)});
        *out = report;
    });
}

lrctl_status lrctl_sweep(const lrctl_config* config, const char* param, const char* values_csv,
                         lrctl_report** out)
{
    if (lrctl_status s = requireArgs(config && param && values_csv && out)) return s;
    return guarded([&] {
        SweepSpec spec;
        spec.base = config->value;
        if (!sweepParameterFromString(param, spec.parameter))
            throw ConfigError(std::string("sweep: unknown parameter '") + param +
                              "' (expected initial_lr or schedule)");
        std::stringstream ss(values_csv);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) spec.values.push_back(item);

        std::vector<SweepResult> results = runSweep(spec);
        lrctl_report* report = new lrctl_report;
        for (SweepResult& result : results)
            report->rows.push_back({std::move(result.label), result.summary});
        *out = report;
    });
}

size_t lrctl_report_row_count(const lrctl_report* report)
{
    return report ? report->rows.size() : 0;
}

lrctl_status lrctl_report_label(const lrctl_report* report, size_t row, char** out)
{
    if (lrctl_status s = requireArgs(report && out)) return s;
    if (row >= report->rows.size()) {
        setError("report row index out of range");
        return LRCTL_ERROR_INVALID_ARGUMENT;
    }
    *out = copyString(report->rows[row].label);
    return LRCTL_OK;
}

lrctl_status lrctl_report_value(const lrctl_report* report, size_t row, lrctl_metric metric,
                                double* out)
{
    if (lrctl_status s = requireArgs(report && out)) return s;
    if (row >= report->rows.size()) {
        setError("report row index out of range");
        return LRCTL_ERROR_INVALID_ARGUMENT;
    }
    bool known = false;
    const double value = metricValue(report->rows[row].summary, metric, known);
    if (!known) {
        setError("unknown metric");
        return LRCTL_ERROR_INVALID_ARGUMENT;
    }
    *out = value;
    return LRCTL_OK;
}

lrctl_status lrctl_report_write(const lrctl_report* report, const char* path,
                                lrctl_report_format format)
{
    if (lrctl_status s = requireArgs(report != nullptr)) return s;
    const SummaryFormat fmt =
        format == LRCTL_REPORT_JSON ? SummaryFormat::Json : SummaryFormat::Csv;
    return guarded([&] {
        if (path) writeSummary(report->rows, fmt, std::string(path));
        else writeSummary(report->rows, fmt, std::cout);
    });
}

void lrctl_report_free(lrctl_report* report)
{
    delete report;
}

lrctl_status lrctl_write_idx_fixture(const char* directory)
{
    if (lrctl_status s = requireArgs(directory != nullptr)) return s;
    return guarded([&] { writeIdxFixture(directory); });
}

}  // extern "C"
