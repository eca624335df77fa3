// SPDX-License-Identifier: Apache-2.0
#include "report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "dataset.hpp"

namespace lrctl {

namespace {

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

template <typename WriteFn>
void writeToPath(const std::string& path, WriteFn&& write)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("report: cannot open " + path);
    write(out);
    out.flush();
    if (!out) throw IoError("report: write failed for " + path);
}

}  // namespace

bool summaryFormatFromString(const std::string& name, SummaryFormat& out)
{
    if (name == "csv") out = SummaryFormat::Csv;
    else if (name == "json") out = SummaryFormat::Json;
    else return false;
    return true;
}

void writeTraceCsv(const Trace& trace, std::ostream& out)
{
    out << kTraceCsvHeader << "\n";
    for (const EpochRecord& r : trace.records) {
        out << r.runId << ',' << r.batchIndex << ',' << r.globalEpoch << ',' << r.epochInBatch
            << ',' << fmt(r.lrUsed) << ',' << fmt(r.valLoss) << ',' << fmt(r.valAccuracy) << "\n";
    }
}

void writeTraceCsv(const Trace& trace, const std::string& path)
{
    writeToPath(path, [&](std::ostream& out) { writeTraceCsv(trace, out); });
}

void writeSummary(const std::vector<SummaryRow>& rows, SummaryFormat format, std::ostream& out)
{
    if (format == SummaryFormat::Csv) {
        out << kSummaryCsvHeader << "\n";
        for (const SummaryRow& row : rows) {
            const MetricsSummary& s = row.summary;
            out << row.label << ',' << fmt(s.finalLoss.mean) << ',' << fmt(s.finalLoss.std) << ','
                << fmt(s.finalAccuracy.mean) << ',' << fmt(s.finalAccuracy.std) << ','
                << fmt(s.lastWindowAccuracyStd.mean) << ',' << fmt(s.lastWindowAccuracyStd.std)
                << ',' << fmt(s.firstEpochTo95.mean) << ',' << fmt(s.firstEpochTo95.std) << "\n";
        }
        return;
    }

    nlohmann::json doc = nlohmann::json::array();
    for (const SummaryRow& row : rows) {
        const MetricsSummary& s = row.summary;
        doc.push_back({{"value", row.label},
                       {"final_loss", {{"mean", s.finalLoss.mean}, {"std", s.finalLoss.std}}},
                       {"final_accuracy",
                        {{"mean", s.finalAccuracy.mean}, {"std", s.finalAccuracy.std}}},
                       {"last_window_accuracy_std",
                        {{"mean", s.lastWindowAccuracyStd.mean},
                         {"std", s.lastWindowAccuracyStd.std}}},
                       {"first_epoch_to_95",
                        {{"mean", s.firstEpochTo95.mean}, {"std", s.firstEpochTo95.std}}},
                       {"runs", s.runsAggregated}});
    }
    out << doc.dump(2) << "\n";
}

void writeSummary(const std::vector<SummaryRow>& rows, SummaryFormat format,
                  const std::string& path)
{
    writeToPath(path, [&](std::ostream& out) { writeSummary(rows, format, out); });
}

}  // namespace lrctl
