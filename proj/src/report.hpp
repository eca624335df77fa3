// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "metrics.hpp"

namespace lrctl {

/// Trace CSV schema; a compatibility contract covered by a golden test.
inline constexpr const char* kTraceCsvHeader =
    "run,batch,epoch_global,epoch_in_batch,lr,val_loss,val_accuracy";

inline constexpr const char* kSummaryCsvHeader =
    "value,final_loss_mean,final_loss_std,final_accuracy_mean,final_accuracy_std,"
    "last_window_accuracy_std_mean,last_window_accuracy_std_std,"
    "first_epoch_to_95_mean,first_epoch_to_95_std";

/// One summary table row: the swept value's label (or "-" for a plain
/// run) and its aggregated metrics.
struct SummaryRow {
    std::string label;
    MetricsSummary summary;
};

enum class SummaryFormat { Csv, Json };
bool summaryFormatFromString(const std::string& name, SummaryFormat& out);

/// Floating values in both writers are printed with 9 significant digits.
void writeTraceCsv(const Trace& trace, std::ostream& out);
void writeTraceCsv(const Trace& trace, const std::string& path);

void writeSummary(const std::vector<SummaryRow>& rows, SummaryFormat format, std::ostream& out);
void writeSummary(const std::vector<SummaryRow>& rows, SummaryFormat format,
                  const std::string& path);

}  // namespace lrctl
