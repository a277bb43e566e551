#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "allocbandit/harness.hpp"

namespace allocbandit {

// Run identity carried into every summary row.
struct SummaryMeta {
    std::string policy;
    double c = 0.0;
    int arm_count = 0;
    std::uint64_t seed = 0;
    int replications = 0;
};

SummaryMeta summary_meta(const ExperimentConfig& config);

// Header: policy,c,K,seed,reps,n_checkpoint,mean_regret,stderr
// Floats carry 17 significant digits so parsing the file back is lossless;
// rows come out sorted by checkpoint. Output is byte-deterministic.
void emit_summary(const SummaryMeta& meta, const std::vector<SummaryRow>& rows,
                  std::ostream& out);
void emit_summary_file(const SummaryMeta& meta, const std::vector<SummaryRow>& rows,
                       const std::string& path);

// Inverse of emit_summary; returns the rows (meta columns are checked for
// consistency but not returned).
std::vector<SummaryRow> parse_summary(std::istream& in);
std::vector<SummaryRow> parse_summary_file(const std::string& path);

} // namespace allocbandit
