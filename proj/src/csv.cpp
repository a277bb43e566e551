#include "allocbandit/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace allocbandit {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

SummaryMeta summary_meta(const ExperimentConfig& config) {
    return SummaryMeta{policy_name(config.policy), config.c, config.arms.arm_count(),
                       config.seed, config.replications};
}

void emit_summary(const SummaryMeta& meta, const std::vector<SummaryRow>& rows,
                  std::ostream& out) {
    if (rows.empty())
        throw std::invalid_argument("emit_summary: no rows");
    std::vector<SummaryRow> sorted = rows;
    std::sort(sorted.begin(), sorted.end(),
              [](const SummaryRow& a, const SummaryRow& b) { return a.checkpoint < b.checkpoint; });
    out << "policy,c,K,seed,reps,n_checkpoint,mean_regret,stderr\n";
    for (const SummaryRow& row : sorted) {
        out << meta.policy << ',' << fmt_double(meta.c) << ',' << meta.arm_count << ','
            << meta.seed << ',' << meta.replications << ',' << row.checkpoint << ','
            << fmt_double(row.mean_regret) << ',' << fmt_double(row.std_error) << '\n';
    }
}

void emit_summary_file(const SummaryMeta& meta, const std::vector<SummaryRow>& rows,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    emit_summary(meta, rows, out);
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing output file: " + path);
}

std::vector<SummaryRow> parse_summary(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("parse_summary: empty input");
    if (line != "policy,c,K,seed,reps,n_checkpoint,mean_regret,stderr")
        throw std::invalid_argument("parse_summary: unexpected header '" + line + "'");

    std::vector<SummaryRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        if (fields.size() != 8)
            throw std::invalid_argument("parse_summary: bad row '" + line + "'");
        SummaryRow row;
        row.checkpoint = std::stol(fields[5]);
        row.mean_regret = std::stod(fields[6]);
        row.std_error = std::stod(fields[7]);
        row.replications = std::stoi(fields[4]);
        rows.push_back(row);
    }
    return rows;
}

std::vector<SummaryRow> parse_summary_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open summary file: " + path);
    return parse_summary(in);
}

} // namespace allocbandit
