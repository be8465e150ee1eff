#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stratlab/harness/csv.hpp"

namespace stratlab::harness {

struct Stats {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;   // sample standard deviation, 0 when n = 1
    double sem = 0.0;  // sd / √n
};

// Throws std::invalid_argument on an empty sample.
Stats describe(std::span<const double> values);

struct WelchResult {
    double mean_diff = 0.0;        // mean(a) − mean(b)
    std::optional<double> t;       // undefined when both samples have zero variance
    std::optional<double> dof;
};

WelchResult welch(std::span<const double> a, std::span<const double> b);

// How a raw CSV is grouped: one row per distinct value of `key_columns`,
// summarizing each of `metric_columns`. `learner_column` is the key column
// compared pairwise in Welch statistics.
struct RawSchema {
    std::string name;
    std::vector<std::string> key_columns;
    std::string learner_column;
    std::vector<std::string> metric_columns;
};

const RawSchema& sorting_schema();
const RawSchema& teaching_schema();
const RawSchema& irl_schema();

// Matches the table's header against the known raw schemas.
const RawSchema& detect_schema(const CsvTable& raw);

struct SummaryRow {
    std::vector<std::string> key;  // values of the schema key columns
    std::string metric;
    Stats stats;
};

struct WelchRow {
    std::vector<std::string> key;  // key columns without the learner column
    std::string metric;
    std::string learner_a;
    std::string learner_b;
    WelchResult result;
};

struct Summary {
    const RawSchema* schema = nullptr;
    std::vector<SummaryRow> rows;
    std::vector<WelchRow> welch;
};

// Groups in order of first appearance. Blank metric cells are skipped; a
// group whose metric is blank throughout produces no row for that metric.
Summary summarize(const CsvTable& raw, const RawSchema& schema);
Summary summarize(const CsvTable& raw);

CsvTable summary_table(const Summary& s);
CsvTable welch_table(const Summary& s);

}  // namespace stratlab::harness
