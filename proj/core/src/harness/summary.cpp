#include "stratlab/harness/summary.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>

namespace stratlab::harness {

Stats describe(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("describe: empty group");
    Stats s;
    s.n = values.size();
    double total = 0.0;
    for (double v : values) total += v;
    s.mean = total / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
        s.sem = s.sd / std::sqrt(static_cast<double>(s.n));
    }
    return s;
}

WelchResult welch(std::span<const double> a, std::span<const double> b) {
    const Stats sa = describe(a);
    const Stats sb = describe(b);
    WelchResult r;
    r.mean_diff = sa.mean - sb.mean;
    const double va = sa.sem * sa.sem;
    const double vb = sb.sem * sb.sem;
    const double se2 = va + vb;
    if (se2 > 0.0) {
        r.t = r.mean_diff / std::sqrt(se2);
        double denom = 0.0;
        if (sa.n > 1) denom += va * va / static_cast<double>(sa.n - 1);
        if (sb.n > 1) denom += vb * vb / static_cast<double>(sb.n - 1);
        if (denom > 0.0) r.dof = se2 * se2 / denom;
    }
    return r;
}

const RawSchema& sorting_schema() {
    static const RawSchema s{"sorting", {"learner", "t"}, "learner", {"errors"}};
    return s;
}

const RawSchema& teaching_schema() {
    static const RawSchema s{"goal_teaching", {"teacher", "t"}, "teacher", {"b_theta_star", "b_psi_star"}};
    return s;
}

const RawSchema& irl_schema() {
    static const RawSchema s{"irl",
                             {"features", "alpha", "rho", "learner"},
                             "learner",
                             {"reward_error", "strategy_error", "policy_loss"}};
    return s;
}

const RawSchema& detect_schema(const CsvTable& raw) {
    for (const RawSchema* s : {&irl_schema(), &teaching_schema(), &sorting_schema()}) {
        bool ok = true;
        for (const auto& c : s->key_columns) ok = ok && raw.has_column(c);
        for (const auto& c : s->metric_columns) ok = ok && raw.has_column(c);
        if (ok) return *s;
    }
    throw std::invalid_argument("summarize: header does not match any raw result schema");
}

namespace {

double parse_number(const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("summarize: non-numeric metric value '" + s + "'");
    return v;
}

template <class Key, class Value>
Value& find_or_add(std::vector<std::pair<Key, Value>>& groups, std::map<Key, std::size_t>& index, const Key& key) {
    auto [it, inserted] = index.try_emplace(key, groups.size());
    if (inserted) groups.emplace_back(key, Value{});
    return groups[it->second].second;
}

}  // namespace

Summary summarize(const CsvTable& raw, const RawSchema& schema) {
    if (raw.rows.empty()) throw std::invalid_argument("summarize: no rows");
    std::vector<std::size_t> key_idx;
    for (const auto& c : schema.key_columns) key_idx.push_back(raw.column(c));
    std::vector<std::size_t> metric_idx;
    for (const auto& c : schema.metric_columns) metric_idx.push_back(raw.column(c));
    const std::size_t learner_pos = static_cast<std::size_t>(
        std::find(schema.key_columns.begin(), schema.key_columns.end(), schema.learner_column) -
        schema.key_columns.begin());

    using Key = std::vector<std::string>;
    using Samples = std::vector<std::vector<double>>;  // per metric
    std::vector<std::pair<Key, Samples>> groups;
    std::map<Key, std::size_t> index;
    for (const auto& row : raw.rows) {
        Key key;
        for (auto i : key_idx) key.push_back(row[i]);
        Samples& samples = find_or_add(groups, index, key);
        samples.resize(metric_idx.size());
        for (std::size_t m = 0; m < metric_idx.size(); ++m) {
            const std::string& cell = row[metric_idx[m]];
            if (!cell.empty()) samples[m].push_back(parse_number(cell));
        }
    }

    Summary out;
    out.schema = &schema;
    for (const auto& [key, samples] : groups)
        for (std::size_t m = 0; m < metric_idx.size(); ++m)
            if (!samples[m].empty()) out.rows.push_back({key, schema.metric_columns[m], describe(samples[m])});

    // Pairwise comparisons between learners that share every other key column.
    std::vector<std::pair<Key, std::vector<std::size_t>>> cells;
    std::map<Key, std::size_t> cell_index;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        Key cell = groups[g].first;
        cell.erase(cell.begin() + static_cast<std::ptrdiff_t>(learner_pos));
        find_or_add(cells, cell_index, cell).push_back(g);
    }
    for (const auto& [cell, members] : cells)
        for (std::size_t m = 0; m < metric_idx.size(); ++m)
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j) {
                    const auto& a = groups[members[i]];
                    const auto& b = groups[members[j]];
                    if (a.second[m].empty() || b.second[m].empty()) continue;
                    out.welch.push_back({cell, schema.metric_columns[m], a.first[learner_pos], b.first[learner_pos],
                                         welch(a.second[m], b.second[m])});
                }
    return out;
}

Summary summarize(const CsvTable& raw) { return summarize(raw, detect_schema(raw)); }

CsvTable summary_table(const Summary& s) {
    CsvTable t;
    t.header = s.schema->key_columns;
    for (const char* c : {"metric", "n", "mean", "sem"}) t.header.emplace_back(c);
    for (const auto& r : s.rows) {
        auto row = r.key;
        row.push_back(r.metric);
        row.push_back(std::to_string(r.stats.n));
        row.push_back(format_double(r.stats.mean));
        row.push_back(format_double(r.stats.sem));
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable welch_table(const Summary& s) {
    CsvTable t;
    for (const auto& c : s.schema->key_columns)
        if (c != s.schema->learner_column) t.header.push_back(c);
    for (const char* c : {"metric", "learner_a", "learner_b", "mean_diff", "welch_t", "dof"}) t.header.emplace_back(c);
    for (const auto& w : s.welch) {
        auto row = w.key;
        row.push_back(w.metric);
        row.push_back(w.learner_a);
        row.push_back(w.learner_b);
        row.push_back(format_double(w.result.mean_diff));
        row.push_back(w.result.t ? format_double(*w.result.t) : "");
        row.push_back(w.result.dof ? format_double(*w.result.dof) : "");
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace stratlab::harness
