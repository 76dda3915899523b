#pragma once

#include <map>
#include <string>
#include <vector>

#include "innatecoder/search/search.hpp"

#include <json.hpp>

namespace innatecoder::search {

struct RunRecord {
    std::uint64_t seed = 0;
    Method method = Method::SHC;
    tasks::TaskId task = tasks::TaskId::StairClimber;
    SearchRun run;
};

struct CurveRow {
    std::uint64_t seed = 0;
    std::string method;
    std::string task;
    long episodes = 0;
    double best_return = 0.0;
};

// Learning-curve CSV: header seed,method,task,episodes,best_return; floats
// rendered with six significant digits; curves downsampled to at most 1000
// points per run.
std::string curves_to_csv(const std::vector<RunRecord>& records);
void write_curves_csv(const std::string& path, const std::vector<RunRecord>& records);
std::vector<CurveRow> read_curves_csv(const std::string& path);

// Per-(task, method) mean of final best_return across seeds with the
// 1.96*stderr normal-approximation half-width.
struct SummaryCell {
    int seeds = 0;
    double mean = 0.0;
    double ci95 = 0.0;
    std::vector<double> finals;
};
std::map<std::string, std::map<std::string, SummaryCell>> summarize(const std::vector<CurveRow>& rows);
nlohmann::ordered_json summary_to_json(const std::map<std::string, std::map<std::string, SummaryCell>>& s);

// Minimal static SVG learning-curve chart for one task: per-method mean
// curves on a shared episode grid.
std::string chart_svg(const std::vector<CurveRow>& rows, const std::string& task);

} // namespace innatecoder::search
