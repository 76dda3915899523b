#include "innatecoder/search/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace innatecoder::search {

namespace {

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<CurvePoint> downsampled(const std::vector<CurvePoint>& curve, std::size_t cap = 1000) {
    if (curve.size() <= cap) return curve;
    std::vector<CurvePoint> out;
    out.reserve(cap);
    for (std::size_t i = 0; i < cap; ++i) {
        std::size_t idx = i * (curve.size() - 1) / (cap - 1);
        out.push_back(curve[idx]);
    }
    return out;
}

} // namespace

std::string curves_to_csv(const std::vector<RunRecord>& records) {
    std::ostringstream os;
    os << "seed,method,task,episodes,best_return\n";
    for (const RunRecord& rec : records) {
        for (const CurvePoint& pt : downsampled(rec.run.curve)) {
            os << rec.seed << ',' << to_string(rec.method) << ',' << tasks::to_string(rec.task) << ','
               << pt.episodes << ',' << fmt6(pt.best_value) << '\n';
        }
    }
    return os.str();
}

void write_curves_csv(const std::string& path, const std::vector<RunRecord>& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write curves CSV: " + path);
    out << curves_to_csv(records);
}

std::vector<CurveRow> read_curves_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open curves CSV: " + path);
    std::vector<CurveRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        CurveRow row;
        std::istringstream ls(line);
        std::string field;
        std::getline(ls, field, ',');
        row.seed = std::stoull(field);
        std::getline(ls, row.method, ',');
        std::getline(ls, row.task, ',');
        std::getline(ls, field, ',');
        row.episodes = std::stol(field);
        std::getline(ls, field, ',');
        row.best_return = std::stod(field);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::map<std::string, std::map<std::string, SummaryCell>> summarize(const std::vector<CurveRow>& rows) {
    // final point per (task, method, seed) = row with the largest episode count
    std::map<std::tuple<std::string, std::string, std::uint64_t>, CurveRow> finals;
    for (const CurveRow& r : rows) {
        auto key = std::make_tuple(r.task, r.method, r.seed);
        auto it = finals.find(key);
        if (it == finals.end() || r.episodes >= it->second.episodes) finals[key] = r;
    }
    std::map<std::string, std::map<std::string, SummaryCell>> out;
    for (const auto& [key, row] : finals) out[row.task][row.method].finals.push_back(row.best_return);
    for (auto& [task, methods] : out) {
        for (auto& [method, cell] : methods) {
            cell.seeds = static_cast<int>(cell.finals.size());
            double sum = 0.0;
            for (double v : cell.finals) sum += v;
            cell.mean = sum / cell.seeds;
            if (cell.seeds > 1) {
                double ss = 0.0;
                for (double v : cell.finals) ss += (v - cell.mean) * (v - cell.mean);
                double stderr_ = std::sqrt(ss / (cell.seeds - 1)) / std::sqrt(static_cast<double>(cell.seeds));
                cell.ci95 = 1.96 * stderr_;
            }
        }
    }
    return out;
}

nlohmann::ordered_json summary_to_json(const std::map<std::string, std::map<std::string, SummaryCell>>& s) {
    nlohmann::ordered_json j;
    for (const auto& [task, methods] : s) {
        for (const auto& [method, cell] : methods) {
            nlohmann::ordered_json c;
            c["seeds"] = cell.seeds;
            c["mean_final_return"] = cell.mean;
            c["ci95_half_width"] = cell.ci95;
            c["final_returns"] = cell.finals;
            j[task][method] = c;
        }
    }
    return j;
}

std::string chart_svg(const std::vector<CurveRow>& rows, const std::string& task) {
    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    const int W = 640, H = 420, ML = 60, MR = 20, MT = 30, MB = 50;

    // per-(method, seed) curves for the task
    std::map<std::string, std::map<std::uint64_t, std::vector<CurveRow>>> by_method;
    long max_ep = 1;
    double min_v = 0.0, max_v = 1.0;
    for (const CurveRow& r : rows) {
        if (r.task != task) continue;
        by_method[r.method][r.seed].push_back(r);
        max_ep = std::max(max_ep, r.episodes);
        min_v = std::min(min_v, r.best_return);
        max_v = std::max(max_v, r.best_return);
    }
    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    os << "<rect width='" << W << "' height='" << H << "' fill='white'/>\n";
    auto x_of = [&](double ep) { return ML + (W - ML - MR) * (ep / static_cast<double>(max_ep)); };
    auto y_of = [&](double v) { return H - MB - (H - MT - MB) * ((v - min_v) / (max_v - min_v)); };
    // axes
    os << "<line x1='" << ML << "' y1='" << (H - MB) << "' x2='" << (W - MR) << "' y2='" << (H - MB)
       << "' stroke='black'/>\n";
    os << "<line x1='" << ML << "' y1='" << MT << "' x2='" << ML << "' y2='" << (H - MB)
       << "' stroke='black'/>\n";
    os << "<text x='" << (W / 2) << "' y='" << (H - 12) << "' text-anchor='middle' font-size='13'>episodes</text>\n";
    os << "<text x='16' y='" << (H / 2) << "' font-size='13' transform='rotate(-90 16 " << (H / 2)
       << ")' text-anchor='middle'>best return</text>\n";
    os << "<text x='" << (W / 2) << "' y='18' text-anchor='middle' font-size='14'>" << task << "</text>\n";
    for (double v : {min_v, (min_v + max_v) / 2, max_v}) {
        os << "<text x='" << (ML - 6) << "' y='" << (y_of(v) + 4) << "' text-anchor='end' font-size='11'>"
           << fmt6(v) << "</text>\n";
    }
    os << "<text x='" << (W - MR) << "' y='" << (H - MB + 16) << "' text-anchor='end' font-size='11'>" << max_ep
       << "</text>\n";

    // mean curve per method on a shared grid (last value carried forward)
    int color = 0, legend_y = MT + 8;
    for (auto& [method, seeds] : by_method) {
        const int kGrid = 120;
        std::vector<double> mean(kGrid, 0.0);
        for (auto& [seed, pts] : seeds) {
            auto sorted = pts;
            std::sort(sorted.begin(), sorted.end(),
                      [](const CurveRow& a, const CurveRow& b) { return a.episodes < b.episodes; });
            for (int g = 0; g < kGrid; ++g) {
                double ep = max_ep * (g + 1) / static_cast<double>(kGrid);
                double v = sorted.front().best_return;
                for (const CurveRow& r : sorted)
                    if (r.episodes <= ep) v = r.best_return;
                mean[static_cast<std::size_t>(g)] += v;
            }
        }
        for (double& v : mean) v /= static_cast<double>(seeds.size());
        os << "<polyline fill='none' stroke='" << kColors[color % 6] << "' stroke-width='1.5' points='";
        for (int g = 0; g < kGrid; ++g) {
            double ep = max_ep * (g + 1) / static_cast<double>(kGrid);
            os << x_of(ep) << ',' << y_of(mean[static_cast<std::size_t>(g)]) << ' ';
        }
        os << "'/>\n";
        os << "<text x='" << (W - MR - 120) << "' y='" << legend_y << "' font-size='12' fill='"
           << kColors[color % 6] << "'>" << method << "</text>\n";
        legend_y += 16;
        ++color;
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace innatecoder::search
