#include "rank1/emit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rank1 {

namespace {

constexpr int kPrecision = 17;  // round-trips doubles exactly

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    return out;
}

double spike_field(const EnvSpec& env, double SpikeSpec::*field) {
    if (env.kind == EnvSpec::Kind::Spike) return env.spike.*field;
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

TraceStats aggregate_traces(const std::vector<RegretTrace>& traces) {
    if (traces.empty()) throw std::invalid_argument("aggregate_traces: empty trace list");
    const auto& steps = traces.front().steps;
    for (const auto& t : traces)
        if (t.steps != steps)
            throw std::invalid_argument("aggregate_traces: traces have mismatched checkpoints");
    TraceStats stats;
    stats.steps = steps;
    stats.mean_regret.resize(steps.size());
    stats.std_regret.resize(steps.size());
    const double n = static_cast<double>(traces.size());
    for (std::size_t k = 0; k < steps.size(); ++k) {
        double mean = 0.0;
        for (const auto& t : traces) mean += t.cum_regret[k];
        mean /= n;
        double ss = 0.0;
        for (const auto& t : traces) {
            const double d = t.cum_regret[k] - mean;
            ss += d * d;
        }
        stats.mean_regret[k] = mean;
        stats.std_regret[k] =
            traces.size() >= 2 ? std::sqrt(ss / (n - 1.0)) : std::numeric_limits<double>::quiet_NaN();
    }
    return stats;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
    if (rows.empty()) throw std::invalid_argument("write_summary_csv: no rows");
    out << "K,L,p_u,p_v,delta_u,delta_v,policy,n,reps,regret_mean,regret_std\n";
    out << std::setprecision(kPrecision);
    for (const auto& r : rows) {
        out << r.env.rows() << ',' << r.env.cols() << ',' << spike_field(r.env, &SpikeSpec::p_u)
            << ',' << spike_field(r.env, &SpikeSpec::p_v) << ','
            << spike_field(r.env, &SpikeSpec::delta_u) << ','
            << spike_field(r.env, &SpikeSpec::delta_v) << ',' << r.policy << ',' << r.horizon
            << ',' << r.replications << ',' << r.regret_mean << ',' << r.regret_std << '\n';
    }
}

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
    auto out = open_or_throw(path);
    write_summary_csv(rows, out);
}

std::vector<ParsedSummaryRow> parse_summary_csv(std::istream& in) {
    std::vector<ParsedSummaryRow> rows;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("parse_summary_csv: empty input");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 11)
            throw std::runtime_error("parse_summary_csv: expected 11 fields, got line: " + line);
        ParsedSummaryRow r;
        r.rows = std::stoi(fields[0]);
        r.cols = std::stoi(fields[1]);
        r.p_u = std::stod(fields[2]);
        r.p_v = std::stod(fields[3]);
        r.delta_u = std::stod(fields[4]);
        r.delta_v = std::stod(fields[5]);
        r.policy = fields[6];
        r.horizon = std::stoll(fields[7]);
        r.replications = std::stoi(fields[8]);
        r.regret_mean = std::stod(fields[9]);
        r.regret_std = std::stod(fields[10]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_trace_csv(const std::vector<RegretTrace>& traces, std::ostream& out) {
    const TraceStats stats = aggregate_traces(traces);
    out << "step,mean_regret,std_regret\n";
    out << std::setprecision(kPrecision);
    for (std::size_t k = 0; k < stats.steps.size(); ++k)
        out << stats.steps[k] << ',' << stats.mean_regret[k] << ',' << stats.std_regret[k] << '\n';
}

void write_trace_csv(const std::vector<RegretTrace>& traces, const std::string& path) {
    auto out = open_or_throw(path);
    write_trace_csv(traces, out);
}

void write_traces_json(const ExperimentConfig& config, const std::vector<RegretTrace>& traces,
                       const std::string& path) {
    if (traces.empty()) throw std::invalid_argument("write_traces_json: empty trace list");
    nlohmann::json j;
    j["config"] = nlohmann::json::parse(config.to_json());
    for (const auto& t : traces) {
        nlohmann::json jt;
        jt["seed"] = t.seed;
        jt["steps"] = t.steps;
        jt["cum_regret"] = t.cum_regret;
        jt["pull_counts"] = t.pull_counts;
        j["replications"].push_back(std::move(jt));
    }
    auto out = open_or_throw(path);
    out << j.dump(2) << "\n";
}

void write_regret_svg(const std::vector<SvgSeries>& series, std::ostream& out) {
    if (series.empty()) throw std::invalid_argument("write_regret_svg: no series");
    const double width = 720, height = 480;
    const double ml = 70, mr = 160, mt = 20, mb = 50;
    double max_step = 1, max_val = 1;
    for (const auto& s : series) {
        for (auto v : s.steps) max_step = std::max(max_step, static_cast<double>(v));
        for (auto v : s.values) max_val = std::max(max_val, v);
    }
    const auto x_of = [&](double step) { return ml + (width - ml - mr) * step / max_step; };
    const auto y_of = [&](double val) { return height - mb - (height - mt - mb) * val / max_val; };
    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"14\">step</text>\n";
    out << "<text x=\"18\" y=\"" << (mt + height - mb) / 2
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
        << (mt + height - mb) / 2 << ")\">cumulative regret</text>\n";
    out << std::setprecision(10);
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kColors[s % (sizeof(kColors) / sizeof(kColors[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < series[s].steps.size(); ++k) {
            if (k) out << ' ';
            out << x_of(static_cast<double>(series[s].steps[k])) << ',' << y_of(series[s].values[k]);
        }
        out << "\"/>\n";
        const double ly = mt + 18.0 * static_cast<double>(s + 1);
        out << "<line x1=\"" << width - mr + 10 << "\" y1=\"" << ly << "\" x2=\""
            << width - mr + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << width - mr + 40 << "\" y=\"" << ly + 4
            << "\" font-size=\"13\">" << series[s].label << "</text>\n";
    }
    out << "</svg>\n";
}

void write_regret_svg(const std::vector<SvgSeries>& series, const std::string& path) {
    auto out = open_or_throw(path);
    write_regret_svg(series, out);
}

}  // namespace rank1
