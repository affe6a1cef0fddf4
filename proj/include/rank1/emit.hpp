#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rank1/harness.hpp"

namespace rank1 {

// Aggregated trace statistics at shared checkpoint steps.
struct TraceStats {
    std::vector<std::int64_t> steps;
    std::vector<double> mean_regret;
    std::vector<double> std_regret;
};

TraceStats aggregate_traces(const std::vector<RegretTrace>& traces);

// Summary CSV schema:
//   K,L,p_u,p_v,delta_u,delta_v,policy,n,reps,regret_mean,regret_std
// Spike columns are nan for non-spike environments. Throws on empty input.
void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);
void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path);

// Numeric fields of a parsed summary row (round-trip checks, tooling).
struct ParsedSummaryRow {
    int rows = 0, cols = 0;
    double p_u = 0.0, p_v = 0.0, delta_u = 0.0, delta_v = 0.0;
    std::string policy;
    std::int64_t horizon = 0;
    int replications = 0;
    double regret_mean = 0.0, regret_std = 0.0;
};
std::vector<ParsedSummaryRow> parse_summary_csv(std::istream& in);

// Trace CSV schema: step,mean_regret,std_regret. Throws on empty input.
void write_trace_csv(const std::vector<RegretTrace>& traces, std::ostream& out);
void write_trace_csv(const std::vector<RegretTrace>& traces, const std::string& path);

// Full machine-readable dump of a set of replications.
void write_traces_json(const ExperimentConfig& config, const std::vector<RegretTrace>& traces,
                       const std::string& path);

// Regret-versus-step curves, one polyline per labeled series.
struct SvgSeries {
    std::string label;
    std::vector<std::int64_t> steps;
    std::vector<double> values;
};
void write_regret_svg(const std::vector<SvgSeries>& series, std::ostream& out);
void write_regret_svg(const std::vector<SvgSeries>& series, const std::string& path);

}  // namespace rank1
