#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "pgain/gain_series.hpp"
#include "pgain/graph.hpp"
#include "pgain/rank_analysis.hpp"
#include "pgain/scores.hpp"

namespace pgain {

/// Shortest decimal form that round-trips; "nan"/"inf" for non-finite.
std::string format_double(double x);

/// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string csv_field(std::string_view s);

/// "original_label,score", descending by score, ties broken by label.
void write_scores_csv(const Graph& g, const ScoreVector& scores,
                      std::ostream& out);

/// "k,increment_norm,epsilon_k".
void write_convergence_csv(const ConvergenceReport& report, std::ostream& out);

/// "delta,metric,rho"; undefined correlations are written as "undefined".
void write_sweep_csv(const SweepResult& sweep, std::ostream& out);

/// Square matrix with metric names as header row and first column.
void write_correlation_csv(const CorrelationTable& table, std::ostream& out);

}  // namespace pgain
