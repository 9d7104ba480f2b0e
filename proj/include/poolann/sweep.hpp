#pragma once

#include <string>
#include <vector>

#include "poolann/fairness.hpp"

namespace poolann {

enum class GainMetric { expected_gain_per_unit, conditional_relative_gain_per_unit };

// One two-group fund evaluated from the Group-B member's side.
struct SweepPoint {
    int la = 0;
    int lb = 0;
    double pa = 0.0;
    double pb = 0.0;
    double fa = 1.0;
    double fb = 1.0;
};

struct GridEntry {
    double x = 0.0;
    std::string series;
    SweepPoint point;
};

struct SweepRow {
    double x = 0.0;
    std::string series;
    double value = 0.0;
    Method method = Method::closed_sum;
};

struct SweepError {
    std::string label;
    std::string message;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    std::vector<SweepError> errors;
};

struct FigureSweep {
    std::vector<GridEntry> grid;
    GainMetric metric = GainMetric::expected_gain_per_unit;
};

// Grid and metric for one of the figure panels 1a..4d. Throws
// std::invalid_argument listing the valid ids on anything else.
FigureSweep figure_sweep(const std::string& figure_id);

// Evaluates the metric at every grid entry with the fastest valid exact
// method: closed sums when pa == pb and the membership matches a proposition
// layout, count-space enumeration otherwise. Per-point failures land in
// `errors` and the sweep continues.
SweepTable sweep(const std::vector<GridEntry>& grid, GainMetric metric);

// Gain metric for a single two-group point, exact method chosen as above.
SweepRow evaluate_point(const GridEntry& entry, GainMetric metric);

// 12-significant-digit decimal rendering used for all CSV and report output.
std::string format_sig(double value);

// Rows serialized under the header `x,series,value,method`, LF endings.
std::string to_csv(const SweepTable& table);

}  // namespace poolann
