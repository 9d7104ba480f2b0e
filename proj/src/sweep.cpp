#include "poolann/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "poolann/enumeration.hpp"

namespace poolann {

namespace {

HeterogeneousFund fund_of(const SweepPoint& pt) {
    return HeterogeneousFund{{GroupProfile{pt.la, pt.pa, pt.fa}, GroupProfile{pt.lb, pt.pb, pt.fb}}};
}

bool closed_form_applies(const SweepPoint& pt) {
    if (pt.pa != pt.pb) return false;
    if (pt.lb == 1 && pt.la >= 1) return true;       // solo-Bob layout
    if (pt.la == pt.lb && pt.la >= 2) return true;   // same-size layout
    return false;
}

// Closed-sum report for a proposition-shaped point. GSA payoffs are
// homogeneous of degree 1 in wealth, so Group A wealth rescales to 1 with
// beta = fb/fa; both gain metrics are scale-invariant.
GainReport closed_report(const SweepPoint& pt) {
    const double beta = pt.fb / pt.fa;
    if (pt.lb == 1) {
        return expected_consumption_solo_bob(pt.la, pt.pa, beta);
    }
    return expected_consumption_same_size(pt.la, pt.pa, beta);
}

std::string series_label(double pa, double pb, bool shared_probability) {
    char buffer[64];
    if (shared_probability) {
        std::snprintf(buffer, sizeof buffer, "p=%.2f", pa);
    } else {
        std::snprintf(buffer, sizeof buffer, "pA=%.2f", pa);
        (void)pb;
    }
    return buffer;
}

}  // namespace

FigureSweep figure_sweep(const std::string& figure_id) {
    static const char* kValid =
        "valid figure ids: 1a 1b 1c 1d 2a 2b 2c 2d 3a 3b 3c 3d 4a 4b 4c 4d";
    if (figure_id.size() != 2) {
        throw std::invalid_argument("unknown figure id '" + figure_id + "'; " + kValid);
    }
    const char figure = figure_id[0];
    const char panel = figure_id[1];
    if (figure < '1' || figure > '4' || panel < 'a' || panel > 'd') {
        throw std::invalid_argument("unknown figure id '" + figure_id + "'; " + kValid);
    }

    int la = 0;
    int lb = 0;
    switch (panel) {
        case 'a': la = 10;  lb = 10;  break;
        case 'b': la = 100; lb = 100; break;
        case 'c': la = 10;  lb = 1;   break;
        case 'd': la = 100; lb = 1;   break;
    }

    FigureSweep result;
    result.metric = (figure == '1' || figure == '2') ? GainMetric::expected_gain_per_unit
                                                     : GainMetric::conditional_relative_gain_per_unit;

    if (figure == '1' || figure == '3') {
        // x = pB in 0.50..0.95, one series per pA; unit contributions.
        for (double pa : {0.6, 0.75, 0.9}) {
            for (int i = 0; i <= 9; ++i) {
                const double pb = 0.50 + 0.05 * i;
                GridEntry entry;
                entry.x = pb;
                entry.series = series_label(pa, pb, false);
                entry.point = SweepPoint{la, lb, pa, pb, 1.0, 1.0};
                result.grid.push_back(entry);
            }
        }
    } else {
        // x = Bob's contribution, one series per shared p.
        for (double p : {0.6, 0.9}) {
            for (double fb : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
                GridEntry entry;
                entry.x = fb;
                entry.series = series_label(p, p, true);
                entry.point = SweepPoint{la, lb, p, p, 1.0, fb};
                result.grid.push_back(entry);
            }
        }
    }
    return result;
}

SweepRow evaluate_point(const GridEntry& entry, GainMetric metric) {
    const SweepPoint& pt = entry.point;
    GainReport report;
    if (closed_form_applies(pt)) {
        report = closed_report(pt);
    } else {
        report = enumerate_gain_report(fund_of(pt), MemberRef{1});
    }
    SweepRow row;
    row.x = entry.x;
    row.series = entry.series;
    row.method = report.method;
    row.value = metric == GainMetric::expected_gain_per_unit
                    ? report.gain_per_unit
                    : report.conditional_relative_gain_per_unit;
    return row;
}

SweepTable sweep(const std::vector<GridEntry>& grid, GainMetric metric) {
    SweepTable table;
    table.rows.reserve(grid.size());
    for (const GridEntry& entry : grid) {
        try {
            table.rows.push_back(evaluate_point(entry, metric));
        } catch (const std::exception& e) {
            table.errors.push_back(
                SweepError{entry.series + " @ x=" + format_sig(entry.x), e.what()});
        }
    }
    return table;
}

std::string format_sig(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

std::string to_csv(const SweepTable& table) {
    std::string csv = "x,series,value,method\n";
    for (const SweepRow& row : table.rows) {
        csv += format_sig(row.x);
        csv += ',';
        csv += row.series;
        csv += ',';
        csv += format_sig(row.value);
        csv += ',';
        csv += method_name(row.method);
        csv += '\n';
    }
    return csv;
}

}  // namespace poolann
