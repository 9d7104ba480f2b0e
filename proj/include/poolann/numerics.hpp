#pragma once

#include <vector>

namespace poolann {

// log C(n, k), computed through lgammal so that n up to ~1e4 stays stable.
long double log_choose(int n, int k);

// P(X = k) for X ~ BIN(n, q). Evaluated in long-double log space; terms that
// underflow double are genuinely negligible and come back as 0.
double binomial_pmf(int n, int k, double q);

// The full pmf vector P(X = 0..n) for X ~ BIN(n, q).
std::vector<double> binomial_pmf_table(int n, double q);

// |a - b| measured against max(|a|, |b|, 1), a scale-safe relative difference.
double rel_diff(double a, double b);

}  // namespace poolann
