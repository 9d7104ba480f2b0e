#include "poolann/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace poolann {

long double log_choose(int n, int k) {
    if (k < 0 || k > n) {
        throw std::domain_error("log_choose: k out of [0, n]");
    }
    if (k == 0 || k == n) return 0.0L;
    return std::lgamma(static_cast<long double>(n) + 1.0L) -
           std::lgamma(static_cast<long double>(k) + 1.0L) -
           std::lgamma(static_cast<long double>(n - k) + 1.0L);
}

double binomial_pmf(int n, int k, double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw std::domain_error("binomial_pmf: q must lie in (0,1)");
    }
    const long double lq = std::log(static_cast<long double>(q));
    const long double lp = std::log1p(static_cast<long double>(-q));
    const long double lw = log_choose(n, k) + k * lq + (n - k) * lp;
    return static_cast<double>(std::exp(lw));
}

std::vector<double> binomial_pmf_table(int n, double q) {
    std::vector<double> pmf(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        pmf[static_cast<std::size_t>(k)] = binomial_pmf(n, k, q);
    }
    return pmf;
}

double rel_diff(double a, double b) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
    return std::fabs(a - b) / scale;
}

}  // namespace poolann
