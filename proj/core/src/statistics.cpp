#include "mmrefl/statistics.hpp"

#include <gsl/gsl_cdf.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace mmrefl {

Estimate proportion_estimate(std::size_t successes, std::size_t n, double z) {
    Estimate e;
    e.n = n;
    if (n == 0) {
        e.hi = 1.0;
        e.ci_halfwidth = 0.5;
        return e;
    }
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    e.mean = p;
    // The Wilson bounds are exactly 0 and 1 at the edges; avoid rounding dust.
    e.lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
    e.hi = successes == n ? 1.0 : std::min(1.0, center + half);
    e.ci_halfwidth = half;
    return e;
}

Estimate mean_estimate(double sum, double sum_sq, std::size_t n, double z) {
    Estimate e;
    e.n = n;
    if (n == 0) {
        e.mean = std::nan("");
        e.lo = e.hi = e.mean;
        return e;
    }
    const double nn = static_cast<double>(n);
    e.mean = sum / nn;
    const double var = n > 1 ? std::max(0.0, (sum_sq - nn * e.mean * e.mean) / (nn - 1.0)) : 0.0;
    e.ci_halfwidth = z * std::sqrt(var / nn);
    e.lo = e.mean - e.ci_halfwidth;
    e.hi = e.mean + e.ci_halfwidth;
    return e;
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    std::size_t finite = 0;
    for (; finite < sorted.size() && std::isfinite(sorted[finite]); ++finite) {
        const double f = cdf(sorted[finite]);
        d = std::max({d, static_cast<double>(finite + 1) / n - f, f - static_cast<double>(finite) / n});
    }
    // Defective laws: compare the mass that never arrives.
    const double limit = cdf(std::numeric_limits<double>::infinity());
    return std::max(d, std::abs(static_cast<double>(finite) / n - limit));
}

double chi_square_pvalue(double statistic, double dof) { return gsl_cdf_chisq_Q(statistic, dof); }

}  // namespace mmrefl
