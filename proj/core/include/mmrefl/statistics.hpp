#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace mmrefl {

/// Point estimate with a 95% confidence interval [lo, hi].
struct Estimate {
    double mean{0.0};
    double ci_halfwidth{0.0};
    double lo{0.0};
    double hi{0.0};
    std::size_t n{0};

    [[nodiscard]] bool contains(double x) const { return x >= lo && x <= hi; }
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for `successes` out of `n`.
Estimate proportion_estimate(std::size_t successes, std::size_t n, double z = kZ95);

/// Normal-approximation interval for a sample mean from running sums.
Estimate mean_estimate(double sum, double sum_sq, std::size_t n, double z = kZ95);

/// sup |F_n - F| for a sample against a (possibly defective) CDF. Samples
/// equal to +inf never count towards F_n.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Upper-tail probability of a chi-square statistic with `dof` degrees of freedom.
double chi_square_pvalue(double statistic, double dof);

}  // namespace mmrefl
