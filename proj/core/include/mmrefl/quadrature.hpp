#pragma once
/**
 * @file quadrature.hpp
 * @brief Adaptive 1-D quadrature on finite and semi-infinite intervals.
 *
 * Backed by the GSL QAG integrator (21-point Gauss-Kronrod rule). A
 * semi-infinite range [a, inf) is mapped onto [0, 1) via
 * r = a + scale * t / (1 - t); `scale` should be the integrand's
 * characteristic length so the bulk of the mass sits mid-interval.
 */

#include <functional>
#include <stdexcept>
#include <string>

namespace mmrefl {

struct QuadratureSpec {
    double rel_tol{1e-6};
    double abs_tol{1e-10};
    int max_subdivisions{2000};

    void validate() const;
};

/// Raised when the subdivision budget runs out before the tolerance is met.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    [[nodiscard]] double achieved_abs_error() const { return achieved_; }

private:
    double achieved_;
};

using Integrand = std::function<double(double)>;

double integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

double integrate_to_infinity(const Integrand& f, double a, const QuadratureSpec& spec = {},
                             double scale = 1.0);

}  // namespace mmrefl
