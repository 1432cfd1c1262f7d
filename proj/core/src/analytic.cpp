#include "mmrefl/analytic.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace mmrefl::analytic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// phi(z) = 1 - e^{-z}(1 + z) = sum_{k>=2} (-1)^k (k-1) z^k / k!
double phi(double z) {
    if (z < 0.05) {
        const double z2 = z * z;
        return z2 * (1.0 / 2.0 +
                     z * (-1.0 / 3.0 +
                          z * (1.0 / 8.0 +
                               z * (-1.0 / 30.0 +
                                    z * (1.0 / 144.0 + z * (-1.0 / 840.0 + z * (1.0 / 5760.0)))))));
    }
    return -std::expm1(-z) - z * std::exp(-z);
}

// g(z) = e^{-z}(1 + z) = 1 - phi(z)
double g_tail(double z) { return std::exp(-z) * (1.0 + z); }

}  // namespace

double unblocked_probability(double r, double beta) { return std::exp(-beta * r); }

double s_factor(double x, double beta) {
    const double z = beta * x;
    if (z == 0.0) {
        return 1.0;
    }
    return 2.0 * phi(z) / (z * z);
}

double radial_mass(double x1, double x2, double beta) {
    if (beta == 0.0) {
        return 0.5 * (x2 * x2 - x1 * x1);
    }
    if (x2 == kInf) {
        return g_tail(beta * x1) / (beta * beta);
    }
    const double z1 = beta * x1;
    const double z2 = beta * x2;
    if (z1 >= 1.0) {
        return (g_tail(z1) - g_tail(z2)) / (beta * beta);
    }
    return (phi(z2) - phi(z1)) / (beta * beta);
}

double pdf_direct_distance(double r, double lambda, double beta) {
    if (r <= 0.0) {
        return 0.0;
    }
    return 2.0 * kPi * lambda * r * std::exp(-2.0 * kPi * lambda * radial_mass(0.0, r, beta) - beta * r);
}

double ccdf_direct_distance(double r, double lambda, double beta) {
    if (r <= 0.0) {
        return 1.0;
    }
    return std::exp(-2.0 * kPi * lambda * radial_mass(0.0, r, beta));
}

double prob_no_direct(double lambda, double beta) {
    if (beta <= 0.0) {
        return 0.0;
    }
    return std::exp(-2.0 * kPi * lambda / (beta * beta));
}

std::optional<double> mean_direct_distance(double lambda, double beta, const QuadratureSpec& quad) {
    const double mass = 1.0 - prob_no_direct(lambda, beta);
    if (!(mass > 1e-300)) {
        return std::nullopt;
    }
    const double first = integrate_to_infinity([=](double r) { return r * pdf_direct_distance(r, lambda, beta); }, 0.0,
                                               quad, 0.5 / std::sqrt(lambda));
    return first / mass;
}

double pdf_nearest_reflector(double d, double lambda_r, double beta) {
    return pdf_direct_distance(d, lambda_r, beta);
}

double theta_d(double l, double d) { return std::atan(l / (2.0 * d)); }

double cone_half_angle(double l, double d, ConeWidth cone) {
    const double half = theta_d(l, d);
    return cone == ConeWidth::Doubled ? 2.0 * half : half;
}

KTerm k_and_derivative(double r, double d, double beta) {
    KTerm k;
    k.K = r <= d ? 0.0 : 2.0 * radial_mass(d, r, beta);
    k.dK = 2.0 * r * std::exp(-beta * r);
    return k;
}

double k_at_infinity(double d, double beta) {
    if (beta <= 0.0) {
        return kInf;
    }
    return 2.0 * radial_mass(d, kInf, beta);
}

// ---------------------------------------------------------------------------

LengthLaw::LengthLaw(double L1, double L2, int nodes) : L1_(L1), L2_(L2) {
    if (!(L1 > 0.0) || L2 < L1) {
        throw std::invalid_argument("LengthLaw: 0 < L1 <= L2 required");
    }
    if (L1 == L2 || nodes <= 1) {
        lengths_ = {0.5 * (L1 + L2)};
        weights_ = {1.0};
        return;
    }
    auto* table = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(nodes));
    if (table == nullptr) {
        throw std::runtime_error("LengthLaw: cannot allocate Gauss-Legendre table");
    }
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>
        guard(table, &gsl_integration_glfixed_table_free);
    lengths_.resize(static_cast<std::size_t>(nodes));
    weights_.resize(static_cast<std::size_t>(nodes));
    for (std::size_t i = 0; i < lengths_.size(); ++i) {
        gsl_integration_glfixed_point(L1, L2, i, &lengths_[i], &weights_[i], table);
        weights_[i] /= (L2 - L1);
    }
}

double ccdf_reflected_given_d_exact(double r, double d, double l, double lambda, double beta,
                                    const QuadratureSpec& quad) {
    if (r <= d) {
        return 1.0;
    }
    const double phi_max = std::min(theta_d(l, d), std::acos(d / r));
    const Integrand radial = [=](double angle) {
        const double chord = d / std::cos(angle);
        return chord >= r ? 0.0 : radial_mass(chord, r, beta);
    };
    const double mass = 2.0 * integrate(radial, 0.0, phi_max, quad);
    return std::exp(-lambda * mass);
}

double ccdf_reflected_given_d(double r, double d, const LengthLaw& law, double lambda, double beta,
                              ConeWidth cone) {
    if (r <= d) {
        return 1.0;
    }
    const double K = k_and_derivative(r, d, beta).K;
    return law.expect([&](double l) { return std::exp(-lambda * cone_half_angle(l, d, cone) * K); });
}

double pdf_reflected_given_d(double r, double d, const LengthLaw& law, double lambda, double beta,
                             ConeWidth cone) {
    if (r < d) {
        return 0.0;
    }
    const auto k = k_and_derivative(r, d, beta);
    return law.expect([&](double l) {
        const double rate = lambda * cone_half_angle(l, d, cone);
        return rate * k.dK * std::exp(-rate * k.K);
    });
}

double prob_no_reflection_given_d(double d, const LengthLaw& law, double lambda, double beta,
                                  ConeWidth cone) {
    if (lambda <= 0.0) {
        return 1.0;
    }
    const double kinf = k_at_infinity(d, beta);
    if (kinf == kInf) {
        return 0.0;
    }
    return law.expect([&](double l) { return std::exp(-lambda * cone_half_angle(l, d, cone) * kinf); });
}

// ---------------------------------------------------------------------------

namespace {

// The conditional law concentrates within ~1/(lambda theta K'(r)) of d = r
// when base stations are dense; place breakpoints there so the adaptive rule
// cannot step over it.
double integrate_up_to_r(const Integrand& f, double r, double width, const QuadratureSpec& quad) {
    double upper = r;
    double total = 0.0;
    for (double factor : {1.0, 8.0, 64.0, 512.0}) {
        const double lower = r - factor * width;
        if (lower <= 0.0) {
            break;
        }
        total += integrate(f, lower, upper, quad);
        upper = lower;
    }
    return total + integrate(f, 0.0, upper, quad);
}

double concentration_width(double r, const NetworkParams& params, const LengthLaw& law, double beta,
                           ConeWidth cone) {
    const double rate =
        params.lambda_bs * cone_half_angle(law.min_length(), r, cone) * k_and_derivative(r, r, beta).dK;
    return rate > 0.0 ? 1.0 / rate : kInf;
}

}  // namespace

double pdf_reflected(double r, const NetworkParams& params, const ModelOptions& options) {
    const double lambda_r = params.lambda_reflector();
    if (lambda_r <= 0.0 || r <= 0.0) {
        return 0.0;
    }
    const double beta = derive_beta(params);
    const LengthLaw law(params.L1, params.L2, options.length_nodes);
    const Integrand f = [&](double d) {
        return pdf_nearest_reflector(d, lambda_r, beta) *
               pdf_reflected_given_d(r, d, law, params.lambda_bs, beta, options.cone);
    };
    return integrate_up_to_r(f, r, concentration_width(r, params, law, beta, options.cone), options.quad);
}

double ccdf_reflected(double r, const NetworkParams& params, const ModelOptions& options) {
    const double lambda_r = params.lambda_reflector();
    if (lambda_r <= 0.0 || r <= 0.0) {
        return 1.0;
    }
    const double beta = derive_beta(params);
    const LengthLaw law(params.L1, params.L2, options.length_nodes);
    const Integrand f = [&](double d) {
        return pdf_nearest_reflector(d, lambda_r, beta) *
               ccdf_reflected_given_d(r, d, law, params.lambda_bs, beta, options.cone);
    };
    const double beyond = ccdf_direct_distance(r, lambda_r, beta);  // P(D > r), atom included
    return beyond +
           integrate_up_to_r(f, r, concentration_width(r, params, law, beta, options.cone), options.quad);
}

double prob_no_reflection(const NetworkParams& params, const ModelOptions& options) {
    const double lambda_r = params.lambda_reflector();
    if (lambda_r <= 0.0) {
        return 1.0;
    }
    const double beta = derive_beta(params);
    const LengthLaw law(params.L1, params.L2, options.length_nodes);
    const Integrand f = [&](double d) {
        return pdf_nearest_reflector(d, lambda_r, beta) *
               prob_no_reflection_given_d(d, law, params.lambda_bs, beta, options.cone);
    };
    return prob_no_direct(lambda_r, beta) + integrate_to_infinity(f, 0.0, options.quad, 0.5 / std::sqrt(lambda_r));
}

// ---------------------------------------------------------------------------

double laplace_direct_interference(double r_d, double T, double lambda, double beta, double alpha,
                                   const QuadratureSpec& quad) {
    if (T <= 0.0 || r_d <= 0.0 || lambda <= 0.0) {
        return 1.0;
    }
    // r = r_d u; q / (1 + q) with q = T u^-alpha is T / (u^alpha + T).
    const Integrand f = [=](double u) {
        const double decay = std::exp(-beta * r_d * u);
        if (decay == 0.0) {
            return 0.0;
        }
        return T * u * decay / (std::pow(u, alpha) + T);
    };
    const double J = integrate_to_infinity(f, 1.0, quad, 1.0);
    return std::exp(-2.0 * kPi * lambda * r_d * r_d * J);
}

double baseline_coverage_closed_form(double T) {
    const double s = std::sqrt(T);
    return 1.0 / (1.0 + s * (0.5 * kPi - std::atan(1.0 / s)));
}

}  // namespace mmrefl::analytic
