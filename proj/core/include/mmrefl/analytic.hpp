#pragma once
/**
 * @file analytic.hpp
 * @brief Numerical evaluation of the stochastic-geometry coverage model with
 *        random blockages and first-order reflectors.
 *
 * Conventions used throughout:
 *  - `lambda` is the base-station density, `beta` the per-meter blocking rate
 *    (see derive_beta), distances are in meters.
 *  - Distance laws are defective: the densities integrate to one minus the
 *    probability that no such path exists. CCDFs include that mass.
 *  - Thresholds T are linear (dB conversion happens at the CLI boundary).
 */

#include <memory>
#include <optional>
#include <vector>

#include "mmrefl/network.hpp"
#include "mmrefl/quadrature.hpp"

namespace mmrefl::analytic {

/**
 * Angular half-width of the mirrored cone behind a reflector of length l at
 * distance d, as used by the arc approximation.
 *
 * Geometric: arctan(l / 2d), the true half-angle of a perpendicular
 *            reflector seen from the user.
 * Doubled:   2 arctan(l / 2d). Matches the association and coverage values
 *            published for this model; the default for that reason.
 */
enum class ConeWidth { Geometric, Doubled };

struct ModelOptions {
    QuadratureSpec quad{};
    ConeWidth cone{ConeWidth::Doubled};
    int length_nodes{32};    ///< Gauss-Legendre nodes for E_l[...]
    int table_points{2048};  ///< tabulation of the reflected-path law
};

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// Probability that a link of length r crosses no object: exp(-beta r).
double unblocked_probability(double r, double beta);

/// S(x) = 2 / (beta x)^2 (1 - e^{-beta x}(1 + beta x)); series near beta x = 0.
double s_factor(double x, double beta);

/// Density of the distance to the nearest visible point of a PPP of the
/// given density: 2 pi lambda r exp(-lambda pi r^2 S(r) - beta r).
double pdf_direct_distance(double r, double lambda, double beta);

/// P(R_d > r), including the mass at infinity.
double ccdf_direct_distance(double r, double lambda, double beta);

/// P(R_d = inf) = exp(-2 pi lambda / beta^2); 0 when beta = 0.
double prob_no_direct(double lambda, double beta);

/// E[R_d | R_d < inf]; nullopt when a direct path essentially never exists.
std::optional<double> mean_direct_distance(double lambda, double beta, const QuadratureSpec& quad = {});

/// Nearest visible reflector centre; same law as the direct distance.
double pdf_nearest_reflector(double d, double lambda_r, double beta);

double theta_d(double l, double d);

/// theta_d scaled according to the cone convention.
double cone_half_angle(double l, double d, ConeWidth cone);

/// int_{x1}^{x2} rho e^{-beta rho} d rho, stable for small beta x.
double radial_mass(double x1, double x2, double beta);

struct KTerm {
    double K{0.0};
    double dK{0.0};  ///< dK/dr = 2 r e^{-beta r}
};

/// K(r) = 2 int_d^r t e^{-beta t} dt and its r-derivative.
KTerm k_and_derivative(double r, double d, double beta);

/// K(inf) = 2 e^{-beta d}(d / beta + 1 / beta^2); +inf when beta = 0.
double k_at_infinity(double d, double beta);

// ---------------------------------------------------------------------------
// Reflected path given the nearest reflector at distance d
// ---------------------------------------------------------------------------

/// Uniform length law U(L1, L2) with a Gauss-Legendre rule for E_l[f(l)].
class LengthLaw {
public:
    LengthLaw(double L1, double L2, int nodes = 32);

    template <typename F>
    double expect(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < lengths_.size(); ++i) {
            acc += weights_[i] * f(lengths_[i]);
        }
        return acc;
    }

    [[nodiscard]] const std::vector<double>& lengths() const { return lengths_; }
    [[nodiscard]] double min_length() const { return L1_; }
    [[nodiscard]] double max_length() const { return L2_; }

private:
    double L1_;
    double L2_;
    std::vector<double> lengths_;
    std::vector<double> weights_;  // sum to one
};

/**
 * P(R_r > r | d) for a perpendicular reflector of fixed length l, integrating
 * lambda e^{-beta |x|} over the exact mirrored region: polar angle within
 * +-arctan(l / 2d), radius from the reflector chord d / cos(phi) out to r.
 */
double ccdf_reflected_given_d_exact(double r, double d, double l, double lambda, double beta,
                                    const QuadratureSpec& quad = {});

/// Arc approximation E_l[exp(-lambda theta K(r))].
double ccdf_reflected_given_d(double r, double d, const LengthLaw& law, double lambda, double beta,
                              ConeWidth cone = ConeWidth::Doubled);

/// Arc approximation density E_l[lambda theta K'(r) exp(-lambda theta K(r))].
double pdf_reflected_given_d(double r, double d, const LengthLaw& law, double lambda, double beta,
                             ConeWidth cone = ConeWidth::Doubled);

/// E_l[exp(-lambda theta K(inf))]: no reflected path through this reflector.
double prob_no_reflection_given_d(double d, const LengthLaw& law, double lambda, double beta,
                                  ConeWidth cone = ConeWidth::Doubled);

// ---------------------------------------------------------------------------
// Unconditioned reflected-path law (through the nearest visible reflector)
// ---------------------------------------------------------------------------

/// f(r_r) = int f(r_r | d) f_D(d) dd, by adaptive quadrature.
double pdf_reflected(double r, const NetworkParams& params, const ModelOptions& options = {});

/// P(R_r > r), including the mass at infinity, by adaptive quadrature.
double ccdf_reflected(double r, const NetworkParams& params, const ModelOptions& options = {});

/// P(R_r = inf) = E_d[P(R_r = inf | d)] + P(D = inf).
double prob_no_reflection(const NetworkParams& params, const ModelOptions& options = {});

/**
 * Both path-length laws for one parameter set. The reflected law is
 * tabulated once on r = s u / (1 - u), u in [0, 1], and interpolated with a
 * cubic B-spline; the direct law is closed form.
 */
class DistanceModel {
public:
    explicit DistanceModel(const NetworkParams& params, const ModelOptions& options = {});

    [[nodiscard]] double pdf_direct(double r) const;
    [[nodiscard]] double ccdf_direct(double r) const;
    [[nodiscard]] double atom_direct() const { return atom_direct_; }

    [[nodiscard]] double pdf_reflected(double r) const;
    [[nodiscard]] double ccdf_reflected(double r) const;
    [[nodiscard]] double atom_reflected() const { return atom_reflected_; }
    [[nodiscard]] bool has_reflectors() const { return has_reflectors_; }

    /// E[R_d | R_d < inf] and E[R_r | R_r < inf]; nullopt if the path never exists.
    [[nodiscard]] std::optional<double> mean_direct() const;
    [[nodiscard]] std::optional<double> mean_reflected() const;

    /// Mass of the tabulated reflected density plus its atom; should be 1.
    [[nodiscard]] double reflected_total_mass() const;

    [[nodiscard]] const NetworkParams& params() const { return params_; }
    [[nodiscard]] const ModelOptions& options() const { return options_; }
    [[nodiscard]] double beta() const { return beta_; }
    [[nodiscard]] double direct_scale() const;
    [[nodiscard]] double reflected_scale() const { return reflected_scale_; }

private:
    struct Tables;

    NetworkParams params_;
    ModelOptions options_;
    double beta_{0.0};
    double atom_direct_{0.0};
    double atom_reflected_{1.0};
    bool has_reflectors_{false};
    double reflected_scale_{1.0};
    std::shared_ptr<const Tables> tables_;
};

// ---------------------------------------------------------------------------
// Association and coverage
// ---------------------------------------------------------------------------

struct Association {
    double p_d{0.0};     ///< P(R_d < R_r), including R_r = inf
    double p_r{0.0};     ///< P(R_r < R_d), including R_d = inf
    double p_none{0.0};  ///< both paths absent
};

Association association_probabilities(const DistanceModel& model);
Association association_probabilities(const NetworkParams& params, const ModelOptions& options = {});

/**
 * E over the PPP of the product of visible-interferer Laplace factors beyond
 * r_d: exp(-2 pi lambda int_{r_d}^inf q e^{-beta r} / (1 + q) r dr) with
 * q = T r_d^alpha r^-alpha.
 */
double laplace_direct_interference(double r_d, double T, double lambda, double beta, double alpha,
                                   const QuadratureSpec& quad = {});

/// 1 / (1 + sqrt(T)(pi/2 - arctan(1/sqrt(T)))): SIR coverage, alpha = 4, no objects.
double baseline_coverage_closed_form(double T);

struct Coverage {
    double direct{0.0};
    double reflected{0.0};
    [[nodiscard]] double total() const { return direct + reflected; }
};

/// Coverage evaluator that shares one DistanceModel across thresholds.
class CoverageModel {
public:
    explicit CoverageModel(const NetworkParams& params, const ModelOptions& options = {});
    explicit CoverageModel(DistanceModel distances);

    [[nodiscard]] double direct(double T) const;
    [[nodiscard]] double reflected(double T) const;
    [[nodiscard]] Coverage evaluate(double T) const;

    [[nodiscard]] const DistanceModel& distances() const { return distances_; }

private:
    DistanceModel distances_;
};

double coverage_direct(double T, const NetworkParams& params, const ModelOptions& options = {});
double coverage_reflected(double T, const NetworkParams& params, const ModelOptions& options = {});
double coverage_total(double T, const NetworkParams& params, const ModelOptions& options = {});

}  // namespace mmrefl::analytic
