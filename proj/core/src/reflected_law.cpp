#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include <algorithm>
#include <cmath>

#include "mmrefl/analytic.hpp"

namespace mmrefl::analytic {

struct DistanceModel::Tables {
    boost::math::interpolators::cardinal_cubic_b_spline<double> pdf;
    boost::math::interpolators::cardinal_cubic_b_spline<double> ccdf;
};

DistanceModel::DistanceModel(const NetworkParams& params, const ModelOptions& options)
    : params_(params), options_(options) {
    params_.validate();
    options_.quad.validate();
    beta_ = derive_beta(params_);
    atom_direct_ = prob_no_direct(params_.lambda_bs, beta_);

    const double lambda_r = params_.lambda_reflector();
    has_reflectors_ = lambda_r > 0.0;
    if (!has_reflectors_) {
        atom_reflected_ = 1.0;
        return;
    }
    reflected_scale_ = 0.5 / std::sqrt(lambda_r);
    atom_reflected_ = prob_no_reflection(params_, options_);

    const int n = std::max(options_.table_points, 16);
    std::vector<double> pdf(static_cast<std::size_t>(n));
    std::vector<double> ccdf(static_cast<std::size_t>(n));
    const double h = 1.0 / (n - 1);
    for (int i = 0; i < n - 1; ++i) {
        const double u = i * h;
        const double r = reflected_scale_ * u / (1.0 - u);
        pdf[static_cast<std::size_t>(i)] = analytic::pdf_reflected(r, params_, options_);
        ccdf[static_cast<std::size_t>(i)] = analytic::ccdf_reflected(r, params_, options_);
    }
    pdf.back() = 0.0;
    ccdf.back() = atom_reflected_;

    tables_ = std::make_shared<const Tables>(Tables{
        {pdf.begin(), pdf.end(), 0.0, h},
        {ccdf.begin(), ccdf.end(), 0.0, h},
    });
}

double DistanceModel::direct_scale() const { return 0.5 / std::sqrt(params_.lambda_bs); }

double DistanceModel::pdf_direct(double r) const { return pdf_direct_distance(r, params_.lambda_bs, beta_); }

double DistanceModel::ccdf_direct(double r) const { return ccdf_direct_distance(r, params_.lambda_bs, beta_); }

double DistanceModel::pdf_reflected(double r) const {
    if (!tables_ || r <= 0.0 || std::isinf(r)) {
        return 0.0;
    }
    const double u = r / (r + reflected_scale_);
    return std::max(0.0, tables_->pdf(u));
}

double DistanceModel::ccdf_reflected(double r) const {
    if (!tables_) {
        return 1.0;
    }
    if (r <= 0.0) {
        return 1.0;
    }
    if (std::isinf(r)) {
        return atom_reflected_;
    }
    const double u = r / (r + reflected_scale_);
    return std::clamp(tables_->ccdf(u), 0.0, 1.0);
}

std::optional<double> DistanceModel::mean_direct() const {
    return mean_direct_distance(params_.lambda_bs, beta_, options_.quad);
}

std::optional<double> DistanceModel::mean_reflected() const {
    const double mass = 1.0 - atom_reflected_;
    if (!tables_ || mass <= 0.0) {
        return std::nullopt;
    }
    const double first = integrate_to_infinity([this](double r) { return r * pdf_reflected(r); }, 0.0,
                                               options_.quad, reflected_scale_);
    return first / mass;
}

double DistanceModel::reflected_total_mass() const {
    if (!tables_) {
        return atom_reflected_;
    }
    return atom_reflected_ +
           integrate_to_infinity([this](double r) { return pdf_reflected(r); }, 0.0, options_.quad, reflected_scale_);
}

// ---------------------------------------------------------------------------

Association association_probabilities(const DistanceModel& model) {
    Association a;
    const auto& quad = model.options().quad;
    a.p_d = integrate_to_infinity([&](double r) { return model.pdf_direct(r) * model.ccdf_reflected(r); }, 0.0, quad,
                                  model.direct_scale());
    if (model.has_reflectors()) {
        a.p_r = integrate_to_infinity([&](double r) { return model.pdf_reflected(r) * model.ccdf_direct(r); }, 0.0,
                                      quad, model.reflected_scale());
    }
    a.p_none = model.atom_direct() * model.atom_reflected();
    return a;
}

Association association_probabilities(const NetworkParams& params, const ModelOptions& options) {
    return association_probabilities(DistanceModel(params, options));
}

// ---------------------------------------------------------------------------

CoverageModel::CoverageModel(const NetworkParams& params, const ModelOptions& options)
    : distances_(params, options) {}

CoverageModel::CoverageModel(DistanceModel distances) : distances_(std::move(distances)) {}

double CoverageModel::direct(double T) const {
    const auto& p = distances_.params();
    const auto& quad = distances_.options().quad;
    const double beta = distances_.beta();
    const double noise = p.noise_ratio();

    // P(R_r > x) minus the mass where the reflected interferer is visible and
    // wins the fading race; equals atom_r + int_x^inf f_r(y) h(x, y) dy.
    const auto reflected_factor = [&](double x) {
        const double ccdf = distances_.ccdf_reflected(x);
        if (!distances_.has_reflectors()) {
            return ccdf;
        }
        const double xa = std::pow(x, p.alpha);
        const Integrand loss = [&](double y) {
            const double q = T * xa / std::pow(y, p.alpha);
            return distances_.pdf_reflected(y) * q * std::exp(-beta * y) / (1.0 + q);
        };
        return ccdf - integrate_to_infinity(loss, x, quad, distances_.reflected_scale());
    };

    const Integrand f = [&](double x) {
        const double density = distances_.pdf_direct(x);
        if (density == 0.0) {
            return 0.0;
        }
        const double noise_term = noise > 0.0 ? std::exp(-std::pow(x, p.alpha) * noise * T) : 1.0;
        if (noise_term == 0.0) {
            return 0.0;
        }
        return density * noise_term * laplace_direct_interference(x, T, p.lambda_bs, beta, p.alpha, quad) *
               reflected_factor(x);
    };
    return integrate_to_infinity(f, 0.0, quad, distances_.direct_scale());
}

double CoverageModel::reflected(double T) const {
    if (!distances_.has_reflectors()) {
        return 0.0;
    }
    const auto& p = distances_.params();
    const auto& quad = distances_.options().quad;
    const double beta = distances_.beta();
    const double noise = p.noise_ratio();

    const Integrand f = [&](double y) {
        const double density = distances_.pdf_reflected(y);
        if (density == 0.0) {
            return 0.0;
        }
        const double noise_term = noise > 0.0 ? std::exp(-std::pow(y, p.alpha) * noise * T) : 1.0;
        if (noise_term == 0.0) {
            return 0.0;
        }
        return density * noise_term * distances_.ccdf_direct(y) *
               laplace_direct_interference(y, T, p.lambda_bs, beta, p.alpha, quad);
    };
    return integrate_to_infinity(f, 0.0, quad, distances_.reflected_scale());
}

Coverage CoverageModel::evaluate(double T) const { return {direct(T), reflected(T)}; }

double coverage_direct(double T, const NetworkParams& params, const ModelOptions& options) {
    return CoverageModel(params, options).direct(T);
}

double coverage_reflected(double T, const NetworkParams& params, const ModelOptions& options) {
    return CoverageModel(params, options).reflected(T);
}

double coverage_total(double T, const NetworkParams& params, const ModelOptions& options) {
    return CoverageModel(params, options).evaluate(T).total();
}

}  // namespace mmrefl::analytic
