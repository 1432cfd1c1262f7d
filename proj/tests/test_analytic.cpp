#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "mmrefl/analytic.hpp"

namespace {

using namespace mmrefl;
using namespace mmrefl::analytic;
using boost::math::quadrature::gauss_kronrod;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Independent oracle: 61-point Gauss-Kronrod with its own infinite-range map.
template <typename F>
double oracle_integral(F f, double a, double b) {
    return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-12);
}

NetworkParams make(double lambda_bs, double lambda_obj, double delta, double L1 = 1.0, double L2 = 10.0) {
    NetworkParams p;
    p.lambda_bs = lambda_bs;
    p.lambda_obj = lambda_obj;
    p.delta = delta;
    p.L1 = L1;
    p.L2 = L2;
    return p;
}

double db(double t) { return std::pow(10.0, t / 10.0); }

TEST(UnblockedProbability, Examples) {
    EXPECT_EQ(unblocked_probability(0.0, 0.3), 1.0);
    EXPECT_EQ(unblocked_probability(50.0, 0.0), 1.0);
    EXPECT_NEAR(unblocked_probability(20.0, 0.0350141), 0.4964, 1e-4);
}

TEST(SFactor, LimitsAndKnownValue) {
    EXPECT_DOUBLE_EQ(s_factor(5.0, 0.0), 1.0);
    EXPECT_NEAR(s_factor(1e-9, 1.0), 1.0, 1e-8);
    EXPECT_NEAR(s_factor(1.0, 1.0), 2.0 * (1.0 - 2.0 / std::numbers::e), 1e-12);
    // Series and closed-form branches agree across the switch-over.
    for (double z : {0.01, 0.049, 0.051, 0.1}) {
        const double closed = 2.0 / (z * z) * (1.0 - std::exp(-z) * (1.0 + z));
        EXPECT_NEAR(s_factor(z, 1.0), closed, 1e-9) << z;
    }
}

TEST(SFactor, DecreasingInBetaX) {
    double prev = s_factor(1e-3, 1.0);
    for (double z = 0.01; z <= 100.0; z += 0.01) {
        const double s = s_factor(z, 1.0);
        ASSERT_LT(s, prev) << z;
        ASSERT_GT(s, 0.0);
        prev = s;
    }
}

TEST(DirectDistance, RayleighWhenUnblocked) {
    const double lambda = 0.1;
    for (double r : {0.1, 1.0, 3.0}) {
        EXPECT_NEAR(pdf_direct_distance(r, lambda, 0.0), 2 * kPi * lambda * r * std::exp(-lambda * kPi * r * r),
                    1e-14);
    }
    const double mean = oracle_integral([&](double r) { return r * pdf_direct_distance(r, lambda, 0.0); }, 0, kInf);
    EXPECT_NEAR(mean, 1.0 / (2.0 * std::sqrt(lambda)), 1e-8);
    EXPECT_NEAR(*mean_direct_distance(lambda, 0.0), 1.5811, 1e-4);
}

TEST(DirectDistance, NormalizationWithAtom) {
    for (auto [lambda, beta] : {std::pair{1e-3, 0.0350141}, {1e-2, 0.0350141}, {0.1, 0.1909859}, {1e-3, 0.1}}) {
        const double mass = oracle_integral([&](double r) { return pdf_direct_distance(r, lambda, beta); }, 0, kInf);
        EXPECT_NEAR(mass + prob_no_direct(lambda, beta), 1.0, 1e-5) << lambda << " " << beta;
        for (double r : {0.5, 5.0, 40.0}) {
            const double head = oracle_integral([&](double x) { return pdf_direct_distance(x, lambda, beta); }, 0, r);
            EXPECT_NEAR(ccdf_direct_distance(r, lambda, beta), 1.0 - head, 1e-8);
        }
    }
}

TEST(ProbNoDirect, Examples) {
    EXPECT_EQ(prob_no_direct(1e-3, 0.0), 0.0);
    EXPECT_NEAR(prob_no_direct(1e-3, 0.1), 0.5335, 1e-4);
    EXPECT_NEAR(prob_no_direct(1e-3, 1e-4), 0.0, 1e-12);
}

TEST(NearestReflector, SameLawAsDirectAndNormalized) {
    const double lr = 5e-4, beta = 0.0070028;
    EXPECT_DOUBLE_EQ(pdf_nearest_reflector(12.0, lr, beta), pdf_direct_distance(12.0, lr, beta));
    const double mass = oracle_integral([&](double d) { return pdf_nearest_reflector(d, lr, beta); }, 0, kInf);
    EXPECT_NEAR(mass, 1.0 - std::exp(-2 * kPi * lr / (beta * beta)), 1e-5);
    const double mean = oracle_integral([&](double d) { return d * pdf_nearest_reflector(d, lr, 0.0); }, 0, kInf);
    EXPECT_NEAR(mean, 1.0 / (2.0 * std::sqrt(lr)), 1e-6);
}

TEST(ThetaD, Examples) {
    EXPECT_NEAR(theta_d(2.0, 1.0), kPi / 4, 1e-15);
    EXPECT_NEAR(theta_d(10.0, 5.0), kPi / 4, 1e-15);
    EXPECT_NEAR(theta_d(0.01, 100.0), 0.01 / 200.0, 1e-12);
    EXPECT_DOUBLE_EQ(cone_half_angle(3.0, 7.0, ConeWidth::Doubled), 2.0 * theta_d(3.0, 7.0));
    EXPECT_DOUBLE_EQ(cone_half_angle(3.0, 7.0, ConeWidth::Geometric), theta_d(3.0, 7.0));
}

TEST(KTerm, ZeroAtDAndLimits) {
    EXPECT_EQ(k_and_derivative(4.0, 4.0, 0.05).K, 0.0);
    const auto k0 = k_and_derivative(10.0, 3.0, 0.0);
    EXPECT_NEAR(k0.K, 100.0 - 9.0, 1e-12);
    EXPECT_NEAR(k0.dK, 20.0, 1e-12);
    EXPECT_NEAR(k_and_derivative(10.0, 3.0, 1e-9).K, 91.0, 1e-5);
}

TEST(KTerm, DerivativeMatchesFiniteDifference) {
    EXPECT_NEAR(k_and_derivative(10.0, 2.0, 0.05).dK, 20.0 * std::exp(-0.5), 1e-12);
    EXPECT_NEAR(k_and_derivative(10.0, 2.0, 0.05).dK, 12.131, 1e-3);
    for (double beta : {0.001, 0.05, 0.3}) {
        for (double r : {2.0, 10.0, 50.0}) {
            const double d = 1.0, h = 1e-4 * r;
            const double fd =
                (k_and_derivative(r + h, d, beta).K - k_and_derivative(r - h, d, beta).K) / (2.0 * h);
            const double dk = k_and_derivative(r, d, beta).dK;
            EXPECT_NEAR(fd, dk, 1e-6 * dk) << beta << " " << r;
        }
    }
}

TEST(KTerm, MatchesDefiningIntegral) {
    const double d = 2.5, beta = 0.07;
    for (double r : {3.0, 10.0, 80.0}) {
        const double direct = 2.0 * oracle_integral([&](double t) { return t * std::exp(-beta * t); }, d, r);
        EXPECT_NEAR(k_and_derivative(r, d, beta).K, direct, 1e-10 * direct);
    }
    EXPECT_NEAR(k_at_infinity(d, beta), 2 * std::exp(-beta * d) * (d / beta + 1 / (beta * beta)), 1e-9);
}

TEST(ExactConditional, EmptyRegionAndMonotone) {
    EXPECT_EQ(ccdf_reflected_given_d_exact(10.0, 10.0, 5.0, 0.01, 0.007), 1.0);
    double prev = 1.0;
    for (double r = 10.5; r < 400; r *= 1.3) {
        const double c = ccdf_reflected_given_d_exact(r, 10.0, 5.0, 0.01, 0.007);
        ASSERT_LE(c, prev + 1e-12);
        prev = c;
    }
}

TEST(ExactConditional, MatchesRejectionSamplingOfRegion) {
    // Estimate the integral of lambda e^{-beta |x|} over the region behind the
    // chord x = d, |y| <= l/2, inside the cone and within radius r.
    const double d = 10.0, l = 5.0, lambda = 0.01, beta = 0.007, r = 30.0;
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> ux(d, r), uy(-r, r);
    const double box = (r - d) * 2 * r;
    const int n = 2'000'000;
    double acc = 0.0;
    const double slope = l / (2 * d);
    for (int i = 0; i < n; ++i) {
        const double x = ux(gen), y = uy(gen);
        const double rho = std::hypot(x, y);
        if (rho <= r && std::abs(y) <= slope * x) {
            acc += std::exp(-beta * rho);
        }
    }
    const double integral = lambda * box * acc / n;
    EXPECT_NEAR(ccdf_reflected_given_d_exact(r, d, l, lambda, beta), std::exp(-integral), 1e-3);
}

TEST(ApproxConditional, NormalizedWithAtom) {
    const double d = 10.0, lambda = 1e-3, beta = 0.0070028;
    const LengthLaw law(1.0, 10.0);
    for (auto cone : {ConeWidth::Geometric, ConeWidth::Doubled}) {
        const double mass =
            oracle_integral([&](double r) { return pdf_reflected_given_d(r, d, law, lambda, beta, cone); }, d, kInf);
        EXPECT_NEAR(mass + prob_no_reflection_given_d(d, law, lambda, beta, cone), 1.0, 1e-4);
        EXPECT_NEAR(ccdf_reflected_given_d(1e7, d, law, lambda, beta, cone),
                    prob_no_reflection_given_d(d, law, lambda, beta, cone), 1e-6);
    }
}

TEST(ApproxConditional, DegenerateLengthLawIsSingleTerm) {
    const LengthLaw law(4.0, 4.0);
    const double d = 8.0, r = 20.0, lambda = 0.02, beta = 0.01;
    const double theta = theta_d(4.0, d);
    const auto k = k_and_derivative(r, d, beta);
    EXPECT_NEAR(ccdf_reflected_given_d(r, d, law, lambda, beta, ConeWidth::Geometric),
                std::exp(-lambda * theta * k.K), 1e-14);
    EXPECT_NEAR(pdf_reflected_given_d(r, d, law, lambda, beta, ConeWidth::Geometric),
                lambda * theta * k.dK * std::exp(-lambda * theta * k.K), 1e-14);
}

TEST(ApproxConditional, ArcApproximationCloseToExactRegion) {
    // l / 2d = 0.25 is the edge of the regime where the arc stands in for the chord.
    const double lambda = 0.01, beta = 0.007;
    for (auto [d, l] : {std::pair{10.0, 5.0}, {20.0, 5.0}, {40.0, 10.0}}) {
        const LengthLaw law(l, l);
        double gap = 0.0;
        for (double r = d; r < d + 400.0; r += 0.5) {
            const double exact = ccdf_reflected_given_d_exact(r, d, l, lambda, beta);
            const double approx = ccdf_reflected_given_d(r, d, law, lambda, beta, ConeWidth::Geometric);
            gap = std::max(gap, std::abs(exact - approx));
        }
        EXPECT_LT(gap, 0.02) << "d=" << d << " l=" << l;
    }
}

TEST(NoReflectionGivenD, Limits) {
    const LengthLaw law(1.0, 10.0);
    EXPECT_NEAR(prob_no_reflection_given_d(10.0, law, 1e-15, 0.01), 1.0, 1e-10);
    EXPECT_LT(prob_no_reflection_given_d(10.0, law, 1e3, 0.01), 1e-6);
    EXPECT_GT(prob_no_reflection_given_d(10.0, law, 1e-3, 0.01), prob_no_reflection_given_d(10.0, law, 1e-2, 0.01));
}

TEST(ReflectedLaw, NoReflectorsMeansNoPath) {
    const DistanceModel m(make(1e-2, 1e-2, 0.0));
    EXPECT_FALSE(m.has_reflectors());
    EXPECT_EQ(m.pdf_reflected(20.0), 0.0);
    EXPECT_EQ(m.atom_reflected(), 1.0);
    EXPECT_FALSE(m.mean_reflected().has_value());
}

TEST(ReflectedLaw, NormalizedWithAtom) {
    for (const auto& p : {make(1e-3, 1e-3, 0.5), make(1e-2, 1e-2, 0.2), make(0.1, 0.1, 0.5, 1, 5)}) {
        const DistanceModel m(p);
        EXPECT_NEAR(m.reflected_total_mass(), 1.0, 1e-3);
        const double mass = oracle_integral([&](double r) { return m.pdf_reflected(r); }, 0, kInf);
        EXPECT_NEAR(mass + m.atom_reflected(), 1.0, 1e-3);
    }
}

TEST(ReflectedLaw, TableMatchesDirectQuadrature) {
    const auto p = make(1e-2, 1e-2, 0.5);
    const DistanceModel m(p);
    for (double r : {5.0, 12.0, 30.0, 90.0}) {
        EXPECT_NEAR(m.pdf_reflected(r), pdf_reflected(r, p), 1e-4 * pdf_reflected(r, p) + 1e-9) << r;
        EXPECT_NEAR(m.ccdf_reflected(r), ccdf_reflected(r, p), 1e-4) << r;
    }
}

TEST(ReflectedLaw, InfiniteLengthIsTheAtom) {
    const DistanceModel m(make(1e-2, 1e-2, 0.5));
    EXPECT_EQ(m.ccdf_reflected(kInf), m.atom_reflected());
    EXPECT_EQ(m.pdf_reflected(kInf), 0.0);
    EXPECT_NEAR(m.ccdf_direct(kInf), m.atom_direct(), 1e-12 * m.atom_direct());
}

TEST(ReflectedLaw, MeanAtHighDensityFlattens) {
    // Mean reflected length through the nearest reflector at lambda = 1 for
    // lambda_o = 1e-3; both reproduce the published curve values.
    EXPECT_NEAR(*DistanceModel(make(1.0, 1e-3, 0.2)).mean_reflected(), 37.54, 0.01);
    EXPECT_NEAR(*DistanceModel(make(1.0, 1e-3, 0.5)).mean_reflected(), 23.29, 0.01);
    EXPECT_NEAR(*DistanceModel(make(1e-3, 1e-3, 0.5)).mean_direct(), 16.19, 0.01);
}

TEST(Association, Examples) {
    EXPECT_EQ(association_probabilities(make(1e-2, 1e-2, 0.0)).p_r, 0.0);
    EXPECT_NEAR(association_probabilities(make(1e-3, 1e-3, 0.5)).p_d, 0.9507, 5e-3);
    EXPECT_NEAR(association_probabilities(make(1e-3, 1e-2, 0.2)).p_r, 0.1061, 5e-3);
    EXPECT_NEAR(association_probabilities(make(1e-2, 1e-2, 0.8)).p_r, 0.1237, 5e-3);
}

TEST(Association, DeltaSweepMatchesPublishedSeries) {
    const double expected[] = {0.977, 0.951, 0.933};
    const double deltas[] = {0.2, 0.5, 0.8};
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(association_probabilities(make(1e-3, 1e-3, deltas[i])).p_d, expected[i], 5e-3);
    }
}

TEST(Association, MassesAddToOne) {
    for (const auto& p : {make(1e-3, 1e-3, 0.5), make(1e-3, 1e-2, 0.8), make(0.1, 0.01, 0.2)}) {
        const auto a = association_probabilities(p);
        EXPECT_GE(a.p_d, 0.0);
        EXPECT_GE(a.p_r, 0.0);
        EXPECT_LE(a.p_d + a.p_r, 1.0 + 1e-6);
        EXPECT_NEAR(a.p_d + a.p_r + a.p_none, 1.0, 1e-3);
    }
}

TEST(LaplaceInterference, ClosedFormWithoutBlockage) {
    const double lambda = 0.01, alpha = 4.0;
    for (double t_db : {-5.0, 0.0, 10.0}) {
        const double T = db(t_db);
        const double rho = 0.5 * std::sqrt(T) * (kPi / 2 - std::atan(1 / std::sqrt(T)));
        for (double r : {1.0, 5.0, 20.0}) {
            EXPECT_NEAR(laplace_direct_interference(r, T, lambda, 0.0, alpha),
                        std::exp(-2 * kPi * lambda * r * r * rho), 1e-7);
        }
    }
}

TEST(LaplaceInterference, LimitsAndMonotone) {
    EXPECT_NEAR(laplace_direct_interference(5.0, 1e-12, 0.01, 0.01, 4.0), 1.0, 1e-9);
    EXPECT_NEAR(laplace_direct_interference(5.0, 1.0, 0.01, 1e3, 4.0), 1.0, 1e-9);
    double prev = 1.0;
    for (double t = -10; t <= 20; t += 2) {
        const double v = laplace_direct_interference(5.0, db(t), 0.01, 0.01, 4.0);
        EXPECT_LE(v, prev);
        prev = v;
    }
    EXPECT_GT(laplace_direct_interference(5.0, 1.0, 0.01, 0.01, 4.0),
              laplace_direct_interference(5.0, 1.0, 0.02, 0.01, 4.0));
}

TEST(Coverage, BaselineMatchesClosedForm) {
    for (double lambda : {1e-3, 0.1}) {
        const CoverageModel model(make(lambda, 0.0, 0.0));
        for (double t = -5; t <= 19; t += 3) {
            const double T = db(t);
            const double expected = 1.0 / (1.0 + std::sqrt(T) * (kPi / 2 - std::atan(1 / std::sqrt(T))));
            EXPECT_NEAR(baseline_coverage_closed_form(T), expected, 1e-15);
            EXPECT_NEAR(model.evaluate(T).total(), expected, 1e-6) << t;
        }
    }
    EXPECT_NEAR(baseline_coverage_closed_form(db(-5)), 0.7764, 1e-4);
}

TEST(Coverage, BoundsAndMonotoneInThreshold) {
    for (const auto& p : {make(0.1, 0.01, 0.5), make(1e-3, 1e-2, 0.8)}) {
        const CoverageModel model(p);
        const auto a = association_probabilities(model.distances());
        double prev = 1.0;
        for (double t = -10; t <= 25; t += 2.5) {
            const auto c = model.evaluate(db(t));
            EXPECT_GE(c.direct, 0.0);
            EXPECT_GE(c.reflected, 0.0);
            EXPECT_LE(c.reflected, a.p_r + 1e-9);
            EXPECT_LE(c.total(), a.p_d + a.p_r + 1e-6);
            EXPECT_LE(c.total(), prev + 1e-9);
            prev = c.total();
        }
        EXPECT_NEAR(model.evaluate(1e-8).total(), a.p_d + a.p_r, 1e-3);
    }
}

TEST(Coverage, VanishesAtLargeThresholdWithNoise) {
    // Without noise a user whose serving path is the only visible one is
    // covered at every threshold, so the large-T limit is only zero when
    // interference is unavoidable or noise is present.
    EXPECT_LT(CoverageModel(make(0.1, 0.01, 0.5)).evaluate(1e8).total(), 1e-3);
    auto p = make(1e-3, 1e-2, 0.8);
    const double floor = CoverageModel(p).evaluate(1e8).total();
    EXPECT_GT(floor, 0.0);
    EXPECT_LT(floor, 1.0 - association_probabilities(p).p_d + 0.1);
    p.sigma2 = 1.0;
    EXPECT_LT(CoverageModel(p).evaluate(1e8).total(), 1e-5);
}

TEST(Coverage, NoiseReducesCoverage) {
    auto p = make(0.1, 0.01, 0.2);
    const double quiet = coverage_total(1.0, p);
    p.sigma2 = 1e-2;
    EXPECT_LT(coverage_total(1.0, p), quiet);
    p.sigma2 = 1e6;
    EXPECT_LT(coverage_total(1.0, p), 1e-3);
}

TEST(Coverage, BlockageOnlyAnchor) {
    // The object-length law affects beta only through E[l]; U(1,10) is the
    // assumed law. See the acceptance binary for the published comparison.
    const auto c = CoverageModel(make(0.1, 0.01, 0.2)).evaluate(db(-5));
    EXPECT_NEAR(c.total(), 0.7907, 5e-3);
}

TEST(Coverage, ZeroReflectorsHasNoReflectedTerm) {
    EXPECT_EQ(coverage_reflected(1.0, make(0.1, 0.01, 0.0)), 0.0);
}

}  // namespace
