#include "mmrefl/network.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace mmrefl {

namespace {

void require(bool ok, const char* field, const char* constraint) {
    if (!ok) {
        throw std::invalid_argument(std::string(field) + ": " + constraint);
    }
}

}  // namespace

void NetworkParams::validate() const {
    require(std::isfinite(lambda_bs) && lambda_bs > 0.0, "lambda_bs", "lambda_bs > 0 required");
    require(std::isfinite(lambda_obj) && lambda_obj >= 0.0, "lambda_obj", "lambda_obj >= 0 required");
    require(delta >= 0.0 && delta <= 1.0, "delta", "0 <= delta <= 1 required");
    require(std::isfinite(L1) && L1 > 0.0, "L1", "L1 > 0 required");
    require(std::isfinite(L2) && L1 <= L2, "L2", "L1 <= L2 required");
    require(std::isfinite(alpha) && alpha > 2.0, "alpha", "alpha > 2 required");
    require(std::isfinite(sigma2) && sigma2 >= 0.0, "sigma2", "sigma2 >= 0 required");
    require(std::isfinite(p_tx) && p_tx > 0.0, "p_tx", "p_tx > 0 required");
    require(std::isfinite(window_halfwidth) && window_halfwidth >= 0.0, "window_halfwidth",
            "window_halfwidth >= 0 required");
}

double derive_beta(const NetworkParams& params) {
    return 2.0 * params.lambda_obj * params.mean_length() / std::numbers::pi;
}

geom::Segment ObjectSegment::segment() const {
    const Point half{0.5 * length * std::cos(orientation), 0.5 * length * std::sin(orientation)};
    return {center - half, center + half};
}

Rng Rng::for_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix(seed) ^ mix(stream * kGamma + 0x632be59bd9b4e019ULL));
}

std::vector<Point> sample_ppp(double density, double halfwidth, Rng& rng) {
    std::vector<Point> points;
    const double mean = density * (2.0 * halfwidth) * (2.0 * halfwidth);
    if (!(mean > 0.0)) {
        return points;
    }
    std::poisson_distribution<long long> count_dist(mean);
    const auto n = count_dist(rng);
    points.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        const double x = (2.0 * rng.uniform() - 1.0) * halfwidth;
        const double y = (2.0 * rng.uniform() - 1.0) * halfwidth;
        points.emplace_back(x, y);
    }
    return points;
}

std::vector<ObjectSegment> sample_objects(const NetworkParams& params, double halfwidth, Rng& rng) {
    const auto centers = sample_ppp(params.lambda_obj, halfwidth, rng);
    std::vector<ObjectSegment> objects;
    objects.reserve(centers.size());
    for (const Point& c : centers) {
        ObjectSegment obj;
        obj.center = c;
        obj.kind = rng.uniform() < params.delta ? ObjectKind::Reflector : ObjectKind::Blocker;
        obj.length = params.L1 + (params.L2 - params.L1) * rng.uniform();
        obj.orientation = 2.0 * std::numbers::pi * rng.uniform();
        objects.push_back(obj);
    }
    return objects;
}

double window_for_min_bs(const NetworkParams& params, double min_mean_bs) {
    if (!(min_mean_bs >= 1.0)) {
        throw std::invalid_argument("min_mean_bs >= 1 required");
    }
    const double h = 0.5 * std::sqrt(min_mean_bs / params.lambda_bs);
    return std::max(h, params.window_halfwidth);
}

}  // namespace mmrefl
