#include "mmrefl/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "mmrefl/analytic.hpp"

namespace mmrefl::sim {

namespace {

constexpr std::size_t kBlockSize = 256;

double exp_unit(Rng& rng) { return -std::log1p(-rng.uniform()); }

double distance_to_segment(Point p, const geom::Segment& s) {
    const Point d = s.direction();
    const double t = std::clamp(geom::dot(p - s.a(), d) / geom::dot(d, d), 0.0, 1.0);
    return geom::distance(p, s.a() + d * t);
}

}  // namespace

// ---------------------------------------------------------------------------

Scene::Scene(const Deployment& deployment) : deployment_(deployment), index_(deployment.objects, deployment.ue) {
    segments_.reserve(deployment.objects.size());
    for (const auto& obj : deployment.objects) {
        segments_.push_back(obj.segment());
    }
}

bool Scene::is_visible(Point p) const { return index_.visible(p); }

std::optional<std::pair<std::size_t, double>> Scene::nearest_visible_bs() const {
    const auto& bs = deployment_.bs;
    std::vector<std::size_t> order(bs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const Point ue = deployment_.ue;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return geom::distance(bs[a], ue) < geom::distance(bs[b], ue);
    });
    for (std::size_t i : order) {
        if (index_.visible(bs[i])) {
            return std::pair{i, geom::distance(bs[i], ue)};
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> Scene::nearest_visible_reflector() const {
    const auto& objects = deployment_.objects;
    std::optional<std::size_t> best;
    double best_distance = kNoPath;
    for (std::size_t j = 0; j < objects.size(); ++j) {
        if (!objects[j].reflects()) {
            continue;
        }
        const double dist = geom::distance(objects[j].center, deployment_.ue);
        if (dist < best_distance && index_.visible(objects[j].center, j)) {
            best = j;
            best_distance = dist;
        }
    }
    return best;
}

bool Scene::leg_clear(Point from, Point to, std::size_t reflector) const {
    if (to == deployment_.ue) {
        return index_.visible(from, reflector);
    }
    return segment_clear(geom::Segment(from, to), segments_, reflector);
}

std::optional<double> Scene::reflected_path(std::size_t bs, std::size_t reflector) const {
    const Point source = deployment_.bs[bs];
    const Point ue = deployment_.ue;
    const auto q = geom::specular_point(source, ue, segments_[reflector]);
    if (!q) {
        return std::nullopt;
    }
    if (!leg_clear(*q, ue, reflector) || !leg_clear(source, *q, reflector)) {
        return std::nullopt;
    }
    return geom::distance(geom::mirror_point(source, segments_[reflector]), ue);
}

std::optional<ReflectedPath> Scene::shortest_via(std::size_t reflector) const {
    const auto& mirror = segments_[reflector];
    const Point ue = deployment_.ue;
    struct Candidate {
        double length;
        std::size_t bs;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < deployment_.bs.size(); ++i) {
        if (geom::specular_point(deployment_.bs[i], ue, mirror)) {
            candidates.push_back({geom::distance(geom::mirror_point(deployment_.bs[i], mirror), ue), i});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return a.length < b.length || (a.length == b.length && a.bs < b.bs);
    });
    for (const auto& c : candidates) {
        if (reflected_path(c.bs, reflector)) {
            return ReflectedPath{c.bs, reflector, c.length};
        }
    }
    return std::nullopt;
}

std::vector<ReflectedPath> Scene::enumerate_reflections(ReflectionMode mode) const {
    std::vector<std::size_t> reflectors;
    if (mode == ReflectionMode::NearestReflectorOnly) {
        if (auto j = nearest_visible_reflector()) reflectors.push_back(*j);
    } else {
        for (std::size_t j = 0; j < deployment_.objects.size(); ++j) {
            if (deployment_.objects[j].reflects()) reflectors.push_back(j);
        }
    }
    std::vector<ReflectedPath> paths;
    for (std::size_t j : reflectors) {
        for (std::size_t i = 0; i < deployment_.bs.size(); ++i) {
            if (auto len = reflected_path(i, j)) {
                paths.push_back({i, j, *len});
            }
        }
    }
    return paths;
}

std::optional<ReflectedPath> Scene::shortest_reflection(ReflectionMode mode) const {
    if (mode == ReflectionMode::NearestReflectorOnly) {
        const auto j = nearest_visible_reflector();
        return j ? shortest_via(*j) : std::nullopt;
    }
    // A path via j is at least as long as the distance from the user to j,
    // so reflectors are visited in that order and the search stops early.
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t j = 0; j < deployment_.objects.size(); ++j) {
        if (deployment_.objects[j].reflects()) {
            order.emplace_back(distance_to_segment(deployment_.ue, segments_[j]), j);
        }
    }
    std::sort(order.begin(), order.end());
    std::optional<ReflectedPath> best;
    for (const auto& [bound, j] : order) {
        if (best && bound >= best->length) {
            break;
        }
        if (auto p = shortest_via(j); p && (!best || p->length < best->length)) {
            best = p;
        }
    }
    return best;
}

bool is_visible(Point p, const Deployment& deployment) {
    std::vector<geom::Segment> segments;
    segments.reserve(deployment.objects.size());
    for (const auto& obj : deployment.objects) segments.push_back(obj.segment());
    if (p == deployment.ue) {
        return true;
    }
    return segment_clear(geom::Segment(deployment.ue, p), segments);
}

// ---------------------------------------------------------------------------

double choose_window(const NetworkParams& params, const SimOptions& options) {
    double h = window_for_min_bs(params, options.min_mean_bs);
    if (options.min_direct_multiple > 0.0) {
        if (auto mean = analytic::mean_direct_distance(params.lambda_bs, derive_beta(params))) {
            h = std::max(h, options.min_direct_multiple * *mean);
        }
    }
    if (options.min_reflected_multiple > 0.0 && params.lambda_reflector() > 0.0) {
        if (auto mean = analytic::DistanceModel(params).mean_reflected()) {
            h = std::max(h, options.min_reflected_multiple * *mean);
        }
    }
    return h;
}

Deployment sample_deployment(const NetworkParams& params, double halfwidth, Rng& rng) {
    Deployment d;
    d.window_halfwidth = halfwidth;
    d.bs = sample_ppp(params.lambda_bs, halfwidth, rng);
    d.objects = sample_objects(params, halfwidth, rng);
    return d;
}

TrialResult run_trial(const NetworkParams& params, double halfwidth, Rng& rng, const SimOptions& options) {
    const Deployment dep = sample_deployment(params, halfwidth, rng);
    const Scene scene(dep);
    const std::size_t n = dep.bs.size();

    std::vector<double> dist(n);
    std::vector<char> visible(n);
    TrialResult result;
    for (std::size_t i = 0; i < n; ++i) {
        dist[i] = geom::distance(dep.bs[i], dep.ue);
        visible[i] = scene.is_visible(dep.bs[i]) ? 1 : 0;
        if (visible[i] && dist[i] < result.r_d) {
            result.r_d = dist[i];
            result.serving_bs = i;
        }
    }

    const auto reflection = scene.shortest_reflection(options.mode);
    if (reflection) {
        result.r_r = reflection->length;
    }
    if (options.track_proxy_disagreement) {
        const auto other = scene.shortest_reflection(options.mode == ReflectionMode::NearestReflectorOnly
                                                         ? ReflectionMode::AllReflectors
                                                         : ReflectionMode::NearestReflectorOnly);
        const double other_length = other ? other->length : kNoPath;
        result.proxy_disagrees = other_length != result.r_r;
    }

    if (result.r_d < result.r_r) {
        result.association = Association::Direct;
    } else if (result.r_r < result.r_d) {
        result.association = Association::Reflected;
        result.serving_bs = reflection->bs;
        result.serving_reflector = reflection->reflector;
    } else {
        result.association = Association::None;
        result.serving_bs.reset();
    }

    // Fading: one draw per base station in index order, then the reflected path.
    std::vector<double> fading(n);
    for (auto& h : fading) h = exp_unit(rng);
    const double reflected_fading = exp_unit(rng);

    if (result.association == Association::None) {
        result.sinr = 0.0;
        return result;
    }

    const double alpha = params.alpha;
    double interference = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (visible[i] && !(result.association == Association::Direct && i == *result.serving_bs)) {
            interference += fading[i] * std::pow(dist[i], -alpha);
        }
    }
    double signal = 0.0;
    if (result.association == Association::Direct) {
        signal = fading[*result.serving_bs] * std::pow(result.r_d, -alpha);
        if (reflection) {
            interference += reflected_fading * std::pow(result.r_r, -alpha);
        }
    } else {
        signal = reflected_fading * std::pow(result.r_r, -alpha);
    }
    if (options.all_reflected_interference) {
        for (const auto& path : scene.enumerate_reflections(ReflectionMode::AllReflectors)) {
            const bool counted = reflection && path.bs == reflection->bs && path.reflector == reflection->reflector;
            const double h = exp_unit(rng);
            if (!counted) {
                interference += h * std::pow(path.length, -alpha);
            }
        }
    }
    const double denom = params.noise_ratio() + interference;
    result.sinr = denom > 0.0 ? signal / denom : kNoPath;
    return result;
}

// ---------------------------------------------------------------------------

void SimulationSummary::add(const TrialResult& trial, bool keep_samples) {
    ++n_trials;
    switch (trial.association) {
        case Association::Direct: ++n_direct; break;
        case Association::Reflected: ++n_reflected; break;
        case Association::None: ++n_none; break;
    }
    if (std::isfinite(trial.r_d)) {
        ++n_rd_finite;
        sum_rd += trial.r_d;
        sumsq_rd += trial.r_d * trial.r_d;
    }
    if (std::isfinite(trial.r_r)) {
        ++n_rr_finite;
        sum_rr += trial.r_r;
        sumsq_rr += trial.r_r * trial.r_r;
    }
    if (trial.proxy_disagrees) {
        ++n_proxy_disagree;
    }
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
        if (trial.sinr > thresholds[k]) ++covered[k];
    }
    if (keep_samples) {
        rd_samples.push_back(trial.r_d);
        rr_samples.push_back(trial.r_r);
        sinr_samples.push_back(trial.sinr);
    }
}

void SimulationSummary::merge(const SimulationSummary& o) {
    n_trials += o.n_trials;
    n_direct += o.n_direct;
    n_reflected += o.n_reflected;
    n_none += o.n_none;
    n_rd_finite += o.n_rd_finite;
    n_rr_finite += o.n_rr_finite;
    sum_rd += o.sum_rd;
    sumsq_rd += o.sumsq_rd;
    sum_rr += o.sum_rr;
    sumsq_rr += o.sumsq_rr;
    n_proxy_disagree += o.n_proxy_disagree;
    for (std::size_t k = 0; k < covered.size(); ++k) covered[k] += o.covered[k];
    rd_samples.insert(rd_samples.end(), o.rd_samples.begin(), o.rd_samples.end());
    rr_samples.insert(rr_samples.end(), o.rr_samples.begin(), o.rr_samples.end());
    sinr_samples.insert(sinr_samples.end(), o.sinr_samples.begin(), o.sinr_samples.end());
}

SimulationSummary simulate(const NetworkParams& params, std::span<const double> thresholds_linear,
                           std::size_t n_trials, std::uint64_t seed, const SimOptions& options) {
    params.validate();
    const double halfwidth = choose_window(params, options);

    SimulationSummary empty;
    empty.thresholds.assign(thresholds_linear.begin(), thresholds_linear.end());
    empty.covered.assign(empty.thresholds.size(), 0);

    const std::size_t n_blocks = (n_trials + kBlockSize - 1) / kBlockSize;
    std::vector<SimulationSummary> blocks(n_blocks, empty);
    std::atomic<std::size_t> next{0};

    const auto work = [&] {
        for (std::size_t b = next++; b < n_blocks; b = next++) {
            const std::size_t begin = b * kBlockSize;
            const std::size_t end = std::min(n_trials, begin + kBlockSize);
            for (std::size_t t = begin; t < end; ++t) {
                Rng rng = Rng::for_stream(seed, t);
                blocks[b].add(run_trial(params, halfwidth, rng, options), options.keep_samples);
            }
        }
    };

    unsigned workers = options.workers != 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n_blocks, 1)));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    SimulationSummary total = empty;
    for (const auto& b : blocks) total.merge(b);
    return total;
}

CoverageEstimate estimate_coverage(const NetworkParams& params, std::span<const double> thresholds_dB,
                                   std::size_t n_trials, std::uint64_t seed, const SimOptions& options) {
    std::vector<double> linear;
    linear.reserve(thresholds_dB.size());
    for (double db : thresholds_dB) linear.push_back(std::pow(10.0, db / 10.0));
    const auto summary = simulate(params, linear, n_trials, seed, options);

    CoverageEstimate out;
    out.thresholds_dB.assign(thresholds_dB.begin(), thresholds_dB.end());
    out.n_trials = summary.n_trials;
    for (std::size_t k = 0; k < linear.size(); ++k) {
        out.coverage.push_back(proportion_estimate(summary.covered[k], summary.n_trials));
    }
    return out;
}

DistanceEstimate summarize_distances(const SimulationSummary& s) {
    DistanceEstimate d;
    d.mean_rd = mean_estimate(s.sum_rd, s.sumsq_rd, s.n_rd_finite);
    d.mean_rr = mean_estimate(s.sum_rr, s.sumsq_rr, s.n_rr_finite);
    d.frac_no_direct = proportion_estimate(s.n_trials - s.n_rd_finite, s.n_trials);
    d.frac_no_reflect = proportion_estimate(s.n_trials - s.n_rr_finite, s.n_trials);
    return d;
}

DistanceEstimate estimate_mean_distances(const NetworkParams& params, std::size_t n_trials, std::uint64_t seed,
                                         const SimOptions& options) {
    return summarize_distances(simulate(params, {}, n_trials, seed, options));
}

AssociationEstimate summarize_association(const SimulationSummary& s) {
    return {proportion_estimate(s.n_direct, s.n_trials), proportion_estimate(s.n_reflected, s.n_trials)};
}

AssociationEstimate estimate_association(const NetworkParams& params, std::size_t n_trials, std::uint64_t seed,
                                         const SimOptions& options) {
    return summarize_association(simulate(params, {}, n_trials, seed, options));
}

}  // namespace mmrefl::sim
