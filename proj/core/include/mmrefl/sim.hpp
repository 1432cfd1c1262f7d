#pragma once
/**
 * @file sim.hpp
 * @brief Exact-geometry Monte Carlo engine.
 *
 * Each trial samples base stations and object segments on a square window
 * centred on the user, resolves line-of-sight and first-order specular paths
 * with segment tests, draws unit-mean exponential fading per path, and
 * records the resulting SINR.
 */

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "mmrefl/network.hpp"
#include "mmrefl/statistics.hpp"
#include "mmrefl/visibility.hpp"

namespace mmrefl::sim {

inline constexpr double kNoPath = std::numeric_limits<double>::infinity();

struct Deployment {
    std::vector<Point> bs;
    std::vector<ObjectSegment> objects;
    double window_halfwidth{0.0};
    Point ue{0.0, 0.0};
};

enum class ReflectionMode {
    NearestReflectorOnly,  ///< only the nearest reflector with a visible centre
    AllReflectors,
};

enum class Association { Direct, Reflected, None };

struct ReflectedPath {
    std::size_t bs{0};
    std::size_t reflector{0};  ///< index into Deployment::objects
    double length{kNoPath};
};

struct TrialResult {
    double r_d{kNoPath};
    double r_r{kNoPath};
    Association association{Association::None};
    std::optional<std::size_t> serving_bs;
    std::optional<std::size_t> serving_reflector;  ///< set when served by reflection
    double sinr{0.0};
    /// Set only when proxy tracking is on: the nearest-visible-centre choice
    /// gives a different shortest reflected path than the all-reflector search.
    bool proxy_disagrees{false};
};

struct SimOptions {
    ReflectionMode mode{ReflectionMode::NearestReflectorOnly};
    double min_mean_bs{100.0};
    double min_direct_multiple{4.0};     ///< window >= this many mean direct distances
    double min_reflected_multiple{3.0};  ///< window >= this many mean reflected distances
    bool all_reflected_interference{false};
    bool track_proxy_disagreement{false};
    bool keep_samples{false};
    unsigned workers{0};  ///< 0 = hardware concurrency
};

/// Deployment-level geometry queries. Holds a reference to the deployment.
class Scene {
public:
    explicit Scene(const Deployment& deployment);
    Scene(Deployment&&) = delete;  // the scene keeps a reference

    [[nodiscard]] const Deployment& deployment() const { return deployment_; }

    /// Line of sight from the user to p through every object.
    [[nodiscard]] bool is_visible(Point p) const;

    /// (index, distance) of the closest visible base station.
    [[nodiscard]] std::optional<std::pair<std::size_t, double>> nearest_visible_bs() const;

    /// Reflector whose centre is visible and closest to the user.
    [[nodiscard]] std::optional<std::size_t> nearest_visible_reflector() const;

    /// Every admissible (bs, reflector) first-order path: the specular point
    /// is interior to the reflector and neither leg crosses any other object.
    [[nodiscard]] std::vector<ReflectedPath> enumerate_reflections(ReflectionMode mode) const;

    /// Shortest admissible path in `mode` (same result as the minimum over
    /// enumerate_reflections, found by testing candidates in length order).
    [[nodiscard]] std::optional<ReflectedPath> shortest_reflection(ReflectionMode mode) const;

    /// Admissibility of one (bs, reflector) pair; returns the path length.
    [[nodiscard]] std::optional<double> reflected_path(std::size_t bs, std::size_t reflector) const;

private:
    [[nodiscard]] std::optional<ReflectedPath> shortest_via(std::size_t reflector) const;
    [[nodiscard]] bool leg_clear(Point from, Point to, std::size_t reflector) const;

    const Deployment& deployment_;
    std::vector<geom::Segment> segments_;
    VisibilityIndex index_;
};

/// Brute-force line-of-sight test.
bool is_visible(Point p, const Deployment& deployment);

/// Window half-width: window_for_min_bs, raised to min_direct_multiple times
/// the analytic mean direct distance and min_reflected_multiple times the
/// analytic mean reflected distance.
double choose_window(const NetworkParams& params, const SimOptions& options);

Deployment sample_deployment(const NetworkParams& params, double halfwidth, Rng& rng);

/// One trial. Fading draws come after the deployment draws from the same rng.
TrialResult run_trial(const NetworkParams& params, double halfwidth, Rng& rng, const SimOptions& options);

/// Order-independent accumulator of per-trial results.
struct SimulationSummary {
    std::size_t n_trials{0};
    std::size_t n_direct{0};
    std::size_t n_reflected{0};
    std::size_t n_none{0};
    std::size_t n_rd_finite{0};
    std::size_t n_rr_finite{0};
    double sum_rd{0.0};
    double sumsq_rd{0.0};
    double sum_rr{0.0};
    double sumsq_rr{0.0};
    std::size_t n_proxy_disagree{0};
    std::vector<double> thresholds;  ///< linear
    std::vector<std::size_t> covered;
    std::vector<double> rd_samples;  ///< kNoPath for trials without a direct path
    std::vector<double> rr_samples;
    std::vector<double> sinr_samples;

    void add(const TrialResult& trial, bool keep_samples);
    void merge(const SimulationSummary& other);
};

/**
 * Runs trials [0, n_trials) with streams keyed by (seed, trial). Trials are
 * grouped in fixed-size blocks whose partial sums are merged in block order,
 * so the result is bitwise identical for any worker count.
 */
SimulationSummary simulate(const NetworkParams& params, std::span<const double> thresholds_linear,
                           std::size_t n_trials, std::uint64_t seed, const SimOptions& options = {});

struct CoverageEstimate {
    std::vector<double> thresholds_dB;
    std::vector<Estimate> coverage;
    std::size_t n_trials{0};
};

CoverageEstimate estimate_coverage(const NetworkParams& params, std::span<const double> thresholds_dB,
                                   std::size_t n_trials, std::uint64_t seed, const SimOptions& options = {});

struct DistanceEstimate {
    Estimate mean_rd;
    Estimate mean_rr;
    Estimate frac_no_direct;
    Estimate frac_no_reflect;
};

DistanceEstimate summarize_distances(const SimulationSummary& summary);
DistanceEstimate estimate_mean_distances(const NetworkParams& params, std::size_t n_trials, std::uint64_t seed,
                                         const SimOptions& options = {});

struct AssociationEstimate {
    Estimate p_d;
    Estimate p_r;
};

AssociationEstimate summarize_association(const SimulationSummary& summary);
AssociationEstimate estimate_association(const NetworkParams& params, std::size_t n_trials, std::uint64_t seed,
                                         const SimOptions& options = {});

}  // namespace mmrefl::sim
