#pragma once
/**
 * @file network.hpp
 * @brief Model parameters and samplers for the base-station and object
 *        Poisson processes.
 */

#include <cstdint>
#include <limits>
#include <vector>

#include "mmrefl/geom.hpp"

namespace mmrefl {

using geom::Point;

/// All densities are per square meter, lengths in meters, powers linear.
struct NetworkParams {
    double lambda_bs{1e-3};
    double lambda_obj{0.0};
    double delta{0.0};  ///< fraction of objects that reflect
    double L1{1.0};
    double L2{10.0};
    double alpha{4.0};
    double sigma2{0.0};  ///< noise power relative to p_tx
    double p_tx{1.0};
    double window_halfwidth{0.0};  ///< explicit simulation window; 0 = derive

    [[nodiscard]] double lambda_reflector() const { return delta * lambda_obj; }
    [[nodiscard]] double lambda_blocker() const { return lambda_obj - lambda_reflector(); }
    [[nodiscard]] double mean_length() const { return 0.5 * (L1 + L2); }
    /// Noise-to-transmit-power ratio used by the coverage expressions.
    [[nodiscard]] double noise_ratio() const { return sigma2 / p_tx; }

    /// @throws std::invalid_argument naming the first violated constraint.
    void validate() const;
};

/// Blocking rate per meter of link: 2 lambda_obj E[l] / pi.
double derive_beta(const NetworkParams& params);

enum class ObjectKind { Blocker, Reflector };

struct ObjectSegment {
    Point center;
    double length{0.0};
    double orientation{0.0};  ///< radians in [0, 2pi)
    ObjectKind kind{ObjectKind::Blocker};

    [[nodiscard]] geom::Segment segment() const;
    [[nodiscard]] bool reflects() const { return kind == ObjectKind::Reflector; }
};

/**
 * Counter-based generator: the n-th output is a fixed bijective mix of
 * (key, n). Streams keyed by (seed, trial) are independent of how trials
 * are scheduled across workers.
 */
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t key) : key_(mix(key)) {}

    static Rng for_stream(std::uint64_t seed, std::uint64_t stream);

    result_type operator()() { return mix(key_ + kGamma * ++counter_); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_{0};
};

/// Homogeneous PPP on the square [-h, h]^2 centred at the origin.
std::vector<Point> sample_ppp(double density, double halfwidth, Rng& rng);

/// Object centres from PPP(lambda_obj), independently marked as reflectors
/// with probability delta, length ~ U(L1, L2), orientation ~ U(0, 2pi).
std::vector<ObjectSegment> sample_objects(const NetworkParams& params, double halfwidth, Rng& rng);

/// Smallest half-width with lambda_bs (2h)^2 >= min_mean_bs, or the explicit
/// params.window_halfwidth if that is larger.
double window_for_min_bs(const NetworkParams& params, double min_mean_bs);

}  // namespace mmrefl
