#pragma once
/**
 * @file config.hpp
 * @brief JSON experiment configuration with strict field checking.
 */

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mmrefl/network.hpp"
#include "mmrefl/sim.hpp"

namespace mmrefl {

enum class Engine { Analytic, Sim, Both };

/// Raised for malformed or out-of-range configuration; the message starts
/// with the offending field name.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Sweep {
    std::string parameter;  ///< a NetworkParams field name
    std::vector<double> values;
};

struct ExperimentConfig {
    NetworkParams params;
    std::vector<double> thresholds_dB{-5, -2, 1, 4, 7, 10, 13, 16, 19};
    std::size_t n_trials{10000};
    std::uint64_t seed{1};
    Engine engine{Engine::Both};
    sim::ReflectionMode mode{sim::ReflectionMode::NearestReflectorOnly};
    double min_mean_bs{100.0};
    std::optional<Sweep> sweep;
    std::string output_path;  ///< empty = stdout

    /// @throws ConfigError naming the first violated constraint.
    void validate() const;
};

ExperimentConfig parse_config_text(std::string_view json_text);
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Names accepted by Sweep::parameter.
const std::vector<std::string>& sweepable_parameters();

/// Sets the named NetworkParams field. @throws ConfigError for unknown names.
void set_parameter(NetworkParams& params, std::string_view name, double value);

std::optional<Engine> parse_engine(std::string_view text);
std::optional<sim::ReflectionMode> parse_mode(std::string_view text);
std::string to_string(Engine engine);
std::string to_string(sim::ReflectionMode mode);

}  // namespace mmrefl
