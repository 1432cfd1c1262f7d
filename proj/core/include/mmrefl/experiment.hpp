#pragma once
/**
 * @file experiment.hpp
 * @brief Runs configured experiments and renders their CSV output.
 *
 * Every CSV starts with '#' comment lines recording the model assumptions
 * (object length law, reflection mode, seed), followed by one header row.
 * Numbers are written with std::to_chars, so output does not depend on the
 * process locale, and lines end in '\n' only.
 */

#include <string>
#include <vector>

#include "mmrefl/config.hpp"

namespace mmrefl {

enum class Command { Coverage, Distances, Association, Validate };

struct ValidationCheck {
    std::string name;
    double value{0.0};
    double tolerance{0.0};
    bool informational{false};  ///< reported but never fails the run
    bool passed{true};
};

struct ExperimentOutput {
    std::string csv;
    std::vector<ValidationCheck> checks;  ///< filled by Command::Validate

    [[nodiscard]] bool ok() const;
};

/// Dispatches on `command`; with a sweep configured this is run_sweep.
ExperimentOutput run_experiment(const ExperimentConfig& config, Command command);

ExperimentOutput run_coverage(const ExperimentConfig& config);
ExperimentOutput run_distances(const ExperimentConfig& config);
ExperimentOutput run_association(const ExperimentConfig& config);

/**
 * Runs both engines and checks: KS distance between the simulated direct
 * distance and its analytic law below 0.02, and analytic coverage inside the
 * simulated 95% interval at no fewer than 8/9 of the thresholds. Analytic
 * minus simulated deltas for mean distances and association are reported as
 * informational rows.
 */
ExperimentOutput run_validate(const ExperimentConfig& config);

/// One CSV with the sweep value as first column, rows in sweep order.
ExperimentOutput run_sweep(const ExperimentConfig& config, Command command);

/// Shortest round-trip decimal rendering; "nan" / "inf" for non-finite values.
std::string format_number(double value);

}  // namespace mmrefl
