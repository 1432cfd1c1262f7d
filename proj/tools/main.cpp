// mmrefl: coverage, path-length and association experiments for mmWave
// networks with blocking and reflecting objects.
//
// Exit status: 0 on success, 1 when `validate` finds a violated tolerance,
// 2 on usage, configuration or I/O errors.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mmrefl/config.hpp"
#include "mmrefl/experiment.hpp"
#include "mmrefl/quadrature.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<std::string> engine;
    std::optional<std::string> mode;
    std::optional<std::string> sweep;
    std::optional<std::string> out;
};

std::optional<std::uint64_t> env_count(const char* name) {
    const char* text = std::getenv(name);
    if (text == nullptr || *text == '\0') {
        return std::nullopt;
    }
    std::uint64_t value = 0;
    const std::string s(text);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw mmrefl::ConfigError(std::string(name) + ": must be a non-negative integer");
    }
    return value;
}

// "--sweep delta=0.2,0.5,0.8"
mmrefl::Sweep parse_sweep_flag(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw mmrefl::ConfigError("--sweep: expected NAME=V1,V2,...");
    }
    mmrefl::Sweep sweep{text.substr(0, eq), {}};
    std::stringstream list(text.substr(eq + 1));
    std::string item;
    while (std::getline(list, item, ',')) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
            throw mmrefl::ConfigError("--sweep: \"" + item + "\" is not a number");
        }
        sweep.values.push_back(v);
    }
    return sweep;
}

mmrefl::ExperimentConfig resolve(const Overrides& o) {
    auto cfg = mmrefl::parse_config(o.config_path);

    if (o.seed) {
        cfg.seed = *o.seed;
    } else if (auto s = env_count("MMREFL_SEED")) {
        cfg.seed = *s;
    }
    if (o.trials) {
        cfg.n_trials = *o.trials;
    } else if (auto t = env_count("MMREFL_TRIALS")) {
        cfg.n_trials = *t;
    }
    if (o.engine) cfg.engine = *mmrefl::parse_engine(*o.engine);
    if (o.mode) cfg.mode = *mmrefl::parse_mode(*o.mode);
    if (o.sweep) cfg.sweep = parse_sweep_flag(*o.sweep);
    if (o.out) cfg.output_path = *o.out;

    cfg.validate();
    return cfg;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::ios_base::failure("cannot open output file " + path);
    }
    out << text;
    out.close();
    if (!out) {
        throw std::ios_base::failure("failed writing output file " + path);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mmWave coverage with blocking and reflecting objects"};
    app.require_subcommand(1);

    Overrides overrides;
    const struct {
        const char* name;
        const char* help;
        mmrefl::Command command;
    } commands[] = {
        {"coverage", "Coverage probability over the threshold grid", mmrefl::Command::Coverage},
        {"distances", "Mean direct and reflected path lengths", mmrefl::Command::Distances},
        {"association", "Probability of serving over the direct or reflected path", mmrefl::Command::Association},
        {"validate", "Compare the analytic model against simulation", mmrefl::Command::Validate},
    };

    std::optional<mmrefl::Command> selected;
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--config", overrides.config_path, "JSON experiment file")->required();
        sub->add_option("--seed", overrides.seed, "Base seed (env MMREFL_SEED)");
        sub->add_option("--trials", overrides.trials, "Monte Carlo trials (env MMREFL_TRIALS)");
        sub->add_option("--engine", overrides.engine, "analytic, sim or both")
            ->check(CLI::IsMember({"analytic", "sim", "both"}));
        sub->add_option("--mode", overrides.mode, "Reflection search: nearest or all")
            ->check(CLI::IsMember({"nearest", "all"}));
        sub->add_option("--sweep", overrides.sweep, "Sweep one parameter, NAME=V1,V2,...");
        sub->add_option("--out", overrides.out, "Output CSV path (default stdout)");
        const auto command = c.command;
        sub->callback([&selected, command] { selected = command; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return e.get_exit_code() == 0 ? code : kExitUsage;
    }

    mmrefl::ExperimentConfig cfg;
    try {
        cfg = resolve(overrides);
    } catch (const std::exception& e) {
        std::cerr << "mmrefl: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        const auto result = mmrefl::run_experiment(cfg, *selected);
        write_output(cfg.output_path, result.csv);
        for (const auto& check : result.checks) {
            if (!check.informational && !check.passed) {
                std::cerr << "FAIL " << check.name << ": " << mmrefl::format_number(check.value)
                          << " (tolerance " << mmrefl::format_number(check.tolerance) << ")\n";
            }
        }
        return result.ok() ? kExitOk : kExitValidation;
    } catch (const mmrefl::QuadratureError& e) {
        std::cerr << "mmrefl: quadrature did not converge: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "mmrefl: " << e.what() << '\n';
        return kExitUsage;
    }
}
