#include "mmrefl/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mmrefl {

namespace {

using nlohmann::json;

struct ParamField {
    const char* name;
    double NetworkParams::*member;
};

constexpr ParamField kParamFields[] = {
    {"lambda_bs", &NetworkParams::lambda_bs}, {"lambda_obj", &NetworkParams::lambda_obj},
    {"delta", &NetworkParams::delta},         {"L1", &NetworkParams::L1},
    {"L2", &NetworkParams::L2},               {"alpha", &NetworkParams::alpha},
    {"sigma2", &NetworkParams::sigma2},       {"p_tx", &NetworkParams::p_tx},
    {"window_halfwidth", &NetworkParams::window_halfwidth},
};

constexpr const char* kRequired[] = {"lambda_bs", "lambda_obj", "delta", "L1", "L2"};

[[noreturn]] void fail(const std::string& field, const std::string& message) {
    throw ConfigError(field + ": " + message);
}

double get_number(const json& value, const std::string& field) {
    if (!value.is_number()) {
        fail(field, "must be a number");
    }
    return value.get<double>();
}

std::uint64_t get_count(const json& value, const std::string& field) {
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
        fail(field, "must be a non-negative integer");
    }
    return value.get<std::uint64_t>();
}

std::string get_string(const json& value, const std::string& field) {
    if (!value.is_string()) {
        fail(field, "must be a string");
    }
    return value.get<std::string>();
}

std::vector<double> get_numbers(const json& value, const std::string& field) {
    if (!value.is_array()) {
        fail(field, "must be an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        out.push_back(get_number(value[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Sweep parse_sweep(const json& value) {
    if (!value.is_object()) {
        fail("sweep", "must be an object with \"parameter\" and \"values\"");
    }
    Sweep sweep;
    bool have_parameter = false;
    bool have_values = false;
    for (const auto& [key, item] : value.items()) {
        if (key == "parameter") {
            sweep.parameter = get_string(item, "sweep.parameter");
            have_parameter = true;
        } else if (key == "values") {
            sweep.values = get_numbers(item, "sweep.values");
            have_values = true;
        } else {
            fail("sweep." + key, "unknown field");
        }
    }
    if (!have_parameter) fail("sweep.parameter", "missing required field");
    if (!have_values) fail("sweep.values", "missing required field");
    return sweep;
}

}  // namespace

const std::vector<std::string>& sweepable_parameters() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& f : kParamFields) out.emplace_back(f.name);
        return out;
    }();
    return names;
}

void set_parameter(NetworkParams& params, std::string_view name, double value) {
    for (const auto& f : kParamFields) {
        if (name == f.name) {
            params.*f.member = value;
            return;
        }
    }
    throw ConfigError(std::string(name) + ": not a network parameter");
}

std::optional<Engine> parse_engine(std::string_view text) {
    if (text == "analytic") return Engine::Analytic;
    if (text == "sim") return Engine::Sim;
    if (text == "both") return Engine::Both;
    return std::nullopt;
}

std::optional<sim::ReflectionMode> parse_mode(std::string_view text) {
    if (text == "nearest") return sim::ReflectionMode::NearestReflectorOnly;
    if (text == "all") return sim::ReflectionMode::AllReflectors;
    return std::nullopt;
}

std::string to_string(Engine engine) {
    switch (engine) {
        case Engine::Analytic: return "analytic";
        case Engine::Sim: return "sim";
        case Engine::Both: return "both";
    }
    return "both";
}

std::string to_string(sim::ReflectionMode mode) {
    return mode == sim::ReflectionMode::AllReflectors ? "all" : "nearest";
}

void ExperimentConfig::validate() const {
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (thresholds_dB.empty()) {
        fail("thresholds_dB", "at least one threshold required");
    }
    for (std::size_t i = 0; i < thresholds_dB.size(); ++i) {
        if (!std::isfinite(thresholds_dB[i])) {
            fail("thresholds_dB", "thresholds must be finite");
        }
        if (i > 0 && !(thresholds_dB[i] > thresholds_dB[i - 1])) {
            fail("thresholds_dB", "thresholds must be strictly increasing");
        }
    }
    if (engine != Engine::Analytic && n_trials < 100) {
        fail("n_trials", "n_trials >= 100 required");
    }
    if (!(min_mean_bs >= 1.0)) {
        fail("min_mean_bs", "min_mean_bs >= 1 required");
    }
    if (sweep) {
        const auto& names = sweepable_parameters();
        if (std::find(names.begin(), names.end(), sweep->parameter) == names.end()) {
            fail("sweep.parameter", "unknown network parameter \"" + sweep->parameter + "\"");
        }
        if (sweep->values.empty()) {
            fail("sweep.values", "at least one value required");
        }
        for (double v : sweep->values) {
            NetworkParams p = params;
            set_parameter(p, sweep->parameter, v);
            try {
                p.validate();
            } catch (const std::invalid_argument& e) {
                fail("sweep.values", std::string("value invalid: ") + e.what());
            }
        }
    }
}

ExperimentConfig parse_config_text(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("config: top level must be an object");
    }

    for (const char* name : kRequired) {
        if (!root.contains(name)) {
            fail(name, "missing required field");
        }
    }

    ExperimentConfig cfg;
    for (const auto& [key, value] : root.items()) {
        const auto field = std::find_if(std::begin(kParamFields), std::end(kParamFields),
                                        [&](const ParamField& f) { return key == f.name; });
        if (field != std::end(kParamFields)) {
            cfg.params.*field->member = get_number(value, key);
        } else if (key == "thresholds_dB") {
            cfg.thresholds_dB = get_numbers(value, key);
        } else if (key == "n_trials") {
            cfg.n_trials = get_count(value, key);
        } else if (key == "seed") {
            cfg.seed = get_count(value, key);
        } else if (key == "engine") {
            const auto engine = parse_engine(get_string(value, key));
            if (!engine) fail(key, "must be one of analytic, sim, both");
            cfg.engine = *engine;
        } else if (key == "mode") {
            const auto mode = parse_mode(get_string(value, key));
            if (!mode) fail(key, "must be one of nearest, all");
            cfg.mode = *mode;
        } else if (key == "min_mean_bs") {
            cfg.min_mean_bs = get_number(value, key);
        } else if (key == "sweep") {
            cfg.sweep = parse_sweep(value);
        } else if (key == "output_path") {
            cfg.output_path = get_string(value, key);
        } else {
            fail(key, "unknown field");
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::ios_base::failure("cannot open config file " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

}  // namespace mmrefl
