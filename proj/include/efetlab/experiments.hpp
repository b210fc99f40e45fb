#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "efetlab/sequence.hpp"

namespace efet {

// Validated experiment description. Build through parse_config; the echo
// member always carries the full effective configuration, defaults included.
struct ExperimentConfig {
    std::string experiment;
    CoefficientSequence sequence = CoefficientSequence::constant(Complex(1.0), Complex(1.0));
    std::vector<Real> radii;
    std::vector<unsigned> h_list;
    unsigned precision_bits = 128;
    unsigned grid_density = 100;
    std::uint64_t seed = 0;
    std::string output;
    nlohmann::json extra = nlohmann::json::object();
    nlohmann::json echo = nlohmann::json::object();
};

// Parses and validates a JSON config. The "experiment" field may be omitted
// when the tag is supplied externally (CLI subcommand). Throws ConfigError.
ExperimentConfig parse_config(const std::string& text);

// Applies CLI overrides and re-echoes.
void override_precision(ExperimentConfig& cfg, unsigned bits);
void override_seed(ExperimentConfig& cfg, std::uint64_t seed);
void set_experiment(ExperimentConfig& cfg, const std::string& tag);

struct Table {
    std::string name;
    std::string csv;
};

struct Report {
    nlohmann::json config_echo;
    std::vector<Table> tables;
    nlohmann::json summary;
    double runtime_seconds = 0;
    // false when some entries failed to converge; partial tables carry a
    // "failed" column and the process exits 2
    bool converged = true;
};

// Dispatches on cfg.experiment. Deterministic for fixed config and seed.
Report run(const ExperimentConfig& cfg);

// Writes <prefix><table>.csv per table, <prefix><experiment>.json with the
// summary and config echo, and <prefix>manifest.json mapping tables to
// suggested plot axes. Throws IOError on unwritable paths.
void emit_plotdata(const Report& report, const std::string& prefix);

// EFETLAB_THREADS cap (0 or unset = hardware concurrency).
unsigned thread_cap();

}  // namespace efet
