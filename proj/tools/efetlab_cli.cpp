// efetlab: experiments on entire functions of exponential type.
//
// Usage: efetlab <experiment> --config PATH [--out PREFIX] [--precision BITS]
//                [--seed N]
// Exit codes: 0 success, 2 numeric convergence failure, 3 invalid config,
// 4 I/O failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "efetlab/experiments.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw efet::IOError("cannot read config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) throw efet::IOError("read failed for " + path);
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for entire functions of exponential type"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_prefix;
    long long precision = -1;
    long long seed = -1;

    const char* tags[] = {"dichotomy-scan", "sqrt-example", "interp-verify",
                          "hadamard-profile", "subharmonic", "combi", "count", "locate"};
    for (const char* tag : tags) {
        CLI::App* sub = app.add_subcommand(tag);
        sub->add_option("--config", config_path, "JSON experiment config")->required();
        sub->add_option("--out", out_prefix, "output path prefix");
        sub->add_option("--precision", precision, "working precision in bits");
        sub->add_option("--seed", seed, "seed override");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        efet::ExperimentConfig cfg = efet::parse_config(read_file(config_path));
        efet::set_experiment(cfg, app.get_subcommands().front()->get_name());
        if (precision >= 0) {
            if (precision < 64) throw efet::ConfigError("--precision must be >= 64");
            efet::override_precision(cfg, static_cast<unsigned>(precision));
        }
        if (seed >= 0) efet::override_seed(cfg, static_cast<std::uint64_t>(seed));

        efet::Report report = efet::run(cfg);

        std::string prefix = out_prefix;
        if (prefix.empty()) prefix = cfg.output;
        if (!prefix.empty()) efet::emit_plotdata(report, prefix);

        std::cout << report.summary.dump(2) << "\n";
        if (!report.converged) {
            std::cerr << "warning: some entries failed to converge; partial results "
                         "carry a 'failed' column\n";
            return 2;
        }
        return 0;
    } catch (const efet::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const efet::DomainError& e) {
        // parameters outside the mathematical domain are a config problem
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const efet::WitnessNotFoundError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const efet::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const efet::PrecisionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const efet::IOError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
