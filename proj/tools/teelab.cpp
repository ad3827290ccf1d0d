// Copyright 2026 The teelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// teelab: run a scenario, write a JSON report, exit 0 iff every check passed.
//
//   teelab stabilizer --p 3 --widths 2 --all-sectors
//   teelab audit --trace data/traces/adversarial_decreasing.json
//   teelab sweep --config data/configs/sweep_stabilizer.json --csv out.csv

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>

#include "teelab/cli.hpp"

namespace {

using nlohmann::json;

/// Collects optional flags; only flags given on the command line override
/// the config file.
class Overrides {
   public:
    template <typename T>
    void option(CLI::App *sub, const std::string &flag, const std::string &key, const std::string &help) {
        auto value = std::make_shared<std::optional<T>>();
        auto *opt = sub->add_option(flag, *value, help);
        if constexpr (!std::is_same_v<T, std::string> && requires { typename T::value_type; }) opt->delimiter(',');
        apply_.push_back([value, key](json &params) {
            if (*value) params[key] = **value;
        });
    }
    void flag(CLI::App *sub, const std::string &flag, const std::string &key, const std::string &help) {
        auto value = std::make_shared<bool>(false);
        sub->add_flag(flag, *value, help);
        apply_.push_back([value, key](json &params) {
            if (*value) params[key] = true;
        });
    }
    void apply(json &params) const {
        for (const auto &f : apply_) f(params);
    }

   private:
    std::vector<std::function<void(json &)>> apply_;
};

struct Common {
    std::string config;
    std::optional<std::string> output;
    std::optional<std::string> units;
    bool timings = false;
    Overrides overrides;
};

CLI::App *scenario(CLI::App &app, const std::string &name, const std::string &help, Common &common) {
    CLI::App *sub = app.add_subcommand(name, help);
    sub->add_option("--config", common.config, "JSON config file; flags override its fields");
    sub->add_option("--output,-o", common.output, "report path (default: stdout)");
    sub->add_option("--units", common.units, "nats or bits")->check(CLI::IsMember({"nats", "bits"}));
    sub->add_flag("--timings", common.timings, "include wall-clock timings in the report");
    return sub;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"teelab: topological entanglement entropy lower bounds"};
    app.require_subcommand(1);
    app.set_version_flag("--version", teelab::cli::kVersion);

    std::map<std::string, Common> commons;
    const auto make = [&](const std::string &name, const std::string &help) {
        return std::pair{scenario(app, name, help, commons[name]), &commons[name].overrides};
    };

    {
        auto [sub, o] = make("fusion", "quantum dimensions, fixed point and bound constant of a category");
        o->option<std::string>(sub, "--category", "category", "built-in name or JSON path");
        o->option<double>(sub, "--n", "n", "number of thinnings for the displayed bound");
    }
    {
        auto [sub, o] = make("ring", "abelian Z_q ring model");
        o->option<int>(sub, "--q", "q", "group order");
        o->option<int>(sub, "--sites-a", "sites_A", "columns in A");
        o->option<int>(sub, "--sites-b1", "sites_B1", "columns in B1");
        o->option<int>(sub, "--sites-c", "sites_C", "columns in C");
        o->option<int>(sub, "--sites-b2", "sites_B2", "columns in B2");
        o->option<int>(sub, "--a-depth", "a_depth", "radial layers per A column");
        o->option<int>(sub, "--n", "n", "build and audit a nested table with n thinnings");
        o->option<bool>(sub, "--enumerate", "enumerate", "confirm by exhaustive enumeration");
        o->option<std::string>(sub, "--trace-out", "trace_out", "write the nested table here");
    }
    {
        auto [sub, o] = make("stabilizer", "Z_p toric code on a planar lattice");
        o->option<int>(sub, "--p", "p", "prime qudit dimension");
        o->option<int>(sub, "--size", "size", "lattice side in plaquettes");
        o->option<int>(sub, "--width", "width", "lattice width in plaquettes");
        o->option<int>(sub, "--height", "height", "lattice height in plaquettes");
        o->option<int>(sub, "--widths", "widths", "width of every annulus slab");
        o->option<int>(sub, "--width-a", "width_a", "width of A");
        o->option<int>(sub, "--width-b", "width_b", "width of B1 and B2");
        o->option<int>(sub, "--width-c", "width_c", "width of C");
        o->option<int>(sub, "--ell", "ell", "locality length");
        o->option<std::string>(sub, "--sector", "sector", "sector as 'e,m' or an index");
        o->flag(sub, "--all-sectors", "all_sectors", "every sector");
        o->option<bool>(sub, "--verify", "verify", "check the three structural assumptions");
        o->option<int>(sub, "--n", "n", "build and audit a nested table with n thinnings");
        o->option<std::string>(sub, "--trace-out", "trace_out", "write the nested table here");
    }
    {
        auto [sub, o] = make("audit", "replay the lemma chain on a nested-annulus table");
        o->option<std::string>(sub, "--trace", "trace", "trace JSON file");
        o->option<double>(sub, "--eps", "eps", "override epsilon");
        o->option<double>(sub, "--alpha", "alpha", "override alpha");
        o->option<std::string>(sub, "--b", "b", "label b used in the chain");
    }
    {
        auto [sub, o] = make("sweep", "parameter sweep with CSV output (TEELAB_THREADS workers)");
        o->option<std::string>(sub, "--target", "target", "stabilizer, ring or audit");
        o->option<std::vector<int>>(sub, "--p", "p", "primes");
        o->option<std::vector<int>>(sub, "--widths", "widths", "annulus widths");
        o->option<std::vector<int>>(sub, "--q", "q", "ring group orders");
        o->option<int>(sub, "--n-min", "n_min", "smallest n");
        o->option<int>(sub, "--n-max", "n_max", "largest n");
        o->option<std::string>(sub, "--category", "category", "category for the audit target");
        o->option<std::string>(sub, "--csv", "csv", "CSV path");
    }
    make("selftest", "quick internal consistency run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const CLI::App *chosen = app.get_subcommands().front();
    const std::string kind = chosen->get_name();
    Common &common = commons[kind];
    try {
        teelab::cli::ScenarioConfig cfg;
        cfg.kind = kind;
        if (!common.config.empty()) cfg = teelab::cli::load_config(common.config, cfg);
        common.overrides.apply(cfg.params);
        if (common.output) cfg.output = *common.output;
        if (common.units) cfg.units = *common.units;
        cfg.timings = cfg.timings || common.timings;

        const teelab::cli::RunReport report = teelab::cli::run(cfg);
        const std::string text = report.report.dump(2) + "\n";
        if (cfg.output.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(cfg.output);
            if (!out) throw teelab::ConfigError("cannot write " + cfg.output);
            out << text;
        }
        for (const auto &c : report.checks)
            if (!c.pass) std::cerr << "FAILED " << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
        return report.exit_code();
    } catch (const teelab::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const teelab::MalformedInput &e) {
        std::cerr << "config error (" << e.kind() << "): " << e.what() << "\n";
        return 2;
    } catch (const teelab::Error &e) {
        std::cerr << "error " << e.kind() << ": " << e.what() << "\n";
        return 1;
    }
}
