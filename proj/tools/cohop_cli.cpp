// Copyright 2026 The cohop Authors
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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cohop/cohop.hpp"
#include "json.hpp"

namespace {

template <typename T>
void merge(CLI::App &app, const nlohmann::json &config, const std::string &key, std::optional<T> &target) {
    if (config.contains(key) && app.get_option("--" + key)->count() == 0) {
        target = config.at(key).get<T>();
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Numerical checks for displacement and su(1,1) coherent-state operators"};
    app.set_version_flag("--version", "cohop 0.1.0");

    std::string suite;
    std::string out_path;
    std::string format = "json";
    std::string config_path;
    bool limit_study = false;
    std::vector<int> sweep;
    cohop::SuiteOptions opts;
    std::optional<int> jobs;

    std::string suite_help = "suite to run:";
    for (const auto &name : cohop::suite_names()) {
        suite_help += " " + name;
    }
    app.add_option("--suite", suite, suite_help);
    app.add_option("--two-k", opts.two_k, "Bargmann index times two (2K)");
    app.add_option("--z-re", opts.z_re, "real part of the group parameter z");
    app.add_option("--z-im", opts.z_im, "imaginary part of z");
    app.add_option("--chi", opts.chi, "|chi| for the conjecture suite");
    app.add_option("--cutoff", opts.cutoff, "Fock cutoff (per-mode cutoff for paris)")->check(CLI::PositiveNumber);
    app.add_option("--safe-sector", opts.safe_sector, "safe-sector rank (q_max for paris)")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", opts.tol, "override the suite tolerance")->check(CLI::PositiveNumber);
    app.add_option("--radius", opts.radius, "plane quadrature radius")->check(CLI::PositiveNumber);
    app.add_option("--radial-nodes", opts.radial_nodes, "radial quadrature nodes")->check(CLI::PositiveNumber);
    app.add_option("--angular-nodes", opts.angular_nodes, "angular quadrature nodes")->check(CLI::PositiveNumber);
    app.add_option("--s-max", opts.s_max, "hyperbolic radius of the disk quadrature")->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--config", config_path, "JSON file with option values; flags take precedence");
    app.add_flag("--limit-study", limit_study, "conjecture integral as 2K approaches 1");
    app.add_option("--sweep-cutoffs", sweep, "run the suite once per listed cutoff")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!config_path.empty()) {
        nlohmann::json config;
        try {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "cannot read config file " << config_path << "\n";
                return 2;
            }
            config = nlohmann::json::parse(in);
            if (config.contains("suite") && app.get_option("--suite")->count() == 0) {
                suite = config.at("suite").get<std::string>();
            }
            if (config.contains("format") && app.get_option("--format")->count() == 0) {
                format = config.at("format").get<std::string>();
            }
            if (config.contains("out") && app.get_option("--out")->count() == 0) {
                out_path = config.at("out").get<std::string>();
            }
            merge(app, config, "two-k", opts.two_k);
            merge(app, config, "z-re", opts.z_re);
            merge(app, config, "z-im", opts.z_im);
            merge(app, config, "chi", opts.chi);
            merge(app, config, "cutoff", opts.cutoff);
            merge(app, config, "safe-sector", opts.safe_sector);
            merge(app, config, "tol", opts.tol);
            merge(app, config, "radius", opts.radius);
            merge(app, config, "radial-nodes", opts.radial_nodes);
            merge(app, config, "angular-nodes", opts.angular_nodes);
            merge(app, config, "s-max", opts.s_max);
            merge(app, config, "jobs", jobs);
        } catch (const nlohmann::json::exception &e) {
            std::cerr << "bad config file: " << e.what() << "\n";
            return 2;
        }
        if (format != "json" && format != "csv") {
            std::cerr << "format must be json or csv\n";
            return 2;
        }
    }
    opts.jobs = jobs.value_or(1);

    if (!limit_study && suite.empty()) {
        std::cerr << "one of --suite or --limit-study is required\n" << app.help();
        return 2;
    }
    if (!suite.empty() && !cohop::is_suite(suite)) {
        std::cerr << "unknown suite '" << suite << "'\n";
        return 2;
    }

    std::vector<cohop::CheckReport> reports;
    try {
        if (limit_study) {
            reports = cohop::run_limit_study(opts);
        }
        if (!suite.empty()) {
            if (sweep.empty()) {
                auto more = cohop::run_suite(suite, opts);
                reports.insert(reports.end(), more.begin(), more.end());
            }
            for (int c : sweep) {
                cohop::SuiteOptions o = opts;
                o.cutoff = c;
                auto more = cohop::run_suite(suite, o);
                reports.insert(reports.end(), more.begin(), more.end());
            }
        }
    } catch (const cohop::Error &e) {
        std::cerr << cohop::to_string(e.kind()) << ": " << e.what() << "\n";
        return 2;
    }

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "cannot write " << out_path << "\n";
            return 2;
        }
    }
    std::ostream &out = out_path.empty() ? std::cout : file;
    if (format == "csv") {
        cohop::write_csv(out, reports);
    } else {
        cohop::write_ndjson(out, reports);
    }
    return cohop::all_pass(reports) ? 0 : 1;
}
