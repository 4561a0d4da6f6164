// Copyright 2026 The wsnsec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line experiment runner.
//
//   wsnsec sop|schedule|conditional [flags]
//   wsnsec figure fig2|fig3|fig4|fig5 [flags]
//   wsnsec validate [flags]
//
// Exit codes: 0 success, 2 parameter error, 3 numeric failure, 4 I/O error.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsnsec/wsnsec.hpp"

namespace {

constexpr int kExitParam = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

std::vector<double> parse_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) throw wsnsec::domain_error(std::string(flag) + ": not a number: " + item);
        out.push_back(v);
    }
    return out;
}

wsnsec::Sweep parse_sweep(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4) throw wsnsec::domain_error("--sweep expects PARAM:START:STOP:STEP");
    const auto num = [&](const std::string& s) {
        const auto v = parse_list(s, "--sweep");
        if (v.size() != 1) throw wsnsec::domain_error("--sweep: bad number " + s);
        return v.front();
    };
    return {parts[0], num(parts[1]), num(parts[2]), num(parts[3])};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy outage probabilities for Weibull-faded sensor networks with outdated eavesdropper CSI"};
    app.set_version_flag("--version", wsnsec::kVersion);
    app.set_config("--config", "", "Read key=value options from a file; command-line flags take precedence");

    wsnsec::ExperimentSpec spec;
    std::string command;
    std::string figure;
    std::string eval_mode = "current";
    std::string format = "csv";
    std::string sweep;
    std::string betas = "1,2,3";
    std::string snr_main_list = "10,20";
    std::string snr_eve_list = "0,15";
    std::string rho_list = "1,0.7";
    bool no_mc = false;
    bool quiet = false;

    app.add_option("command", command, "sop | schedule | conditional | figure | validate")
        ->required()
        ->check(CLI::IsMember({"sop", "schedule", "conditional", "figure", "validate"}));
    app.add_option("figure", figure, "Figure preset for the figure command: fig2 | fig3 | fig4 | fig5");

    auto& p = spec.params;
    app.add_option("--beta-s", p.beta_s, "Weibull shape of the main links")->capture_default_str();
    app.add_option("--beta-e", p.beta_e, "Weibull shape of the wiretap links")->capture_default_str();
    app.add_option("--snr-main-db", p.snr_main_db, "Mean main-link SNR [dB]")->capture_default_str();
    app.add_option("--snr-eve-db", p.snr_eve_db, "Mean wiretap-link SNR [dB]")->capture_default_str();
    app.add_option("--rho", p.rho, "Correlation between outdated and current wiretap CSI")->capture_default_str();
    app.add_option("--n-nodes", p.n_nodes, "Number of sensor nodes")->capture_default_str();
    app.add_option("--rate-s", p.rate_s, "Target secrecy rate R_s [bit/s/Hz]")->capture_default_str();
    app.add_option("--rate-tx", p.rate_tx, "Codeword rate R_it [bit/s/Hz]")->capture_default_str();
    app.add_option("--sweep", sweep, "Sweep one parameter: PARAM:START:STOP:STEP (PARAM is a flag name)");

    app.add_option("--kmax", spec.series.k_max, "Outer series truncation")->capture_default_str();
    app.add_option("--term-tol", spec.series.term_tol, "Relative early-stop threshold per series block")
        ->capture_default_str();
    app.add_option("--rel-tol", spec.quad.rel_tol, "Quadrature relative tolerance")->capture_default_str();
    app.add_option("--abs-tol", spec.quad.abs_tol, "Quadrature absolute tolerance")->capture_default_str();
    app.add_option("--max-refinements", spec.quad.max_refinements, "Quadrature bisection budget")
        ->capture_default_str();

    app.add_option("--samples", spec.mc.samples, "Monte Carlo trials per estimate")->capture_default_str();
    app.add_option("--seed", spec.mc.seed, "Monte Carlo seed")->capture_default_str();
    app.add_option("--chunk", spec.mc.chunk, "Trials per random substream")->capture_default_str();
    app.add_option("--workers", spec.mc.workers, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--eval-mode", eval_mode, "Wiretap SNR used to judge outage")
        ->check(CLI::IsMember({"current", "outdated"}))
        ->capture_default_str();
    app.add_flag("--no-mc", no_mc, "Skip Monte Carlo columns");

    app.add_option("--betas", betas, "validate: comma-separated shapes")->capture_default_str();
    app.add_option("--snr-main-list", snr_main_list, "validate: main SNRs [dB]")->capture_default_str();
    app.add_option("--snr-eve-list", snr_eve_list, "validate: wiretap SNRs [dB]")->capture_default_str();
    app.add_option("--rho-list", rho_list, "validate: correlation values")->capture_default_str();

    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", spec.out_path, "Output path, - for stdout")->capture_default_str();
    app.add_flag("--quiet", quiet, "Suppress numeric warnings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParam;
    }

    if (quiet) wsnsec::set_warning_handler(nullptr);

    try {
        if (command == "sop") spec.command = wsnsec::Command::sop;
        else if (command == "schedule") spec.command = wsnsec::Command::schedule;
        else if (command == "conditional") spec.command = wsnsec::Command::conditional;
        else if (command == "figure") spec.command = wsnsec::Command::figure;
        else spec.command = wsnsec::Command::validate;

        if (spec.command == wsnsec::Command::figure && figure.empty())
            throw wsnsec::domain_error("figure: name required (fig2, fig3, fig4, fig5)");
        spec.figure = figure;
        spec.mc.eval_mode = eval_mode == "outdated" ? wsnsec::EvalMode::outdated : wsnsec::EvalMode::current;
        spec.format = format == "json" ? wsnsec::OutputFormat::json : wsnsec::OutputFormat::csv;
        spec.monte_carlo = !no_mc;
        if (!sweep.empty()) spec.sweep = parse_sweep(sweep);
        spec.grid.betas = parse_list(betas, "--betas");
        spec.grid.snr_main_db = parse_list(snr_main_list, "--snr-main-list");
        spec.grid.snr_eve_db = parse_list(snr_eve_list, "--snr-eve-list");
        spec.grid.rhos = parse_list(rho_list, "--rho-list");

        const wsnsec::ResultTable table = wsnsec::run(spec);
        wsnsec::emit(table, spec.format, spec.out_path);
        if (spec.command == wsnsec::Command::validate)
            std::cerr << "validate: " << table.meta_value("passed") << "/" << table.meta_value("checked")
                      << " rho=1 grid points inside the Monte Carlo 99% interval\n";
        return 0;
    } catch (const wsnsec::domain_error& e) {
        std::cerr << "wsnsec: parameter error: " << e.what() << '\n';
        return kExitParam;
    } catch (const wsnsec::quadrature_error& e) {
        std::cerr << "wsnsec: numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const wsnsec::io_error& e) {
        std::cerr << "wsnsec: I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "wsnsec: numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    }
}
