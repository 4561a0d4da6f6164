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

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "wsnsec/analytic.hpp"
#include "wsnsec/channel.hpp"
#include "wsnsec/errors.hpp"
#include "wsnsec/montecarlo.hpp"
#include "wsnsec/report.hpp"
#include "wsnsec/schemes.hpp"

namespace wsnsec {

enum class Command { sop, schedule, conditional, figure, validate };

/// Scalar model parameters as the user states them (SNRs in dB).
struct ModelParams {
    double beta_s = 3.0;
    double beta_e = 3.0;
    double snr_main_db = 20.0;
    double snr_eve_db = 15.0;
    double rho = 1.0;
    int n_nodes = 1;
    double rate_s = 1.0;
    double rate_tx = 2.0;
};

/// Linear sweep of one ModelParams field, keyed by its CLI flag name
/// (e.g. "snr-main-db").
struct Sweep {
    std::string param;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::vector<double> values() const {
        detail::require(std::isfinite(start) && std::isfinite(stop) && std::isfinite(step),
                        "sweep: bounds must be finite");
        detail::require(step > 0.0, "sweep: step must be positive");
        detail::require(stop >= start, "sweep: stop must not precede start");
        const double span = (stop - start) / step;
        detail::require(span < 1e5, "sweep: too many points");
        const auto n = static_cast<int>(std::floor(span + 1e-9)) + 1;
        std::vector<double> v;
        for (int i = 0; i < n; ++i) v.push_back(start + i * step);
        return v;
    }
};

inline void apply_param(ModelParams& p, const std::string& name, double value) {
    if (name == "beta-s") p.beta_s = value;
    else if (name == "beta-e") p.beta_e = value;
    else if (name == "snr-main-db") p.snr_main_db = value;
    else if (name == "snr-eve-db") p.snr_eve_db = value;
    else if (name == "rho") p.rho = value;
    else if (name == "rate-s") p.rate_s = value;
    else if (name == "rate-tx") p.rate_tx = value;
    else if (name == "n-nodes") {
        detail::require(value >= 1.0 && value == std::floor(value), "n-nodes must be a positive integer");
        p.n_nodes = static_cast<int>(value);
    } else {
        throw domain_error("unknown sweep parameter: " + name);
    }
}

/// Grid for validate(); main and wiretap links share each shape.
struct ValidationGrid {
    std::vector<double> betas{1.0, 2.0, 3.0};
    std::vector<double> snr_main_db{10.0, 20.0};
    std::vector<double> snr_eve_db{0.0, 15.0};
    std::vector<double> rhos{1.0, 0.7};
};

struct ExperimentSpec {
    Command command = Command::sop;
    std::string figure;  ///< fig2..fig5 when command == figure
    ModelParams params;
    std::optional<Sweep> sweep;
    SeriesSettings series;
    QuadratureSettings quad;
    McSettings mc;
    bool monte_carlo = true;
    OutputFormat format = OutputFormat::csv;
    std::string out_path = "-";
    ValidationGrid grid;
};

inline std::string_view to_string(Command c) {
    switch (c) {
        case Command::sop: return "sop";
        case Command::schedule: return "schedule";
        case Command::conditional: return "conditional";
        case Command::figure: return "figure";
        case Command::validate: return "validate";
    }
    return "?";
}

namespace detail {

inline NodeChannel make_node(double beta_s, double snr_main_db, double beta_e, double snr_eve_db, double rho) {
    return {LinkParams::from_db(beta_s, snr_main_db), WiretapModel(LinkParams::from_db(beta_e, snr_eve_db), rho)};
}

inline NodeChannel make_node(const ModelParams& p) {
    return make_node(p.beta_s, p.snr_main_db, p.beta_e, p.snr_eve_db, p.rho);
}

inline void check_rates(const ModelParams& p, bool need_tx) {
    require(p.rate_s > 0.0 && std::isfinite(p.rate_s), "rate-s must be positive");
    if (need_tx) require(p.rate_tx >= p.rate_s && std::isfinite(p.rate_tx), "rate-tx must be >= rate-s");
}

inline std::string fmt_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline std::string join_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + format_exact(v[i]);
    return out;
}

/// Settings common to every table.
inline void base_meta(ResultTable& t, const ExperimentSpec& spec) {
    t.meta.emplace_back("wsnsec", kVersion);
    t.meta.emplace_back("command", std::string(to_string(spec.command)));
    if (spec.command == Command::figure) t.meta.emplace_back("figure", spec.figure);
    t.meta.emplace_back("kmax", std::to_string(spec.series.k_max));
    t.meta.emplace_back("term_tol", format_exact(spec.series.term_tol));
    t.meta.emplace_back("quad_rel_tol", format_exact(spec.quad.rel_tol));
    t.meta.emplace_back("quad_abs_tol", format_exact(spec.quad.abs_tol));
    t.meta.emplace_back("quad_max_refinements", std::to_string(spec.quad.max_refinements));
    t.meta.emplace_back("monte_carlo", spec.monte_carlo ? "on" : "off");
    if (spec.monte_carlo) {
        t.meta.emplace_back("samples", std::to_string(spec.mc.samples));
        t.meta.emplace_back("seed", std::to_string(spec.mc.seed));
        t.meta.emplace_back("chunk", std::to_string(spec.mc.chunk));
        t.meta.emplace_back("eval_mode", std::string(to_string(spec.mc.eval_mode)));
    }
}

inline void param_meta(ResultTable& t, const ModelParams& p, const std::optional<Sweep>& sweep) {
    t.meta.emplace_back("beta_s", format_exact(p.beta_s));
    t.meta.emplace_back("beta_e", format_exact(p.beta_e));
    t.meta.emplace_back("snr_main_db", format_exact(p.snr_main_db));
    t.meta.emplace_back("snr_eve_db", format_exact(p.snr_eve_db));
    t.meta.emplace_back("rho", format_exact(p.rho));
    t.meta.emplace_back("n_nodes", std::to_string(p.n_nodes));
    t.meta.emplace_back("rate_s", format_exact(p.rate_s));
    t.meta.emplace_back("rate_tx", format_exact(p.rate_tx));
    if (sweep)
        t.meta.emplace_back("sweep", sweep->param + ":" + format_exact(sweep->start) + ":" +
                                         format_exact(sweep->stop) + ":" + format_exact(sweep->step));
}

/// Points of a plain (non-figure) run: the sweep values, or the single base point.
inline std::vector<ModelParams> sweep_points(const ExperimentSpec& spec) {
    if (!spec.sweep) return {spec.params};
    std::vector<ModelParams> pts;
    for (double v : spec.sweep->values()) {
        ModelParams p = spec.params;
        apply_param(p, spec.sweep->param, v);
        pts.push_back(p);
    }
    return pts;
}

inline std::vector<Cell> leading_cells(const ExperimentSpec& spec, const ModelParams& p) {
    if (!spec.sweep) return {};
    const std::string& name = spec.sweep->param;
    if (name == "n-nodes") return {Cell{static_cast<std::int64_t>(p.n_nodes)}};
    double v = 0.0;
    if (name == "beta-s") v = p.beta_s;
    else if (name == "beta-e") v = p.beta_e;
    else if (name == "snr-main-db") v = p.snr_main_db;
    else if (name == "snr-eve-db") v = p.snr_eve_db;
    else if (name == "rho") v = p.rho;
    else if (name == "rate-s") v = p.rate_s;
    else if (name == "rate-tx") v = p.rate_tx;
    return {Cell{v}};
}

inline std::vector<std::string> leading_columns(const ExperimentSpec& spec) {
    if (!spec.sweep) return {};
    std::string name = spec.sweep->param;
    for (char& c : name)
        if (c == '-') c = '_';
    return {name};
}

inline void append(std::vector<Cell>& row, std::initializer_list<Cell> cells) {
    row.insert(row.end(), cells.begin(), cells.end());
}

inline ResultTable run_sop(const ExperimentSpec& spec) {
    ResultTable t;
    base_meta(t, spec);
    param_meta(t, spec.params, spec.sweep);
    t.columns = leading_columns(spec);
    t.columns.push_back("sop_analytic");
    if (spec.monte_carlo) t.columns.insert(t.columns.end(), {"sop_mc", "sop_mc_stderr"});
    t.columns.push_back("norm_defect");
    for (const ModelParams& p : sweep_points(spec)) {
        check_rates(p, false);
        const NodeChannel node = make_node(p);
        auto row = leading_cells(spec, p);
        row.emplace_back(sop_per_node(node, p.rate_s, spec.series, spec.quad));
        if (spec.monte_carlo) {
            const McEstimate mc = mc_sop_per_node(node, p.rate_s, spec.mc);
            append(row, {mc.value, mc.std_error});
        }
        row.emplace_back(normalization_defect(node.wiretap, spec.series, spec.quad));
        t.add_row(std::move(row));
    }
    return t;
}

inline ResultTable run_schedule(const ExperimentSpec& spec) {
    ResultTable t;
    base_meta(t, spec);
    param_meta(t, spec.params, spec.sweep);
    t.columns = leading_columns(spec);
    t.columns.insert(t.columns.end(), {"best_analytic", "rr_analytic"});
    if (spec.monte_carlo) t.columns.insert(t.columns.end(), {"best_mc", "best_mc_stderr", "rr_mc", "rr_mc_stderr"});
    t.columns.push_back("norm_defect");
    for (const ModelParams& p : sweep_points(spec)) {
        check_rates(p, false);
        const NodeChannel node = make_node(p);
        const auto cfg = NetworkConfig::identical(p.n_nodes, node, p.rate_s, std::max(p.rate_tx, p.rate_s));
        auto row = leading_cells(spec, p);
        const auto per_node = per_node_sops(cfg, spec.series, spec.quad);
        append(row, {combine_best_node(per_node), combine_round_robin(per_node)});
        if (spec.monte_carlo) {
            const McEstimate best = mc_best_node(cfg, spec.mc);
            const McEstimate rr = mc_round_robin(cfg, spec.mc);
            append(row, {best.value, best.std_error, rr.value, rr.std_error});
        }
        row.emplace_back(normalization_defect(node.wiretap, spec.series, spec.quad));
        t.add_row(std::move(row));
    }
    return t;
}

inline ResultTable run_conditional(const ExperimentSpec& spec) {
    ResultTable t;
    base_meta(t, spec);
    param_meta(t, spec.params, spec.sweep);
    t.columns = leading_columns(spec);
    t.columns.push_back("cond_analytic");
    if (spec.monte_carlo) t.columns.insert(t.columns.end(), {"cond_mc", "cond_mc_stderr"});
    t.columns.push_back("cdf_defect");
    for (const ModelParams& p : sweep_points(spec)) {
        check_rates(p, true);
        const NodeChannel node = make_node(p);
        auto row = leading_cells(spec, p);
        row.emplace_back(conditional_sop(node, p.rate_tx, p.rate_s, spec.series));
        if (spec.monte_carlo) {
            const McEstimate mc = mc_conditional_sop(node, p.rate_tx, p.rate_s, spec.mc);
            append(row, {mc.value, mc.std_error});
        }
        row.emplace_back(cdf_limit_defect(node.wiretap, spec.series));
        t.add_row(std::move(row));
    }
    return t;
}

// Figure presets. Each fixes one operating point; the remaining axes
// are the curves each figure plots.

inline const std::vector<double> kFig2Shapes{1.5, 2.5, 3.5};
inline const std::vector<double> kFigRhos{0.7, 0.9, 1.0};

inline ResultTable figure_fig2(const ExperimentSpec& spec) {
    // N = 1, R_s = 1, eavesdropper 15 dB; main SNR swept.
    ResultTable t;
    base_meta(t, spec);
    t.meta.emplace_back("n_nodes", "1");
    t.meta.emplace_back("rate_s", "1");
    t.meta.emplace_back("snr_eve_db", "15");
    t.columns = {"snr_main_db", "beta_s", "beta_e", "rho", "best_analytic", "best_mc", "best_mc_stderr",
                 "norm_defect"};
    if (!spec.monte_carlo) t.columns = {"snr_main_db", "beta_s", "beta_e", "rho", "best_analytic", "norm_defect"};
    for (double bs : kFig2Shapes)
        for (double be : kFig2Shapes)
            for (double rho : kFigRhos) {
                const WiretapModel eve(LinkParams::from_db(be, 15.0), rho);
                const double defect = normalization_defect(eve, spec.series, spec.quad);
                for (int i = 0; i <= 8; ++i) {
                    const double snr = 5.0 * i;
                    const auto cfg = NetworkConfig::identical(1, {LinkParams::from_db(bs, snr), eve}, 1.0, 1.0);
                    std::vector<Cell> row{snr, bs, be, rho, sop_best_node(cfg, spec.series, spec.quad)};
                    if (spec.monte_carlo) {
                        const McEstimate mc = mc_best_node(cfg, spec.mc);
                        append(row, {mc.value, mc.std_error});
                    }
                    row.emplace_back(defect);
                    t.add_row(std::move(row));
                }
            }
    return t;
}

inline ResultTable figure_fig3(const ExperimentSpec& spec) {
    // beta_s = beta_e = 3, R_s = 1, 20 dB main, 15 dB eavesdropper; N swept.
    ResultTable t;
    base_meta(t, spec);
    t.meta.emplace_back("beta_s", "3");
    t.meta.emplace_back("beta_e", "3");
    t.meta.emplace_back("rate_s", "1");
    t.meta.emplace_back("snr_main_db", "20");
    t.meta.emplace_back("snr_eve_db", "15");
    t.columns = {"n_nodes"};
    for (double rho : kFigRhos) {
        const std::string tag = "_rho" + fmt_short(rho);
        t.columns.push_back("best_analytic" + tag);
        if (spec.monte_carlo) t.columns.push_back("best_mc" + tag);
        t.columns.push_back("rr_analytic" + tag);
        if (spec.monte_carlo) t.columns.push_back("rr_mc" + tag);
    }
    if (spec.monte_carlo) t.columns.insert(t.columns.end(), {"best_mc_stderr_max", "rr_mc_stderr_max"});

    std::vector<double> per_rho_sop;
    for (double rho : kFigRhos)
        per_rho_sop.push_back(sop_per_node(make_node(3.0, 20.0, 3.0, 15.0, rho), 1.0, spec.series, spec.quad));

    for (int n = 1; n <= 8; ++n) {
        std::vector<Cell> row{static_cast<std::int64_t>(n)};
        double best_se = 0.0;
        double rr_se = 0.0;
        for (std::size_t r = 0; r < kFigRhos.size(); ++r) {
            const auto cfg = NetworkConfig::identical(n, make_node(3.0, 20.0, 3.0, 15.0, kFigRhos[r]), 1.0, 1.0);
            const std::vector<double> per_node(static_cast<std::size_t>(n), per_rho_sop[r]);
            row.emplace_back(combine_best_node(per_node));
            if (spec.monte_carlo) {
                const McEstimate best = mc_best_node(cfg, spec.mc);
                row.emplace_back(best.value);
                best_se = std::max(best_se, best.std_error);
            }
            row.emplace_back(combine_round_robin(per_node));
            if (spec.monte_carlo) {
                const McEstimate rr = mc_round_robin(cfg, spec.mc);
                row.emplace_back(rr.value);
                rr_se = std::max(rr_se, rr.std_error);
            }
        }
        if (spec.monte_carlo) append(row, {best_se, rr_se});
        t.add_row(std::move(row));
    }
    return t;
}

inline ResultTable figure_fig4(const ExperimentSpec& spec) {
    // N = 1, 20 dB main, 0 dB eavesdropper; rho swept over 0.05..1.
    ResultTable t;
    base_meta(t, spec);
    t.meta.emplace_back("n_nodes", "1");
    t.meta.emplace_back("snr_main_db", "20");
    t.meta.emplace_back("snr_eve_db", "0");
    t.columns = {"rate_s", "beta_s", "beta_e", "rho", "best_analytic"};
    if (spec.monte_carlo) t.columns.insert(t.columns.end(), {"best_mc", "best_mc_stderr"});
    t.columns.push_back("norm_defect");
    const std::vector<std::pair<double, double>> shapes{{1.5, 3.5}, {3.5, 1.5}};
    for (double rate_s : {1.0, 2.0})
        for (const auto& [bs, be] : shapes)
            for (int i = 1; i <= 20; ++i) {
                const double rho = i / 20.0;
                const NodeChannel node = make_node(bs, 20.0, be, 0.0, rho);
                const auto cfg = NetworkConfig::identical(1, node, rate_s, rate_s);
                std::vector<Cell> row{rate_s, bs, be, rho, sop_best_node(cfg, spec.series, spec.quad)};
                if (spec.monte_carlo) {
                    const McEstimate mc = mc_best_node(cfg, spec.mc);
                    append(row, {mc.value, mc.std_error});
                }
                row.emplace_back(normalization_defect(node.wiretap, spec.series, spec.quad));
                t.add_row(std::move(row));
            }
    return t;
}

inline ResultTable figure_fig5(const ExperimentSpec& spec) {
    // R_s = 1; R_it swept. Wiretap shape comes from --beta-e.
    ResultTable t;
    base_meta(t, spec);
    t.meta.emplace_back("rate_s", "1");
    t.meta.emplace_back("beta_e", format_exact(spec.params.beta_e));
    t.columns = {"snr_eve_db", "rho", "rate_tx", "cond_analytic"};
    if (spec.monte_carlo) t.columns.insert(t.columns.end(), {"cond_mc", "cond_mc_stderr"});
    t.columns.push_back("cdf_defect");
    for (double snr_eve : {0.0, 10.0, 20.0})
        for (double rho : kFigRhos) {
            const NodeChannel node = make_node(spec.params.beta_s, spec.params.snr_main_db, spec.params.beta_e,
                                               snr_eve, rho);
            const double defect = cdf_limit_defect(node.wiretap, spec.series);
            for (int i = 0; i <= 16; ++i) {
                const double rate_tx = 1.0 + 0.25 * i;
                std::vector<Cell> row{snr_eve, rho, rate_tx, conditional_sop(node, rate_tx, 1.0, spec.series)};
                if (spec.monte_carlo) {
                    const McEstimate mc = mc_conditional_sop(node, rate_tx, 1.0, spec.mc);
                    append(row, {mc.value, mc.std_error});
                }
                row.emplace_back(defect);
                t.add_row(std::move(row));
            }
        }
    return t;
}

}  // namespace detail

inline const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5"};
    return names;
}

/// Analytic vs Monte Carlo per grid point. Only rho = 1 rows get a pass/fail
/// verdict (analytic inside the MC 99% interval); rho < 1 rows carry the
/// series defect instead.
inline ResultTable validate(const ExperimentSpec& spec) {
    const ValidationGrid& g = spec.grid;
    detail::require(!g.betas.empty() && !g.snr_main_db.empty() && !g.snr_eve_db.empty() && !g.rhos.empty(),
                    "validate: grid is empty");
    detail::require(spec.monte_carlo, "validate: Monte Carlo must be enabled");
    detail::check_rates(spec.params, false);
    const double rate_s = spec.params.rate_s;

    ResultTable t;
    detail::base_meta(t, spec);
    t.meta.emplace_back("rate_s", format_exact(rate_s));
    t.meta.emplace_back("betas", detail::join_list(g.betas));
    t.meta.emplace_back("snr_main_db", detail::join_list(g.snr_main_db));
    t.meta.emplace_back("snr_eve_db", detail::join_list(g.snr_eve_db));
    t.meta.emplace_back("rhos", detail::join_list(g.rhos));
    t.columns = {"beta", "snr_main_db", "snr_eve_db", "rho", "sop_analytic", "sop_mc", "mc_ci99_low",
                 "mc_ci99_high", "status", "norm_defect"};
    int checked = 0;
    int passed = 0;
    for (double rho : g.rhos)
        for (double beta : g.betas)
            for (double snr_main : g.snr_main_db)
                for (double snr_eve : g.snr_eve_db) {
                    const NodeChannel node = detail::make_node(beta, snr_main, beta, snr_eve, rho);
                    const double analytic = sop_per_node(node, rate_s, spec.series, spec.quad);
                    const McEstimate mc = mc_sop_per_node(node, rate_s, spec.mc);
                    const double defect = normalization_defect(node.wiretap, spec.series, spec.quad);
                    const double lo = mc.value - kZ99 * mc.std_error;
                    const double hi = mc.value + kZ99 * mc.std_error;
                    std::string status;
                    if (rho == 1.0) {
                        const bool ok = analytic >= lo && analytic <= hi;
                        ++checked;
                        passed += ok ? 1 : 0;
                        status = ok ? "pass" : "fail";
                    } else {
                        char buf[64];
                        std::snprintf(buf, sizeof buf, "paper-exact series, defect = %.6g", defect);
                        status = buf;
                    }
                    t.add_row({beta, snr_main, snr_eve, rho, analytic, mc.value, std::max(0.0, lo),
                               std::min(1.0, hi), status, defect});
                }
    t.meta.emplace_back("checked", std::to_string(checked));
    t.meta.emplace_back("passed", std::to_string(passed));
    return t;
}

inline ResultTable run(const ExperimentSpec& spec) {
    spec.series.validate();
    spec.quad.validate();
    spec.mc.validate();
    switch (spec.command) {
        case Command::sop: return detail::run_sop(spec);
        case Command::schedule: return detail::run_schedule(spec);
        case Command::conditional: return detail::run_conditional(spec);
        case Command::validate: return validate(spec);
        case Command::figure:
            if (spec.figure == "fig2") return detail::figure_fig2(spec);
            if (spec.figure == "fig3") return detail::figure_fig3(spec);
            if (spec.figure == "fig4") return detail::figure_fig4(spec);
            if (spec.figure == "fig5") return detail::figure_fig5(spec);
            throw domain_error("unknown figure preset: " + spec.figure);
    }
    throw domain_error("unknown command");
}

}  // namespace wsnsec
