// qmem: cavity-tuning schedules, storage/retrieval simulations and
// efficiency reports for a tunable-cavity quantum memory.
//
// Exit codes: 0 success, 1 invalid input, 2 numerical failure (a
// conservation-ledger residual above tolerance).

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "output.hpp"
#include "qmem/analysis.hpp"
#include "qmem/cavity.hpp"
#include "qmem/constants.hpp"
#include "qmem/dynamics.hpp"
#include "qmem/params.hpp"
#include "qmem/schedule.hpp"

namespace {

using nlohmann::json;
using namespace qmem;
using namespace qmem_cli;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNumerical = 2;

double require_key(const json& j, const std::string& key) {
    if (!j.contains(key))
        throw std::invalid_argument("parameter file: missing required key '" +
                                    key + "'");
    if (!j.at(key).is_number())
        throw std::invalid_argument("parameter file: key '" + key +
                                    "' must be a number");
    return j.at(key).get<double>();
}

std::optional<double> optional_key(const json& j, const std::string& key) {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_number())
        throw std::invalid_argument("parameter file: key '" + key +
                                    "' must be a number");
    return j.at(key).get<double>();
}

// Parameter files carry the PhysicalParams field names; the relaxation
// time arrives either as T2 [s] or as an absorption linewidth [Hz] via
// T2 = 1/(pi Gamma). An optional "Cm" key pins the design cooperativity.
struct ParamFile {
    PhysicalParams phys;
    std::optional<double> cm_override;
};

ParamFile load_param_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read parameter file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("parameter file is not valid JSON: " +
                                    std::string(e.what()));
    }
    const auto t2 = optional_key(j, "T2");
    const auto linewidth = optional_key(j, "linewidth");
    if (!t2 && !linewidth)
        throw std::invalid_argument(
            "parameter file: missing required key 'T2' (or 'linewidth')");
    if (t2 && linewidth)
        throw std::invalid_argument(
            "parameter file: give either 'T2' or 'linewidth', not both");
    const double t2_val =
        t2 ? *t2 : 1.0 / (constants::pi * (*linewidth));
    ParamFile f;
    f.phys = make_params(t2_val, require_key(j, "alpha_L"),
                         require_key(j, "finesse"),
                         require_key(j, "round_trip_length"),
                         require_key(j, "wavelength"),
                         require_key(j, "cross_section"),
                         require_key(j, "sample_length"));
    f.phys.dipole_moment = optional_key(j, "dipole_moment");
    f.phys.omega0 = optional_key(j, "omega0");
    f.cm_override = optional_key(j, "Cm");
    return f;
}

json design_to_json(const DesignReport& r) {
    json j;
    j["T2_s"] = r.T2;
    j["T2_us"] = r.T2 * 1e6;
    j["gamma_per_s"] = r.gamma;
    j["Cm_derived"] = r.Cm_derived;
    j["Cm_used"] = r.Cm_used;
    j["cm_inconsistent"] = r.cm_inconsistent;
    j["C_min"] = r.C_min;
    j["pulse_duration_s"] = r.pulse_duration;
    j["pulse_duration_ns"] = r.pulse_duration * 1e9;
    j["window_2T_s"] = r.window_2T;
    j["window_2T_us"] = r.window_2T * 1e6;
    j["window_2T_asym_s"] = r.window_2T_asym;
    j["efficiency_windowed"] = r.efficiency_windowed;
    j["efficiency_large_cm"] = r.efficiency_eq30;
    j["bad_cavity"] = {{"ratio", r.bad_cavity.ratio},
                       {"cavity_linewidth_rad_s", r.bad_cavity.cavity_linewidth},
                       {"flagged", r.bad_cavity.flagged}};
    return j;
}

std::string design_to_text(const DesignReport& r) {
    std::ostringstream os;
    auto line = [&os](const std::string& k, const std::string& v) {
        os << k;
        for (std::size_t i = k.size(); i < 34; ++i) os << ' ';
        os << v << "\n";
    };
    line("T2", fmt17(r.T2 * 1e6) + " us");
    line("gamma", fmt17(r.gamma) + " 1/s");
    line("Cm (from alpha_L, finesse)", fmt17(r.Cm_derived));
    line("Cm (used)", fmt17(r.Cm_used));
    if (r.cm_inconsistent)
        line("NOTE", "requested Cm differs from alpha_L*finesse/(2 pi)");
    line("C_min (Airy minimum)", fmt17(r.C_min));
    line("pulse duration", fmt17(r.pulse_duration * 1e9) + " ns");
    line("optimal window 2T_max", fmt17(r.window_2T * 1e6) + " us");
    line("  large-Cm approximation", fmt17(r.window_2T_asym * 1e6) + " us");
    line("efficiency (windowed, exact)", fmt17(r.efficiency_windowed));
    line("  large-Cm approximation", fmt17(r.efficiency_eq30));
    line("bad-cavity ratio", fmt17(r.bad_cavity.ratio) +
                                 (r.bad_cavity.flagged ? "  FLAGGED" : "  ok"));
    line("finesse feasibility",
         std::string(r.feasibility.general_ok ? "ok" : "FAILED") +
             " (need finesse^2 > " + fmt17(r.feasibility.finesse_sq_required) +
             ")");
    for (const auto& note : r.warnings.notes) line("WARNING", note);
    return os.str();
}

int cmd_design(const std::string& param_path, const std::string& out_path,
               const std::string& format) {
    const ParamFile f = load_param_file(param_path);
    const DesignReport r = design(f.phys, f.cm_override);

    json j = design_to_json(r);
    j["feasibility"] = {{"finesse_sq_required", r.feasibility.finesse_sq_required},
                        {"general_ok", r.feasibility.general_ok},
                        {"reduced_ok", r.feasibility.reduced_ok},
                        {"C_start", r.feasibility.C_start},
                        {"C_min", r.feasibility.C_min},
                        {"exact_ok", r.feasibility.exact_ok}};
    j["warnings"] = r.warnings.notes;

    const json manifest = make_manifest(
        "design",
        {{"params", param_path}, {"out", out_path}, {"format", format}},
        {out_path});
    if (format == "text") {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open output: " + out_path);
        out << design_to_text(r);
        std::ofstream mout(out_path + ".manifest.json");
        mout << manifest.dump(2) << "\n";
    } else {
        write_json_report(out_path, j, manifest);
    }
    std::cerr << "design report written to " << out_path << "\n";
    return kExitOk;
}

double resolve_t_peak(const std::string& t_peak_arg, double cm) {
    if (t_peak_arg == "optimal") return optimal_window(cm).T_max;
    std::size_t pos = 0;
    const double v = std::stod(t_peak_arg, &pos);
    if (pos != t_peak_arg.size())
        throw std::invalid_argument("--t-peak expects a number or 'optimal'");
    return v;
}

int cmd_schedule(double cm, const std::string& t_peak_arg, int samples,
                 double finesse, const std::string& out_path) {
    if (samples < 2) throw std::invalid_argument("--samples must be >= 2");
    const double t_peak = resolve_t_peak(t_peak_arg, cm);
    const auto sched = build_emission(cm, t_peak);
    const auto feas = finesse_feasibility(cm, t_peak, finesse);
    if (!feas.general_ok || !feas.exact_ok)
        std::cerr << "warning: schedule infeasible for finesse " << finesse
                  << " (need finesse^2 > " << fmt17(feas.finesse_sq_required)
                  << "); C below the Airy minimum is reported as nan\n";

    const Cavity cav(finesse);
    const json manifest = make_manifest("schedule",
                                        {{"cm", cm},
                                         {"t_peak", t_peak},
                                         {"samples", samples},
                                         {"finesse", finesse},
                                         {"out", out_path}},
                                        {out_path});
    CsvWriter csv(out_path, manifest,
                  {"t", "C", "theta", "beta", "delta_p_over_lambda"});
    const double nan = std::nan("");
    for (int i = 0; i < samples; ++i) {
        const double t = 2.0 * t_peak * i / (samples - 1);
        const double c = C_of_t(sched, t);
        if (c < feas.C_min) {
            csv.row({t, c, nan, nan, nan});
        } else {
            const auto pt = cav.solve_detuning(c, cm);
            csv.row({t, c, pt.phase_detuning, pt.beta,
                     pt.phase_detuning / (2.0 * constants::pi)});
        }
    }
    std::cerr << "schedule written to " << out_path << "\n";
    return kExitOk;
}

void write_simulation_csv(const std::string& out_path, const json& manifest,
                          const SimulationResult& res,
                          const std::optional<Cavity>& cav, double cm,
                          const SimulationResult* second) {
    std::vector<std::string> cols = {"t", "C"};
    if (cav) {
        cols.push_back("theta");
        cols.push_back("beta");
    }
    cols.insert(cols.end(), {"F_in", "F_out", "P", "loss_cum", "ledger_residual"});
    CsvWriter csv(out_path, manifest, cols);
    auto emit_rows = [&](const SimulationResult& r, std::size_t first_row) {
        for (std::size_t i = first_row; i < r.times.size(); ++i) {
            std::vector<double> row = {r.times[i], r.C[i]};
            if (cav) {
                if (r.C[i] < cav->c_min(cm)) {
                    row.push_back(std::nan(""));
                    row.push_back(std::nan(""));
                } else {
                    const auto pt = cav->solve_detuning(r.C[i], cm);
                    row.push_back(pt.phase_detuning);
                    row.push_back(pt.beta);
                }
            }
            row.insert(row.end(),
                       {r.F_in[i], r.F_out[i], r.P[i], r.free_space_loss[i],
                        r.ledger_series[i]});
            csv.row(row);
        }
    };
    emit_rows(res, 0);
    if (second) emit_rows(*second, 1);  // skip the duplicated t = 0 node
}

int cmd_simulate(const std::string& mode, double cm,
                 const std::string& t_peak_arg, double dt_arg,
                 std::optional<double> finesse, double jitter_delta,
                 double ledger_tol, std::optional<double> t2_us,
                 const std::string& method_name, const std::string& out_path) {
    const double t_peak = resolve_t_peak(t_peak_arg, cm);
    const double dt = dt_arg > 0.0 ? dt_arg : 1e-4 / (cm + 2.0);
    const Method method = method_name == "closed-form"
                              ? Method::closed_form_quadrature
                              : Method::rk4_fixed;
    const auto em = build_emission(cm, t_peak);
    std::optional<Cavity> cav;
    if (finesse) cav.emplace(*finesse);

    json params = {{"mode", mode},          {"cm", cm},
                   {"t_peak", t_peak},      {"dt", dt},
                   {"jitter_delta", jitter_delta},
                   {"ledger_tol", ledger_tol}, {"method", method_name},
                   {"out", out_path}};
    if (finesse) params["finesse"] = *finesse;
    if (t2_us) params["t2_us"] = *t2_us;
    const std::string sum_path = summary_path(out_path);
    const json manifest =
        make_manifest("simulate", params, {out_path, sum_path});

    json summary;
    summary["mode"] = mode;
    summary["cm"] = cm;
    summary["t_peak"] = t_peak;
    summary["dt"] = dt;
    summary["N"] = norm(cm, t_peak);
    summary["N_trunc"] = norm_truncated(cm, t_peak);
    summary["efficiency_ideal"] = std::pow(norm(cm, t_peak), 2);
    summary["efficiency_windowed"] = std::pow(norm_truncated(cm, t_peak), 2);
    if (t2_us) {
        summary["t_peak_us"] = t_peak * (*t2_us);
        summary["window_2T_us"] = 2.0 * t_peak * (*t2_us);
        summary["dt_us"] = dt * (*t2_us);
    }

    double worst_ledger = 0.0;
    if (mode == "emit") {
        auto c_fn = [&em](double t) { return C_of_t(em, t); };
        auto zero = [](double) { return 0.0; };
        SimulationConfig cfg;
        cfg.t_start = 0.0;
        cfg.t_end = 2.0 * t_peak;
        cfg.dt = dt;
        cfg.P_initial = 1.0;
        cfg.ledger_tolerance = ledger_tol;
        cfg.method = method;
        const auto res = simulate(c_fn, zero, cfg);
        const auto pulse = target_pulse(em);
        double dev = 0.0;
        for (std::size_t i = 0; i < res.times.size(); ++i)
            dev = std::max(dev, std::abs(res.F_out[i] -
                                         envelope(pulse, res.times[i])));
        summary["envelope_max_dev_over_Fm"] = dev / em.Fm;
        summary["ledger_residual"] = res.ledger_residual;
        worst_ledger = res.ledger_residual;
        write_simulation_csv(out_path, manifest, res, cav, cm, nullptr);
    } else if (mode == "store") {
        const auto st = time_reverse(em);
        const auto input = storage_input(em);
        auto c_fn = [&st](double t) { return C_of_t(st, t); };
        auto f_fn = [&input, jitter_delta](double t) {
            return envelope(input, t - jitter_delta);
        };
        SimulationConfig cfg;
        cfg.t_start = -2.0 * t_peak;
        cfg.t_end = 0.0;
        cfg.dt = dt;
        cfg.P_initial = 0.0;
        cfg.ledger_tolerance = ledger_tol;
        cfg.method = method;
        const auto res = simulate(c_fn, f_fn, cfg);
        summary["P0"] = res.P.back();
        summary["P0_predicted_aligned"] =
            -norm_truncated(cm, t_peak) / std::sqrt(norm(cm, t_peak));
        summary["overlap_ratio_predicted"] =
            overlap_ratio(cm, t_peak, jitter_delta);
        summary["ledger_residual"] = res.ledger_residual;
        worst_ledger = res.ledger_residual;
        write_simulation_csv(out_path, manifest, res, cav, cm, nullptr);
    } else if (mode == "full_cycle") {
        const auto cycle = full_cycle(cm, t_peak, dt, jitter_delta, method);
        summary["P0"] = cycle.P0;
        summary["energy_in"] = cycle.energy_in;
        summary["energy_out"] = cycle.energy_out;
        summary["leaked_storage"] = cycle.leaked_storage;
        summary["efficiency_numeric"] = cycle.efficiency_numeric;
        summary["bookkeeping_residual"] = cycle.bookkeeping_residual;
        summary["ledger_residual_storage"] = cycle.storage.ledger_residual;
        summary["ledger_residual_retrieval"] = cycle.retrieval.ledger_residual;
        worst_ledger = std::max(cycle.storage.ledger_residual,
                                cycle.retrieval.ledger_residual);
        write_simulation_csv(out_path, manifest, cycle.storage, cav, cm,
                             &cycle.retrieval);
    } else {
        throw std::invalid_argument(
            "--mode must be one of emit, store, full_cycle");
    }

    std::ofstream sout(sum_path);
    if (!sout) throw std::runtime_error("cannot open output: " + sum_path);
    sout << summary.dump(2) << "\n";
    std::ofstream mout(sum_path + ".manifest.json");
    mout << manifest.dump(2) << "\n";

    if (worst_ledger > ledger_tol) {
        std::cerr << "numerical failure: ledger residual "
                  << fmt17(worst_ledger) << " exceeds tolerance "
                  << fmt17(ledger_tol) << "\n";
        return kExitNumerical;
    }
    std::cerr << "simulation written to " << out_path << "\n";
    return kExitOk;
}

int cmd_jitter(double cm, const std::string& t_peak_arg, double grid_max,
               int grid_points, const std::string& out_path) {
    if (grid_points < 3) throw std::invalid_argument("--grid-points must be >= 3");
    const double t_peak = resolve_t_peak(t_peak_arg, cm);
    // grid in gamma*delta*Cm units, symmetric about zero
    std::vector<double> deltas;
    deltas.reserve(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        const double x = -grid_max + 2.0 * grid_max * i / (grid_points - 1);
        deltas.push_back(x / cm);
    }
    const auto curve = jitter_scan(cm, t_peak, deltas);
    const auto th = jitter_thresholds(cm, t_peak);

    const std::string sum_path = summary_path(out_path);
    const json manifest = make_manifest("jitter",
                                        {{"cm", cm},
                                         {"t_peak", t_peak},
                                         {"grid_max", grid_max},
                                         {"grid_points", grid_points},
                                         {"out", out_path}},
                                        {out_path, sum_path});
    CsvWriter csv(out_path, manifest,
                  {"delta", "gamma_delta_cm", "ratio_exact", "ratio_closed",
                   "efficiency_factor", "closed_valid"});
    for (std::size_t i = 0; i < curve.deltas.size(); ++i) {
        csv.row({curve.deltas[i], curve.deltas[i] * cm, curve.ratio_numeric[i],
                 curve.ratio_closed[i], curve.efficiency_factor[i],
                 curve.closed_valid[i] ? 1.0 : 0.0});
    }

    json summary;
    summary["cm"] = cm;
    summary["t_peak"] = t_peak;
    summary["gdCm_at_0.90_efficiency"] = th.gdCm_90;
    summary["gdCm_at_0.99_efficiency"] = th.gdCm_99;
    std::ofstream sout(sum_path);
    if (!sout) throw std::runtime_error("cannot open output: " + sum_path);
    sout << summary.dump(2) << "\n";
    std::ofstream mout(sum_path + ".manifest.json");
    mout << manifest.dump(2) << "\n";
    std::cerr << "jitter scan written to " << out_path << "\n";
    return kExitOk;
}

int cmd_audit(const std::string& cm_list_arg, const std::string& out_path) {
    std::vector<double> cms;
    std::stringstream ss(cm_list_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) cms.push_back(std::stod(tok));
    }
    const auto rows = asymptotic_audit(cms);
    const json manifest = make_manifest(
        "audit", {{"cm_list", cm_list_arg}, {"out", out_path}}, {out_path});
    CsvWriter csv(
        out_path, manifest,
        {"cm",
         "norm5_exact", "norm5_asym", "norm5_abs_gap", "norm5_rel_gap",
         "ntrunc_max_exact", "ntrunc_max_asym", "ntrunc_max_abs_gap",
         "ntrunc_max_rel_gap",
         "window_exact", "window_asym", "window_abs_gap", "window_rel_gap",
         "efficiency_exact", "efficiency_asym", "efficiency_abs_gap",
         "efficiency_rel_gap"});
    for (const auto& r : rows) {
        csv.row({r.Cm,
                 r.norm_large_T.exact, r.norm_large_T.asym,
                 r.norm_large_T.abs_gap, r.norm_large_T.rel_gap,
                 r.n_trunc_max.exact, r.n_trunc_max.asym,
                 r.n_trunc_max.abs_gap, r.n_trunc_max.rel_gap,
                 r.window.exact, r.window.asym, r.window.abs_gap,
                 r.window.rel_gap,
                 r.efficiency_window.exact, r.efficiency_window.asym,
                 r.efficiency_window.abs_gap, r.efficiency_window.rel_gap});
    }
    std::cerr << "audit written to " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tunable-cavity quantum memory toolkit"};
    app.require_subcommand(1);

    // design
    auto* design_cmd =
        app.add_subcommand("design", "experimental-conditions report");
    std::string design_params, design_out = "design.json",
                design_format = "json";
    design_cmd->add_option("--params", design_params, "JSON parameter file")
        ->required();
    design_cmd->add_option("--out", design_out, "output report path");
    design_cmd->add_option("--format", design_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));

    // schedule
    auto* sched_cmd =
        app.add_subcommand("schedule", "sampled cavity-tuning schedule");
    double sched_cm = 100.0, sched_finesse = 1000.0;
    std::string sched_tpeak = "optimal", sched_out = "schedule.csv";
    int sched_samples = 200;
    sched_cmd->add_option("--cm", sched_cm, "peak cooperativity")->required();
    sched_cmd->add_option("--t-peak", sched_tpeak,
                          "pulse-maximum time (1/gamma units) or 'optimal'");
    sched_cmd->add_option("--samples", sched_samples, "number of rows");
    sched_cmd->add_option("--finesse", sched_finesse, "cavity finesse")
        ->required();
    sched_cmd->add_option("--out", sched_out, "output CSV path");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "integrate the dynamics");
    std::string sim_mode = "emit", sim_tpeak = "optimal",
                sim_out = "simulation.csv";
    double sim_cm = 100.0, sim_dt = 0.0, sim_jitter = 0.0,
           sim_ledger_tol = 1e-8;
    double sim_alpha_l = 0.0;
    std::optional<double> sim_finesse, sim_t2us;
    sim_cmd->add_option("--mode", sim_mode, "emit | store | full_cycle")
        ->check(CLI::IsMember({"emit", "store", "full_cycle"}));
    sim_cmd->add_option("--cm", sim_cm, "peak cooperativity");
    sim_cmd->add_option("--alpha-l", sim_alpha_l,
                        "optical depth (with --finesse, sets Cm)");
    sim_cmd->add_option("--t-peak", sim_tpeak, "peak time or 'optimal'");
    sim_cmd->add_option("--dt", sim_dt, "step (default 1e-4/(Cm+2))");
    sim_cmd
        ->add_option("--finesse", sim_finesse,
                     "join theta/beta columns for this finesse")
        ->expected(1);
    sim_cmd->add_option("--jitter-delta", sim_jitter,
                        "input arrival offset (1/gamma units)");
    sim_cmd->add_option("--ledger-tol", sim_ledger_tol,
                        "conservation-ledger tolerance");
    std::string sim_method = "rk4";
    sim_cmd->add_option("--method", sim_method, "rk4 | closed-form")
        ->check(CLI::IsMember({"rk4", "closed-form"}));
    auto* t2_opt = sim_cmd->add_option(
        "--t2-us", sim_t2us, "report physical times for this T2 [us]");
    std::optional<double> sim_gamma;
    sim_cmd
        ->add_option("--gamma", sim_gamma,
                     "report physical times for this gamma [1/s]")
        ->excludes(t2_opt);
    sim_cmd->add_option("--out", sim_out, "output CSV path");

    // jitter
    auto* jit_cmd = app.add_subcommand("jitter", "time-jitter sensitivity");
    double jit_cm = 100.0, jit_grid_max = 1.0;
    int jit_points = 81;
    std::string jit_tpeak = "optimal", jit_out = "jitter.csv";
    jit_cmd->add_option("--cm", jit_cm, "peak cooperativity")->required();
    jit_cmd->add_option("--t-peak", jit_tpeak, "peak time or 'optimal'");
    jit_cmd->add_option("--grid-max", jit_grid_max,
                        "half-width of the gamma*delta*Cm grid");
    jit_cmd->add_option("--grid-points", jit_points, "grid size");
    jit_cmd->add_option("--out", jit_out, "output CSV path");

    // audit
    auto* audit_cmd =
        app.add_subcommand("audit", "exact vs asymptotic formulas");
    std::string audit_cms = "100,1000,10000", audit_out = "audit.csv";
    audit_cmd->add_option("--cm-list", audit_cms, "comma-separated Cm values");
    audit_cmd->add_option("--out", audit_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (design_cmd->parsed())
            return cmd_design(design_params, design_out, design_format);
        if (sched_cmd->parsed())
            return cmd_schedule(sched_cm, sched_tpeak, sched_samples,
                                sched_finesse, sched_out);
        if (sim_cmd->parsed()) {
            double cm = sim_cm;
            if (sim_alpha_l > 0.0) {
                if (!sim_finesse)
                    throw std::invalid_argument(
                        "--alpha-l needs --finesse to derive Cm");
                cm = sim_alpha_l * (*sim_finesse) / (2.0 * constants::pi);
            }
            std::optional<double> t2_us = sim_t2us;
            if (sim_gamma) t2_us = 1e6 / *sim_gamma;
            return cmd_simulate(sim_mode, cm, sim_tpeak, sim_dt, sim_finesse,
                                sim_jitter, sim_ledger_tol, t2_us, sim_method,
                                sim_out);
        }
        if (jit_cmd->parsed())
            return cmd_jitter(jit_cm, jit_tpeak, jit_grid_max, jit_points,
                              jit_out);
        if (audit_cmd->parsed()) return cmd_audit(audit_cms, audit_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
