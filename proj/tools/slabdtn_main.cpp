// slabdtn: command-line front end for the slab Dirichlet-to-Neumann library.
//
// Subcommands: symbol, oracle, energy, ts-curve, gamma-min, limsup-trend,
// averaging, selftest. Every table goes out as CSV (17 significant digits,
// atomic temp-file + rename), optionally with a static SVG plot. Identical
// argv produces byte-identical output.
//
// Exit codes: 0 success, 1 numeric failure, 2 usage error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slabdtn/gamma_lab.hpp"
#include "slabdtn/selftest.hpp"
#include "slabdtn/slab_oracle.hpp"
#include "slabdtn/spectral_field.hpp"
#include "slabdtn/svg.hpp"
#include "slabdtn/symbol.hpp"
#include "slabdtn/table.hpp"

namespace {

using namespace slabdtn;

std::string join_argv(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

void emit_table(const Table& table, const std::string& path) {
    std::ostringstream os;
    write_csv(table, os);
    write_file_atomic(path, os.str());
}

void emit_plot(const Table& table, const PlotSpec& spec, const std::string& path) {
    write_file_atomic(path, render_svg(table, spec));
}

struct CommonArgs {
    std::string argv_line;
};

int cmd_symbol(const CommonArgs& common, double s, double r_min, double r_max,
               int points, const std::string& spacing, const std::string& out,
               const std::string& plot) {
    const Spacing sp = spacing == "log" ? Spacing::logarithmic : Spacing::linear;
    const SymbolTable st =
        tabulate(FracParams::from_s(s), r_min, r_max, points, sp);

    Table t;
    t.comments = {"argv: " + common.argv_line};
    t.columns = {"r", "s_tilde", "s_full", "ds_tilde"};
    for (const SymbolSample& row : st.rows)
        t.append_row({row.r, row.s_tilde, row.s_full, row.ds_tilde});
    emit_table(t, out);

    if (!plot.empty()) {
        PlotSpec ps;
        ps.x_column = "r";
        ps.title = "slab DtN symbol, s = " + format_double(s);
        if (sp == Spacing::logarithmic) {
            ps.y_columns = {"s_full", "s_tilde"};
            ps.x_scale = AxisScale::log;
            ps.y_scale = AxisScale::log;
            ps.guides = {{2.0 * s, "slope 2s"}};
        } else {
            ps.y_columns = {"s_tilde"};
        }
        emit_plot(t, ps, plot);
    }
    return 0;
}

int cmd_oracle(const CommonArgs& common, double s, double r,
               std::vector<int> meshes, const std::string& out,
               const std::string& plot) {
    const auto rows =
        slab_oracle::convergence_study(FracParams::from_s(s), r, meshes);
    Table t;
    t.comments = {"argv: " + common.argv_line,
                  "symbol value: " + format_double(s_full(FracParams::from_s(s), r))};
    t.columns = {"mesh_size", "dtn_value", "error_vs_symbol"};
    for (const auto& row : rows)
        t.append_row({double(row.mesh_size), row.dtn_value, row.error_vs_symbol});
    emit_table(t, out);
    if (!plot.empty()) {
        PlotSpec ps;
        ps.x_column = "mesh_size";
        ps.y_columns = {"error_vs_symbol"};
        ps.x_scale = AxisScale::log;
        ps.y_scale = AxisScale::log;
        ps.guides = {{-2.0, "slope -2"}};
        ps.title = "mode ODE vs symbol, s = " + format_double(s) +
                   ", r = " + format_double(r);
        emit_plot(t, ps, plot);
    }
    return 0;
}

int cmd_energy(const CommonArgs& common, double s, double epsilon, int n,
               double length, const std::string& profile, double center,
               double half_width, const std::string& field_in,
               const std::string& out) {
    const FracParams params = FracParams::from_s(s);
    Field u;
    if (!field_in.empty()) {
        std::ifstream is(field_in);
        if (!is) throw std::runtime_error("cannot open " + field_in);
        u = load_field_csv(is);
    } else {
        const PeriodicGrid grid = PeriodicGrid::make(1, length, n);
        const gamma_lab::IntervalSpec interval{center, half_width};
        u = profile == "recovery"
                ? gamma_lab::recovery_sequence(interval, epsilon, grid)
                : gamma_lab::make_indicator(grid, interval);
    }
    const EnergyReport rep = f_epsilon(u, params, epsilon);
    Table t;
    t.comments = {"argv: " + common.argv_line,
                  std::string("regime: ") + regime_name(rep.regime)};
    t.columns = {"s", "epsilon", "interaction", "potential", "rescale_weight",
                 "total"};
    t.append_row({rep.s, rep.epsilon, rep.interaction, rep.potential,
                  rep.rescale_weight, rep.total});
    emit_table(t, out);
    return 0;
}

int cmd_ts_curve(const CommonArgs& common, double s, double r_min, double r_max,
                 int points, const std::string& out, const std::string& plot) {
    const gamma_lab::TsCurve curve = gamma_lab::ts_curve(s, r_min, r_max, points);
    Table t;
    t.comments = {"argv: " + common.argv_line};
    t.columns = {"r", "t_value", "error_estimate", "evaluations"};
    for (const auto& row : curve.rows)
        t.append_row({row.r, row.value, row.error, double(row.evaluations)});
    emit_table(t, out);
    if (!plot.empty()) {
        PlotSpec ps;
        ps.x_column = "r";
        ps.y_columns = {"t_value"};
        ps.x_scale = AxisScale::log;
        ps.y_scale = AxisScale::log;
        ps.guides = {{1.0 - 2.0 * s, "slope 1-2s"}};
        ps.title = "interval energy T_s, s = " + format_double(s);
        emit_plot(t, ps, plot);
    }
    return 0;
}

int cmd_gamma_min(const CommonArgs& common, double s, std::vector<double> epsilons,
                  int n, double length, double center, double half_width,
                  double init_layer, double step, int max_iter, double tol,
                  const std::string& out, const std::string& field_out,
                  const std::string& history_out) {
    const FracParams params = FracParams::from_s(s);
    const PeriodicGrid grid = PeriodicGrid::make(1, length, n);
    const gamma_lab::IntervalSpec interval{center, half_width};

    gamma_lab::MinimizeTrace trace;
    trace.s = s;
    gamma_lab::MinimizeOptions opts;
    opts.step = step;
    opts.max_iter = max_iter;
    opts.tol = tol;
    for (double eps : epsilons) {
        const Field init =
            gamma_lab::recovery_sequence(interval, init_layer, grid);
        trace.epsilons.push_back(eps);
        trace.runs.push_back(gamma_lab::minimize_f_epsilon(init, params, eps, opts));
    }

    const std::string json = trace.runs.size() == 1
                                 ? gamma_lab::run_to_json(s, trace.epsilons[0],
                                                          trace.runs[0])
                                 : gamma_lab::trace_to_json(trace);
    write_file_atomic(out, json + "\n");

    if (!field_out.empty()) {
        std::ostringstream os;
        save_field_csv(trace.runs.back().final_field, os);
        write_file_atomic(field_out, os.str());
    }
    if (!history_out.empty()) {
        Table t;
        t.comments = {"argv: " + common.argv_line};
        t.columns = {"epsilon", "iteration", "energy"};
        for (std::size_t i = 0; i < trace.runs.size(); ++i)
            for (std::size_t it = 0; it < trace.runs[i].energy_history.size(); ++it)
                t.append_row({trace.epsilons[i], double(it),
                              trace.runs[i].energy_history[it]});
        emit_table(t, history_out);
    }
    return 0;
}

int cmd_limsup_trend(const CommonArgs& common, double s,
                     std::vector<double> epsilons, double center,
                     double half_width, int n, double length,
                     const std::string& out, const std::string& plot) {
    const auto rows = gamma_lab::limsup_trend(
        gamma_lab::IntervalSpec{center, half_width}, FracParams::from_s(s),
        epsilons, PeriodicGrid::make(1, length, n));
    Table t;
    t.comments = {"argv: " + common.argv_line};
    t.columns = {"epsilon", "f_epsilon"};
    for (const auto& row : rows) t.append_row({row.epsilon, row.f_eps});
    emit_table(t, out);
    if (!plot.empty()) {
        PlotSpec ps;
        ps.x_column = "epsilon";
        ps.y_columns = {"f_epsilon"};
        ps.x_scale = AxisScale::log;
        ps.title = "recovery-sequence energy, s = " + format_double(s);
        emit_plot(t, ps, plot);
    }
    return 0;
}

int cmd_averaging(const CommonArgs& common, std::vector<double> omegas,
                  const std::string& profile, double x_max, int samples,
                  const std::string& out) {
    const double dx = 2.0 * x_max / (samples - 1);
    std::vector<double> f(samples);
    for (int j = 0; j < samples; ++j) {
        const double x = -x_max + j * dx;
        f[j] = profile == "exp"
                   ? 0.5 * std::exp(-std::abs(x))
                   : std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    }
    Table t;
    t.comments = {"argv: " + common.argv_line, "profile: " + profile};
    t.columns = {"omega", "lhs", "rhs", "gap"};
    for (double omega : omegas) {
        const auto chk = gamma_lab::averaging_check(f, -x_max, dx, omega);
        t.append_row({omega, chk.lhs, chk.rhs, chk.gap});
    }
    emit_table(t, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"slab Dirichlet-to-Neumann operator: symbol, oracle, and "
                 "phase-transition energy experiments"};
    app.require_subcommand(1);
    CommonArgs common{join_argv(argc, argv)};

    // ---- symbol
    double s = 0.5, r_min = 0.0, r_max = 10.0;
    int points = 101;
    std::string spacing = "linear", out, plot;
    auto* sym = app.add_subcommand("symbol", "tabulate the Fourier symbol");
    sym->add_option("--s", s, "fractional parameter in (0,1)")->required();
    sym->add_option("--r-min", r_min, "smallest frequency")->capture_default_str();
    sym->add_option("--r-max", r_max, "largest frequency")->capture_default_str();
    sym->add_option("--points", points, "number of rows")->capture_default_str();
    sym->add_option("--spacing", spacing, "linear or log")
        ->check(CLI::IsMember({"linear", "log"}))
        ->capture_default_str();
    sym->add_option("--out", out, "output CSV path")->required();
    sym->add_option("--plot", plot, "optional SVG plot path");

    // ---- oracle
    double orc_s = 0.5, orc_r = 1.0;
    std::vector<int> meshes{64, 256, 1024, 4096};
    std::string orc_out, orc_plot;
    auto* orc = app.add_subcommand(
        "oracle", "finite-difference mode oracle vs the symbol");
    orc->add_option("--s", orc_s, "fractional parameter in (0,1)")->required();
    orc->add_option("--r", orc_r, "mode frequency")->capture_default_str();
    orc->add_option("--mesh-sizes", meshes, "mesh ladder")
        ->delimiter(',')
        ->capture_default_str();
    orc->add_option("--out", orc_out, "output CSV path")->required();
    orc->add_option("--plot", orc_plot, "optional SVG plot path");

    // ---- energy
    double en_s = 0.3, en_eps = 0.1, en_len = 20.0, en_center = 0.0, en_h = 2.0;
    int en_n = 1024;
    std::string en_profile = "indicator", en_field_in, en_out;
    auto* en = app.add_subcommand("energy",
                                  "rescaled phase-transition energy of a field");
    en->add_option("--s", en_s, "fractional parameter in (0,1)")->required();
    en->add_option("--epsilon", en_eps, "rescaling parameter")->capture_default_str();
    en->add_option("--n", en_n, "grid samples (power of two)")->capture_default_str();
    en->add_option("--length", en_len, "torus length")->capture_default_str();
    en->add_option("--profile", en_profile, "indicator or recovery")
        ->check(CLI::IsMember({"indicator", "recovery"}))
        ->capture_default_str();
    en->add_option("--center", en_center, "interval center")->capture_default_str();
    en->add_option("--half-width", en_h, "interval half-width")->capture_default_str();
    en->add_option("--field-in", en_field_in, "load the field from CSV instead");
    en->add_option("--out", en_out, "output CSV path")->required();

    // ---- ts-curve
    double ts_s = 0.25, ts_rmin = 1e-4, ts_rmax = 1e3;
    int ts_points = 40;
    std::string ts_out, ts_plot;
    auto* ts = app.add_subcommand("ts-curve",
                                  "interval energy T_s(r) of the Gamma-limit");
    ts->add_option("--s", ts_s, "fractional parameter in (0,1/2)")->required();
    ts->add_option("--r-min", ts_rmin, "smallest size")->capture_default_str();
    ts->add_option("--r-max", ts_rmax, "largest size")->capture_default_str();
    ts->add_option("--points", ts_points, "number of rows")->capture_default_str();
    ts->add_option("--out", ts_out, "output CSV path")->required();
    ts->add_option("--plot", ts_plot, "optional SVG plot path");

    // ---- gamma-min
    double gm_s = 0.3, gm_len = 16.0, gm_center = 0.0, gm_h = 2.0;
    double gm_layer = 0.5, gm_step = 0.05, gm_tol = 1e-10;
    int gm_n = 2048, gm_iter = 1500;
    std::vector<double> gm_eps{0.05};
    std::string gm_out, gm_field_out, gm_hist_out;
    auto* gm = app.add_subcommand("gamma-min",
                                  "projected gradient descent on F_eps");
    gm->add_option("--s", gm_s, "fractional parameter in (0,1)")->required();
    gm->add_option("--epsilons", gm_eps, "epsilon values (decreasing)")
        ->delimiter(',')
        ->capture_default_str();
    gm->add_option("--n", gm_n, "grid samples (power of two)")->capture_default_str();
    gm->add_option("--length", gm_len, "torus length")->capture_default_str();
    gm->add_option("--center", gm_center, "interval center")->capture_default_str();
    gm->add_option("--half-width", gm_h, "interval half-width")->capture_default_str();
    gm->add_option("--init-layer", gm_layer,
                   "layer width of the smoothed-step initial field")
        ->capture_default_str();
    gm->add_option("--step", gm_step, "gradient step")->capture_default_str();
    gm->add_option("--max-iter", gm_iter, "iteration cap")->capture_default_str();
    gm->add_option("--tol", gm_tol, "energy-decrease stop tolerance")
        ->capture_default_str();
    gm->add_option("--out", gm_out, "output JSON trace path")->required();
    gm->add_option("--field-out", gm_field_out, "optional final-field CSV path");
    gm->add_option("--history-out", gm_hist_out, "optional energy-history CSV path");

    // ---- limsup-trend
    double lt_s = 0.75, lt_center = 0.0, lt_h = 2.0, lt_len = 16.0;
    int lt_n = 8192;
    std::vector<double> lt_eps{0.1, 0.05, 0.025, 0.0125};
    std::string lt_out, lt_plot;
    auto* lt = app.add_subcommand(
        "limsup-trend", "F_eps along the regime's recovery construction");
    lt->add_option("--s", lt_s, "fractional parameter in (0,1)")->required();
    lt->add_option("--epsilons", lt_eps, "epsilon values (decreasing)")
        ->delimiter(',')
        ->capture_default_str();
    lt->add_option("--center", lt_center, "interval center")->capture_default_str();
    lt->add_option("--half-width", lt_h, "interval half-width")->capture_default_str();
    lt->add_option("--n", lt_n, "grid samples (power of two)")->capture_default_str();
    lt->add_option("--length", lt_len, "torus length")->capture_default_str();
    lt->add_option("--out", lt_out, "output CSV path")->required();
    lt->add_option("--plot", lt_plot, "optional SVG plot path");

    // ---- averaging
    std::vector<double> av_omegas{0.0, 10.0, 50.0, 100.0, 200.0};
    std::string av_profile = "gaussian", av_out;
    double av_xmax = 8.0;
    int av_samples = (1 << 15) + 1;
    auto* av = app.add_subcommand("averaging",
                                  "oscillatory averaging check (sin^2 -> 1/2)");
    av->add_option("--omegas", av_omegas, "frequencies")
        ->delimiter(',')
        ->capture_default_str();
    av->add_option("--profile", av_profile, "gaussian or exp")
        ->check(CLI::IsMember({"gaussian", "exp"}))
        ->capture_default_str();
    av->add_option("--x-max", av_xmax, "half-extent of the sample grid")
        ->capture_default_str();
    av->add_option("--samples", av_samples, "sample count")->capture_default_str();
    av->add_option("--out", av_out, "output CSV path")->required();

    // ---- selftest
    app.add_subcommand("selftest",
                       "run the verification suite, one PASS/FAIL line each");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << std::endl;
        return 2;
    }

    try {
        // s-range validation is a usage matter: report it as exit 2
        try {
            if (sym->parsed())
                return cmd_symbol(common, s, r_min, r_max, points, spacing, out, plot);
            if (orc->parsed())
                return cmd_oracle(common, orc_s, orc_r, meshes, orc_out, orc_plot);
            if (en->parsed())
                return cmd_energy(common, en_s, en_eps, en_n, en_len, en_profile,
                                  en_center, en_h, en_field_in, en_out);
            if (ts->parsed())
                return cmd_ts_curve(common, ts_s, ts_rmin, ts_rmax, ts_points,
                                    ts_out, ts_plot);
            if (gm->parsed())
                return cmd_gamma_min(common, gm_s, gm_eps, gm_n, gm_len, gm_center,
                                     gm_h, gm_layer, gm_step, gm_iter, gm_tol,
                                     gm_out, gm_field_out, gm_hist_out);
            if (lt->parsed())
                return cmd_limsup_trend(common, lt_s, lt_eps, lt_center, lt_h,
                                        lt_n, lt_len, lt_out, lt_plot);
            if (av->parsed())
                return cmd_averaging(common, av_omegas, av_profile, av_xmax,
                                     av_samples, av_out);
        } catch (const std::domain_error& e) {
            std::cerr << "usage error: " << e.what() << std::endl;
            return 2;
        } catch (const std::invalid_argument& e) {
            std::cerr << "usage error: " << e.what() << std::endl;
            return 2;
        }
        return selftest::run_and_report(std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
