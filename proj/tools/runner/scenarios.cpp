#include "scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "format.hpp"
#include "opqsl/opqsl.hpp"

namespace opqsl::runner {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

BoundCheck floor_check(std::string curve, std::string bound, const std::vector<double>& truth,
                       const std::vector<double>& floor, double scale, bool validity) {
    BoundCheck c{std::move(curve), std::move(bound), kInf, 0, validity};
    const double tol = kCheckTolerance * std::max(1.0, scale);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double margin = truth[i] - floor[i];
        c.min_margin = std::min(c.min_margin, margin);
        if (margin < -tol) ++c.violations;
    }
    return c;
}

BoundCheck ceiling_check(std::string curve, std::string bound, const std::vector<double>& truth,
                         const std::vector<double>& ceiling, double scale, bool validity) {
    BoundCheck c{std::move(curve), std::move(bound), kInf, 0, validity};
    const double tol = kCheckTolerance * std::max(1.0, scale);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double margin = ceiling[i] - std::abs(truth[i]);
        c.min_margin = std::min(c.min_margin, margin);
        if (margin < -tol) ++c.violations;
    }
    return c;
}

TimeGrid make_grid(const TimeBlock& t) { return TimeGrid(t.t_min, t.t_max, t.n_points); }

// Autocorrelation curve with its MT/ML floors and the Im C ceiling. Values are
// divided by C_O(0) when `normalize` is set.
Table autocorr_table(const std::string& file, const EnergyBasisOperator& op, const StationaryState& rho,
                     double ground_energy, const TimeGrid& grid, bool normalize, RunSummary& summary) {
    const CorrelationCurve curve = autocorr_curve(op, rho, grid);
    const double c0 = curve.c0;
    const double vel = velocity_moment(op, rho);
    const double anchored = anchored_sum(op, rho, ground_energy);
    const double lml = liouvillian_ml_velocity(op, rho);
    const double tau_c = vel > 0.0 ? autocorr_crossover(vel, anchored) : kInf;
    const double unit = normalize ? c0 : 1.0;
    if (!(unit > 0.0)) throw std::domain_error("autocorrelation vanishes at t = 0; nothing to normalize");

    const std::size_t n = grid.size();
    std::vector<double> t = grid.points();
    std::vector<double> re(n), im(n), mt(n), ml(n), ceil(n), mll(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = std::abs(t[i]);
        re[i] = curve.values[i].real() / unit;
        im[i] = curve.values[i].imag() / unit;
        mt[i] = mt_autocorr_floor(c0, vel, s) / unit;
        ml[i] = ml_autocorr_floor(c0, anchored, s) / unit;
        ceil[i] = im_autocorr_ceiling(anchored, s) / unit;
        mll[i] = (c0 - alpha_constant() * lml * s) / unit;
    }

    Table table;
    table.file_name = file;
    table.add_meta("alpha", alpha_constant());
    table.add_meta("c0", c0);
    table.add_meta("normalized", normalize ? "true" : "false");
    table.add_meta("velocity", vel);
    table.add_meta("anchored", anchored);
    table.add_meta("liouvillian_velocity", lml);
    table.add_meta("tau_c", tau_c);

    const double scale = c0 / unit;
    summary.checks.push_back(floor_check("re_C", "mt_floor", re, mt, scale, true));
    summary.checks.push_back(floor_check("re_C", "ml_floor", re, ml, scale, true));
    summary.checks.push_back(floor_check("re_C", "ml_floor_liouvillian", re, mll, scale, true));
    summary.checks.push_back(ceiling_check("im_C", "im_ceiling", im, ceil, scale, true));
    summary.scalars.emplace_back("tau_c", tau_c);
    summary.scalars.emplace_back("c0", c0);

    table.add_column("t", std::move(t));
    table.add_column("re_C", std::move(re));
    table.add_column("im_C", std::move(im));
    table.add_column("mt_floor", std::move(mt));
    table.add_column("ml_floor", std::move(ml));
    table.add_column("im_ceiling", std::move(ceil));
    table.add_column("ml_floor_liouvillian", std::move(mll));
    return table;
}

void prepend_meta(Table& t, std::vector<std::pair<std::string, std::string>> head) {
    head.insert(head.end(), t.metadata.begin(), t.metadata.end());
    t.metadata = std::move(head);
}

ScenarioOutput run_qubit_autocorr(const ScenarioConfig& cfg) {
    const QubitBlock& qb = cfg.qubit;
    const QubitParams q{qb.a, qb.b, qb.c, qb.k, qb.beta};
    const Spectrum s = eigh(qubit_hamiltonian(q));
    const StationaryState rho = gibbs(s, q.beta);
    const EnergyBasisOperator op = to_energy_basis(pauli_x(), s);
    const TimeGrid grid = make_grid(cfg.time);

    ScenarioOutput out;
    Table table = autocorr_table("qubit_autocorr.csv", op, rho, s.ground_energy(), grid, false, out.summary);
    std::vector<double> re_ref, im_ref;
    double deviation = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const QubitReference ref = qubit_reference(q, grid[i]);
        re_ref.push_back(ref.re);
        im_ref.push_back(ref.im);
        deviation = std::max({deviation, std::abs(ref.re - table.data[1][i]), std::abs(ref.im - table.data[2][i])});
    }
    table.add_column("re_C_closed", std::move(re_ref));
    table.add_column("im_C_closed", std::move(im_ref));
    prepend_meta(table, {{"scenario", "qubit_autocorr"},
                         {"a", format_number(q.a)},
                         {"b", format_number(q.b)},
                         {"c", format_number(q.c)},
                         {"k", format_number(q.k)},
                         {"beta", format_number(q.beta)}});
    out.summary.scalars.emplace_back("max_closed_form_deviation", deviation);
    out.tables.push_back(std::move(table));
    return out;
}

ScenarioOutput run_goe_autocorr(const ScenarioConfig& cfg) {
    const GoeBlock& g = cfg.goe;
    const GoeSpec spec{g.dim, g.sigma, *g.seed};
    const auto [h, o] = sample_goe_pair(spec, *g.seed2);
    const Spectrum s = eigh(h);
    const StationaryState rho = gibbs(s, g.beta);
    // O is drawn directly in the energy eigenbasis of H.
    const EnergyBasisOperator op(o.matrix(), s.energies);

    ScenarioOutput out;
    Table table = autocorr_table("goe_autocorr.csv", op, rho, s.ground_energy(), make_grid(cfg.time), true,
                                 out.summary);
    prepend_meta(table, {{"scenario", "goe_autocorr"},
                         {"dim", std::to_string(g.dim)},
                         {"sigma", format_number(g.sigma)},
                         {"beta", format_number(g.beta)},
                         {"seed", std::to_string(*g.seed)},
                         {"seed2", std::to_string(*g.seed2)}});
    out.summary.seeds = {{"seed", *g.seed}, {"seed2", *g.seed2}};
    out.tables.push_back(std::move(table));
    return out;
}

ScenarioOutput run_goe_fidelity(const ScenarioConfig& cfg) {
    const GoeBlock& g = cfg.goe;
    const GoeFidelityResult r = goe_fidelity_experiment(g.dim, g.sigma, g.beta, *g.seed, make_grid(cfg.time));

    ScenarioOutput out;
    Table table;
    table.file_name = "goe_fidelity.csv";
    table.add_meta("scenario", "goe_fidelity");
    table.add_meta("dim", std::to_string(g.dim));
    table.add_meta("sigma", g.sigma);
    table.add_meta("beta", g.beta);
    table.add_meta("seed", std::to_string(*g.seed));
    table.add_meta("alpha", alpha_constant());
    table.add_meta("tau", r.tau);
    table.add_meta("mean_energy_gap", r.mean_energy_gap);

    BoundCheck early{"fidelity", "ml_floor (t <= tau)", r.min_margin, r.violations, true};
    out.summary.checks.push_back(early);
    out.summary.checks.push_back(floor_check("fidelity", "ml_floor (full window)", r.fidelity.values, r.ml_floor,
                                             1.0, false));
    out.summary.scalars.emplace_back("tau", r.tau);
    out.summary.scalars.emplace_back("mean_energy_gap", r.mean_energy_gap);
    out.summary.seeds = {{"seed", *g.seed}};

    table.add_column("t", r.fidelity.grid);
    table.add_column("fidelity", r.fidelity.values);
    table.add_column("ml_floor", r.ml_floor);
    out.tables.push_back(std::move(table));
    return out;
}

ScenarioOutput run_response_qubit(const ScenarioConfig& cfg) {
    const ResponseBlock& rb = cfg.response;
    const HermitianMatrix sx(pauli_x());
    const ThermalSystem sys(HermitianMatrix(pauli_z()), rb.beta);
    const TimeGrid grid = make_grid(cfg.time);
    const SusceptibilityCurve chi = susceptibility_curve(sx, sx, sys, grid);
    const TimeSeries step = kubo_response(chi, std::vector<double>(grid.size(), 1.0), rb.lambda);
    const double heis = heisenberg_ceiling(sx, sx, sys);
    const double bog = bogoliubov_ceiling(sx, sx, sys, rb.variant);
    const CrossoverTimes ct = crossover_times(sx, sx, sys);
    const bool derived = rb.variant == BogoliubovVariant::derived;

    std::vector<double> heis_col(grid.size(), heis), bog_col(grid.size(), bog), qsl_col;
    for (double t : chi.grid) qsl_col.push_back(qsl_ceiling(sx, sys, t));

    ScenarioOutput out;
    auto& checks = out.summary.checks;
    checks.push_back(ceiling_check("chi", "heisenberg", chi.values, heis_col, heis, true));
    checks.push_back(ceiling_check("chi", derived ? "bogoliubov" : "bogoliubov (as printed)", chi.values, bog_col,
                                   heis, derived));
    checks.push_back(ceiling_check("chi", "qsl", chi.values, qsl_col, heis, true));
    out.summary.scalars = {{"bogoliubov_temperature", bogoliubov_temperature(sx, sx, sys)},
                           {"tau_qsl", tau_qsl(sx, sys)},
                           {"tau_h", ct.tau_h},
                           {"tau_b_printed", ct.tau_b_printed},
                           {"tau_b_derived", ct.tau_b_derived},
                           {"max_imag_residual", chi.max_imag_residual}};

    Table table;
    table.file_name = "response_qubit.csv";
    table.add_meta("scenario", "response_qubit");
    table.add_meta("beta", rb.beta);
    table.add_meta("variant", derived ? "derived" : "as_printed");
    table.add_meta("lambda", rb.lambda);
    for (const auto& [k, v] : out.summary.scalars) table.add_meta(k, v);
    table.add_column("t", chi.grid);
    table.add_column("chi", chi.values);
    table.add_column("heisenberg", std::move(heis_col));
    table.add_column("bogoliubov", std::move(bog_col));
    table.add_column("qsl", std::move(qsl_col));
    table.add_column("kubo_step", step.values);
    out.tables.push_back(std::move(table));
    return out;
}

ScenarioOutput run_qfi_sweep(const ScenarioConfig& cfg) {
    const QubitBlock& qb = cfg.qubit;
    const QubitParams q{qb.a, qb.b, qb.c, qb.k, 0.0};
    const HermitianMatrix sx(pauli_x());
    const Spectrum s = eigh(qubit_hamiltonian(q));
    const EnergyBasisOperator op = to_energy_basis(sx.matrix(), s);

    std::vector<double> betas, temps, spectral, integral, raw, ceiling, cr;
    double worst_rel = 0.0;
    for (double beta : cfg.qfi.betas) {
        const double temp = 1.0 / beta;
        const WeightedGapDistribution g = compact(correlation_distribution(op, gibbs(s, beta)));
        double max_freq = 0.0;
        for (const GapWeight& e : g.entries()) max_freq = std::max(max_freq, std::abs(e.delta));
        const QfiResult r = qfi_from_autocorr([&](double t) { return char_function(g, t).imag(); }, temp,
                                              kernel_cutoff(temp), max_freq);
        const double f = qfi_spectral(s, beta, sx);
        betas.push_back(beta);
        temps.push_back(temp);
        spectral.push_back(f);
        integral.push_back(r.value);
        raw.push_back(r.raw);
        ceiling.push_back(qfi_ceiling(sx, s, beta));
        cr.push_back(cramer_rao_floor(sx, s, beta, 1));
        worst_rel = std::max(worst_rel, std::abs(r.value - f) / std::max(std::abs(f), 1e-300));
    }

    ScenarioOutput out;
    BoundCheck c{"qfi_spectral", "qfi_ceiling", kInf, 0, true};
    for (std::size_t i = 0; i < spectral.size(); ++i) {
        const double margin = ceiling[i] - spectral[i];
        c.min_margin = std::min(c.min_margin, margin);
        if (margin < -kCheckTolerance * std::max(1.0, ceiling[i])) ++c.violations;
    }
    out.summary.checks.push_back(c);
    out.summary.scalars = {{"integral_route_calibration", kIntegralRouteCalibration},
                           {"max_integral_relative_deviation", worst_rel}};

    Table table;
    table.file_name = "qfi_sweep.csv";
    table.add_meta("scenario", "qfi_sweep");
    table.add_meta("a", q.a);
    table.add_meta("b", q.b);
    table.add_meta("c", q.c);
    table.add_meta("k", q.k);
    table.add_meta("operator", "sigma_x");
    table.add_meta("measurements", "1");
    table.add_meta("integral_route_calibration", kIntegralRouteCalibration);
    table.add_column("beta", std::move(betas));
    table.add_column("T", std::move(temps));
    table.add_column("qfi_spectral", std::move(spectral));
    table.add_column("qfi_integral", std::move(integral));
    table.add_column("qfi_integral_raw", std::move(raw));
    table.add_column("qfi_ceiling", std::move(ceiling));
    table.add_column("cramer_rao_floor", std::move(cr));
    out.tables.push_back(std::move(table));
    return out;
}

ScenarioOutput run_custom_matrix(const ScenarioConfig& cfg) {
    const ComplexMatrix hm = read_matrix_file(cfg.custom.hamiltonian_file);
    const ComplexMatrix om = read_matrix_file(cfg.custom.operator_file);
    if (hm.rows() != om.rows()) {
        throw ConfigError("custom.operator_file", "operator and Hamiltonian dimensions differ");
    }
    const Spectrum s = eigh(HermitianMatrix(hm));
    const StationaryState rho = gibbs(s, cfg.custom.beta);
    const EnergyBasisOperator op = to_energy_basis(om, s);

    ScenarioOutput out;
    Table table = autocorr_table("custom_matrix.csv", op, rho, s.ground_energy(), make_grid(cfg.time), false,
                                 out.summary);
    prepend_meta(table, {{"scenario", "custom_matrix"},
                         {"dim", std::to_string(hm.rows())},
                         {"beta", format_number(cfg.custom.beta)}});
    out.tables.push_back(std::move(table));
    return out;
}

}  // namespace

std::size_t RunSummary::validity_violations() const {
    std::size_t n = 0;
    for (const auto& c : checks) {
        if (c.validity_claimed) n += c.violations;
    }
    return n;
}

ScenarioOutput run_scenario(const ScenarioConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    ScenarioOutput out;
    switch (cfg.scenario) {
        case Scenario::qubit_autocorr: out = run_qubit_autocorr(cfg); break;
        case Scenario::goe_autocorr: out = run_goe_autocorr(cfg); break;
        case Scenario::goe_fidelity: out = run_goe_fidelity(cfg); break;
        case Scenario::response_qubit: out = run_response_qubit(cfg); break;
        case Scenario::qfi_sweep: out = run_qfi_sweep(cfg); break;
        case Scenario::custom_matrix: out = run_custom_matrix(cfg); break;
    }
    out.summary.scenario = std::string(scenario_name(cfg.scenario));
    out.summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

std::string summary_json(const RunSummary& s, const ScenarioConfig& cfg) {
    nlohmann::ordered_json j;
    j["scenario"] = s.scenario;
    j["status"] = s.validity_violations() == 0 ? "ok" : "bound_violation";
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto& e : cfg.resolved) config[e.key] = e.value;
    j["config"] = config;
    nlohmann::ordered_json seeds = nlohmann::ordered_json::object();
    for (const auto& [k, v] : s.seeds) seeds[k] = v;
    j["seeds"] = seeds;
    nlohmann::ordered_json scalars = nlohmann::ordered_json::object();
    for (const auto& [k, v] : s.scalars) scalars[k] = v;
    j["scalars"] = scalars;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : s.checks) {
        j["checks"].push_back({{"curve", c.curve},
                               {"bound", c.bound},
                               {"min_margin", c.min_margin},
                               {"violations", c.violations},
                               {"validity_claimed", c.validity_claimed}});
    }
    j["validity_violations"] = s.validity_violations();
    j["wall_seconds"] = s.wall_seconds;
    j["files"] = s.files;
    return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_outputs(const ScenarioOutput& out, const ScenarioConfig& cfg,
                                                 const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    std::vector<std::filesystem::path> written;
    RunSummary summary = out.summary;
    for (const Table& t : out.tables) {
        const auto path = dir / t.file_name;
        write_text_file(path, to_csv(t));
        written.push_back(path);
        summary.files.push_back(t.file_name);
    }
    const auto json_path = dir / "summary.json";
    write_text_file(json_path, summary_json(summary, cfg));
    written.push_back(json_path);
    return written;
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open matrix file " + path.string());
    std::vector<std::vector<Complex>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::vector<Complex> row;
        Complex z;
        while (ls >> z) row.push_back(z);
        ls.clear();
        std::string rest;
        if (ls >> rest) {
            throw ConfigError("", path.string() + ":" + std::to_string(lineno) + ": cannot parse entry '" + rest + "'");
        }
        rows.push_back(std::move(row));
    }
    const std::size_t d = rows.size();
    if (d == 0) throw ConfigError("", path.string() + ": empty matrix file");
    ComplexMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        if (rows[i].size() != d) throw ConfigError("", path.string() + ": matrix is not square");
        for (std::size_t j = 0; j < d; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return m;
}

}  // namespace opqsl::runner
