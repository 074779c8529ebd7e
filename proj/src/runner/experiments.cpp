#include "sdelab/runner/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sdelab/core/brownian.hpp"
#include "sdelab/core/stats.hpp"
#include "sdelab/core/stochastic_integrals.hpp"
#include "sdelab/ergodicity/birkhoff.hpp"
#include "sdelab/ergodicity/certificates.hpp"
#include "sdelab/ergodicity/hairer_mattingly.hpp"
#include "sdelab/ergodicity/kernel.hpp"
#include "sdelab/ergodicity/lyapunov.hpp"
#include "sdelab/exit/brownian_laws.hpp"
#include "sdelab/exit/exit_mc.hpp"
#include "sdelab/exit/oracles.hpp"
#include "sdelab/ldp/action.hpp"
#include "sdelab/ldp/exit_laws.hpp"
#include "sdelab/ldp/legendre.hpp"
#include "sdelab/ldp/minimize.hpp"
#include "sdelab/pde/kolmogorov.hpp"
#include "sdelab/pde/semigroup_mc.hpp"
#include "sdelab/runner/expression.hpp"
#include "sdelab/runner/io.hpp"

namespace sdelab {

using json = nlohmann::ordered_json;

double ExperimentContext::param(const std::string& name) const {
    const auto it = config_.params.find(name);
    if (it == config_.params.end()) throw std::out_of_range("experiment parameter '" + name + "' is not defined");
    return it->second;
}

std::size_t ExperimentContext::count(const std::string& name) const {
    const double v = param(name);
    if (v < 0 || std::floor(v) != v) throw std::invalid_argument("parameter '" + name + "' is not a count");
    return static_cast<std::size_t>(v);
}

Potential ExperimentContext::potential() const {
    const auto u = Expression::parse(config_.model.potential);
    const auto du = u.derivative();
    const auto d2u = du.derivative();
    return Potential::scalar([u](double x) { return u(x); }, [du](double x) { return du(x); },
                             [d2u](double x) { return d2u(x); });
}

SdeModel ExperimentContext::model() const {
    const auto& m = config_.model;
    const auto p = [&](const char* key) { return m.params.at(key); };
    if (m.preset == "bm") return SdeModel::brownian(static_cast<std::size_t>(p("dim")));
    if (m.preset == "ou") return SdeModel::ornstein_uhlenbeck(p("theta"), p("sigma"));
    if (m.preset == "gbm") return SdeModel::geometric_brownian(p("r"));
    if (m.preset == "gradient") return SdeModel::gradient_with_noise(potential(), p("noise"));
    throw std::logic_error("experiment " + config_.experiment + " has no configurable model");
}

const std::map<std::string, double>& preset_parameters(const std::string& preset) {
    static const std::map<std::string, std::map<std::string, double>> table = {
        {"bm", {{"dim", 1.0}}},
        {"ou", {{"theta", 1.0}, {"sigma", 1.0}}},
        {"gbm", {{"r", 0.0}}},
        {"gradient", {{"noise", std::numbers::sqrt2}}},
    };
    const auto it = table.find(preset);
    if (it == table.end()) throw std::out_of_range("unknown model preset '" + preset + "'");
    return it->second;
}

namespace {

ParamSpec real(std::string name, double def, double lo, double hi) { return {std::move(name), def, lo, hi, false}; }
ParamSpec integer(std::string name, double def, double lo, double hi) { return {std::move(name), def, lo, hi, true}; }

json estimate_json(const Estimate& e) {
    json j;
    j["value"] = e.value;
    j["std_error"] = e.std_error;
    j["samples"] = e.samples;
    return j;
}

double z_score(const Estimate& e, double exact) {
    if (e.std_error > 0.0) return (e.value - exact) / e.std_error;
    return e.value == exact ? 0.0 : std::numeric_limits<double>::infinity();
}

std::string to_text(const std::function<void(std::ostream&)>& fn) {
    std::ostringstream os;
    fn(os);
    return os.str();
}

ExperimentResult exit_ball(const ExperimentContext& ctx) {
    const SdeModel model = ctx.model();
    const double R = ctx.param("radius");
    std::vector<double> x0(model.n, 0.0);
    x0[0] = ctx.param("x0");
    ExitOptions opts;
    opts.h = ctx.param("h");
    opts.n_paths = ctx.count("n_paths");
    opts.t_max = ctx.param("t_max");
    opts.keep_samples = ctx.param("write_samples") != 0.0;
    opts.exec = ctx.exec();
    const Domain domain =
        model.n == 1 ? Domain::interval(-R, R) : Domain::ball(R, std::vector<double>(model.n, 0.0));
    const auto stats = mc_exit(model, x0, domain, opts, ctx.stream());

    ExperimentResult r;
    r.summary["domain"] = domain.describe();
    r.summary["model"] = model.name;
    r.summary["mean_time"] = stats.mean_time;
    r.summary["std_error"] = stats.time_std_error;
    r.summary["n_paths"] = stats.n_paths;
    r.summary["fraction_censored"] = stats.fraction_censored;
    if (ctx.config().model.preset == "bm") {
        const double exact = ball_exit_expectation(R, x0);
        r.summary["closed_form"] = exact;
        r.summary["abs_error"] = std::abs(stats.mean_time - exact);
    }
    r.files.push_back({"exit_statistics.json", to_text([&](std::ostream& os) { write_json(os, stats); }) + "\n"});
    CsvTable hist({"bin", "boundary_parameter", "count", "frequency"});
    const auto bins = stats.exit_location_histogram.size();
    for (std::size_t b = 0; b < bins; ++b) {
        const double c = static_cast<double>(stats.exit_location_histogram[b]);
        hist.add_row({static_cast<double>(b), (static_cast<double>(b) + 0.5) / static_cast<double>(bins), c,
                      c / static_cast<double>(stats.n_paths)});
    }
    r.files.push_back({"exit_location_histogram.csv", hist.str()});
    if (opts.keep_samples)
        r.files.push_back({"exit_samples.csv", to_text([&](std::ostream& os) { write_samples_csv(os, stats); })});
    if (!stats.valid || stats.fraction_censored >= 1e-3) {
        r.flagged = true;
        r.flag_reason = "censored fraction " + format_number(stats.fraction_censored) + " is not below 1e-3";
    }
    return r;
}

double norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

ExperimentResult recurrence_shell(const ExperimentContext& ctx) {
    const SdeModel model = ctx.model();
    if (model.n < 2) throw std::invalid_argument("recurrence_shell needs dim >= 2");
    const double r_in = ctx.param("r_inner"), r_out = ctx.param("r_outer"), start = ctx.param("start");
    if (!(r_in < start && start < r_out)) throw std::invalid_argument("recurrence_shell: need r_inner < start < r_outer");
    std::vector<double> x0(model.n, 0.0);
    x0[0] = start;
    ExitOptions opts;
    opts.h = ctx.param("h");
    opts.h_max = ctx.param("h_max");
    opts.distance_scale = ctx.param("distance_scale");
    opts.n_paths = ctx.count("n_paths");
    opts.t_max = ctx.param("t_max");
    opts.keep_samples = true;
    opts.exec = ctx.exec();
    const auto stats = mc_exit(model, x0, Domain::shell(r_in, r_out, std::vector<double>(model.n, 0.0)), opts,
                               ctx.stream());
    const double mid = 0.5 * (r_in + r_out);
    const auto hit = stats.functional(
        [&](const ExitSample& s) { return !s.censored && norm(s.location) < mid ? 1.0 : 0.0; });
    const int n = static_cast<int>(model.n);

    ExperimentResult r;
    r.summary["dimension"] = model.n;
    r.summary["hit_frequency"] = hit.value;
    r.summary["std_error"] = hit.std_error;
    r.summary["finite_shell_probability"] = shell_hitting_probability(r_in, r_out, start, n);
    r.summary["infinite_shell_probability"] = ball_hitting_probability(r_in, start, n);
    r.summary["mean_time"] = stats.mean_time;
    r.summary["fraction_censored"] = stats.fraction_censored;
    r.summary["n_paths"] = stats.n_paths;
    CsvTable t({"path_id", "exit_time", "hit_inner", "censored"});
    for (const auto& s : stats.samples)
        t.add_row({static_cast<double>(s.path_id), s.time, !s.censored && norm(s.location) < mid ? 1.0 : 0.0,
                   s.censored ? 1.0 : 0.0});
    r.files.push_back({"shell_exits.csv", t.str()});
    if (stats.fraction_censored >= 1e-3) {
        r.flagged = true;
        r.flag_reason = "censored fraction " + format_number(stats.fraction_censored) + " is not below 1e-3";
    }
    return r;
}

ExperimentResult feynman_kac(const ExperimentContext& ctx) {
    const SdeModel model = SdeModel::brownian(1);
    const double a = ctx.param("half_width"), x = ctx.param("x0");
    const std::vector<double> x0{x};
    ExitOptions opts;
    opts.h = ctx.param("h");
    opts.h_max = ctx.param("h_max");
    opts.distance_scale = ctx.param("distance_scale");
    opts.n_paths = ctx.count("n_paths");
    opts.t_max = ctx.param("t_max");
    opts.lambdas = {ctx.param("lambda1"), ctx.param("lambda2"), ctx.param("lambda3")};
    opts.keep_samples = true;
    opts.exec = ctx.exec();
    const auto stats = mc_exit(model, x0, Domain::interval(-a, a), opts, ctx.stream());
    const auto right = [](const ExitSample& s) { return !s.censored && s.location[0] > 0.0; };

    ExperimentResult r;
    json laplace = json::array();
    CsvTable csv({"lambda", "estimate", "stderr", "exact", "one_sided_estimate", "one_sided_stderr",
                  "one_sided_exact"});
    for (const auto& l : stats.laplace) {
        const double exact = fk_laplace_interval(l.lambda, a, x);
        const auto one = stats.functional(
            [&](const ExitSample& s) { return right(s) ? std::exp(-l.lambda * s.time) : 0.0; });
        const double one_exact = fk_laplace_one_sided(l.lambda, a, x);
        json j;
        j["lambda"] = l.lambda;
        j["estimate"] = estimate_json(l.estimate);
        j["exact"] = exact;
        j["z"] = z_score(l.estimate, exact);
        j["one_sided"] = estimate_json(one);
        j["one_sided_exact"] = one_exact;
        j["one_sided_z"] = z_score(one, one_exact);
        laplace.push_back(j);
        csv.add_row({l.lambda, l.estimate.value, l.estimate.std_error, exact, one.value, one.std_error, one_exact});
    }
    r.summary["laplace"] = laplace;

    const auto p_right = stats.functional([&](const ExitSample& s) { return right(s) ? 1.0 : 0.0; });
    const auto time_right = stats.functional([&](const ExitSample& s) { return right(s) ? s.time : 0.0; });
    const double cond = time_right.value / p_right.value;
    // Delta method for the ratio E[tau 1] / P(right).
    const auto influence = stats.functional(
        [&](const ExitSample& s) { return right(s) ? (s.time - cond) / p_right.value : 0.0; });
    const double time_exact = fk_one_sided_time(a, x);
    const double cond_exact = fk_conditional_mean(a, x);
    json one_sided_time;
    one_sided_time["estimate"] = estimate_json(time_right);
    one_sided_time["exact"] = time_exact;
    one_sided_time["z"] = z_score(time_right, time_exact);
    r.summary["one_sided_time"] = one_sided_time;
    json conditional;
    conditional["estimate"] = cond;
    conditional["std_error"] = influence.std_error;
    conditional["exact"] = cond_exact;
    conditional["z"] = influence.std_error > 0 ? (cond - cond_exact) / influence.std_error : 0.0;
    r.summary["conditional_mean"] = conditional;
    r.summary["mean_time"] = stats.mean_time;
    r.summary["mean_time_exact"] = a * a - x * x;
    r.summary["fraction_censored"] = stats.fraction_censored;
    r.files.push_back({"laplace.csv", csv.str()});
    if (stats.fraction_censored >= 1e-3) {
        r.flagged = true;
        r.flag_reason = "censored fraction " + format_number(stats.fraction_censored) + " is not below 1e-3";
    }
    return r;
}

ExperimentResult arcsine(const ExperimentContext& ctx) {
    const TimeGrid grid(0.0, ctx.param("T"), ctx.count("n_steps"));
    const auto occ = arcsine_occupation(ctx.count("n_paths"), grid, ctx.stream(), ctx.exec());
    std::vector<double> sorted = occ.fractions;
    std::sort(sorted.begin(), sorted.end());
    CsvTable csv({"u", "empirical_cdf", "arcsine_cdf"});
    for (int i = 0; i <= 100; ++i) {
        const double u = i / 100.0;
        const auto below = std::upper_bound(sorted.begin(), sorted.end(), u) - sorted.begin();
        csv.add_row({u, static_cast<double>(below) / static_cast<double>(sorted.size()), arcsine_cdf(u)});
    }
    ExperimentResult r;
    r.summary["ks_statistic"] = occ.ks_statistic;
    r.summary["n_paths"] = occ.fractions.size();
    r.summary["n_steps"] = grid.n_steps();
    r.summary["mean_fraction"] = mean_estimate(occ.fractions).value;
    r.files.push_back({"occupation_cdf.csv", csv.str()});
    return r;
}

ExperimentResult ito_integral_experiment(const ExperimentContext& ctx) {
    const double T = ctx.param("T");
    const std::size_t base = ctx.count("base_steps"), levels = ctx.count("doublings");
    const std::size_t n_paths = ctx.count("n_paths");
    const GaussianStream stream = ctx.stream();
    // errors[p * (levels + 1) + j] for grid j with base * 2^j steps.
    std::vector<double> errors(n_paths * (levels + 1)), squares(n_paths);
    for_each_index(n_paths, ctx.exec(), [&](std::size_t p) {
        GaussianStream s = stream.substream(p);
        const WienerPath coarse = sample_wiener(TimeGrid(0.0, T, base), 1, s);
        const WienerPath fine = refine_wiener_midpoint(coarse, static_cast<int>(levels), s);
        const double w_end = fine.values.back();
        const double exact = 0.5 * w_end * w_end - 0.5 * T;
        for (std::size_t j = 0; j <= levels; ++j) {
            const std::size_t stride = std::size_t{1} << (levels - j);
            WienerPath sub{TimeGrid(0.0, T, base << j), 1, {}};
            sub.values.resize(sub.grid.size());
            for (std::size_t k = 0; k < sub.values.size(); ++k) sub.values[k] = fine.values[k * stride];
            const double ito = ito_integral([&](std::size_t k) { return sub[k]; }, sub);
            errors[p * (levels + 1) + j] = ito - exact;
            if (j == levels) squares[p] = ito * ito;
        }
    });
    ExperimentResult r;
    CsvTable csv({"n_steps", "rms_error", "rms_stderr", "rms_exact"});
    json rows = json::array();
    std::vector<double> rms(levels + 1);
    for (std::size_t j = 0; j <= levels; ++j) {
        std::vector<double> e2(n_paths);
        for (std::size_t p = 0; p < n_paths; ++p) e2[p] = errors[p * (levels + 1) + j] * errors[p * (levels + 1) + j];
        const auto ms = mean_estimate(e2);
        rms[j] = std::sqrt(ms.value);
        const double n = static_cast<double>(base << j);
        const double se = ms.std_error / (2.0 * rms[j]);
        const double exact = std::sqrt(T * (T / n) / 2.0);
        csv.add_row({n, rms[j], se, exact});
        json row;
        row["n_steps"] = base << j;
        row["rms_error"] = rms[j];
        row["rms_stderr"] = se;
        row["rms_exact"] = exact;
        if (j > 0) row["ratio_to_previous"] = rms[j - 1] / rms[j];
        rows.push_back(row);
    }
    r.summary["levels"] = rows;
    const auto iso = mean_estimate(squares);
    const double N = static_cast<double>(base << levels);
    r.summary["isometry"]["estimate"] = estimate_json(iso);
    r.summary["isometry"]["continuum"] = T * T / 2.0;
    r.summary["isometry"]["discrete"] = T * T / 2.0 * (1.0 - 1.0 / N);
    r.summary["isometry"]["z"] = z_score(iso, T * T / 2.0);
    r.files.push_back({"ito_convergence.csv", csv.str()});
    return r;
}

ExperimentResult fokker_planck_stationary(const ExperimentContext& ctx) {
    const Potential U = ctx.potential();
    const SdeModel model = ctx.model();
    const double noise = ctx.config().model.params.at("noise");
    const Grid1D grid(ctx.param("x_min"), ctx.param("x_max"), ctx.count("n_cells"));
    const auto scaled = [&](double x) { return 2.0 * U(x) / (noise * noise); };
    const DensityField pi = stationary_density_gradient(scaled, grid);
    SolverOptions so;
    so.dt = ctx.param("dt");
    const auto held = solve_fokker_planck(model, pi, ctx.param("T_stationary"), BoundaryCondition::neumann_zero, so);
    DensityField uniform{grid, std::vector<double>(grid.size(), 1.0 / (grid.x_max() - grid.x_min())), 0.0};
    const auto relaxed = solve_fokker_planck(model, uniform, ctx.param("T_converge"), BoundaryCondition::neumann_zero, so);

    ExperimentResult r;
    r.summary["stationary_l1_drift"] = l1_distance(held.final(), pi);
    r.summary["uniform_start_l1"] = l1_distance(relaxed.final(), pi);
    r.summary["mass_after_hold"] = held.final().mass();
    r.summary["mass_after_relaxation"] = relaxed.final().mass();
    r.summary["positivity_preserved"] = held.positivity_preserved && relaxed.positivity_preserved;
    r.summary["upwinded_nodes"] = held.upwinded_nodes;
    CsvTable csv({"x", "stationary", "held", "from_uniform"});
    for (std::size_t i = 0; i < grid.size(); ++i)
        csv.add_row({grid.node(i), pi.values[i], held.final().values[i], relaxed.final().values[i]});
    r.files.push_back({"densities.csv", csv.str()});
    if (!held.positivity_preserved || !relaxed.positivity_preserved) {
        r.flagged = true;
        r.flag_reason = "Fokker-Planck solution lost positivity";
    }
    return r;
}

struct OuKernelSetup {
    DiscreteKernel kernel;
    Eigen::VectorXd V;
};

OuKernelSetup ou_kernel(const ExperimentContext& ctx) {
    const SdeModel model = ctx.model();
    const Grid1D grid(ctx.param("x_min"), ctx.param("x_max"), ctx.count("n_nodes") - 1);
    KernelOptions ko;
    ko.exec = ctx.exec();
    DiscreteKernel kernel = discretize_kernel(model, grid, ctx.param("t_step"), ko);
    Eigen::VectorXd V = kernel.sample([](double x) { return x * x; });
    return {std::move(kernel), std::move(V)};
}

ExperimentResult hairer_mattingly(const ExperimentContext& ctx) {
    auto [kernel, V] = ou_kernel(ctx);
    const double theta = ctx.config().model.params.at("theta"), sigma = ctx.config().model.params.at("sigma");
    const double t = ctx.param("t_step");
    const auto drift = verify_geometric_drift(kernel, V);
    ExperimentResult r;
    r.summary["drift"]["gamma"] = drift.gamma;
    r.summary["drift"]["d"] = drift.d;
    r.summary["drift"]["gamma_continuum"] = std::exp(-2.0 * theta * t);
    r.summary["drift"]["d_continuum"] = sigma * sigma / (2.0 * theta) * (1.0 - std::exp(-2.0 * theta * t));
    r.summary["drift"]["feasible"] = drift.feasible;
    r.summary["drift"]["violations"] = count_drift_violations(kernel, V, drift);
    if (!drift.feasible || !(drift.d > 0.0)) {
        r.flagged = true;
        r.flag_reason = "no feasible drift certificate";
        return r;
    }
    const double R = ctx.param("R_factor") * 2.0 * drift.d / (1.0 - drift.gamma);
    const auto minor = verify_minorisation(kernel, R, V, &drift);
    r.summary["minorisation"]["R"] = R;
    r.summary["minorisation"]["alpha"] = minor.alpha;
    r.summary["minorisation"]["small_set_size"] = minor.C.size();
    r.summary["minorisation"]["violations"] = count_minorisation_violations(kernel, minor);
    const double alpha0 = ctx.param("alpha0_fraction") * minor.alpha;
    const double gamma0 = 0.5 * (drift.gamma + 2.0 * drift.d / R + 1.0);
    const auto hm = hm_constants(drift.gamma, drift.d, minor.alpha, R, alpha0, gamma0);
    r.summary["constants"]["alpha0"] = alpha0;
    r.summary["constants"]["gamma0"] = gamma0;
    r.summary["constants"]["beta"] = hm.beta;
    r.summary["constants"]["alpha_bar"] = hm.alpha_bar;
    const auto report = verify_hm_contraction(kernel, V, hm.beta, hm.alpha_bar, ctx.count("n_pairs"), ctx.stream(1));
    r.summary["contraction"]["n_pairs"] = report.n_pairs;
    r.summary["contraction"]["max_ratio"] = report.max_ratio;
    r.summary["contraction"]["violations"] = report.violations;
    r.summary["contraction"]["slack"] = report.slack;

    const auto perron = power_iteration_jentzsch(kernel.matrix());
    Eigen::VectorXd pi = perron.pi0;
    const std::size_t start = std::min<std::size_t>(
        kernel.size() - 1, static_cast<std::size_t>(std::distance(
                               kernel.states().begin(),
                               std::min_element(kernel.states().begin(), kernel.states().end(), [&](double a, double b) {
                                   return std::abs(a - ctx.param("decay_start")) < std::abs(b - ctx.param("decay_start"));
                               }))));
    const auto decay = rho_beta_decay(kernel, V, hm.beta, start, pi, ctx.count("decay_steps"));
    CsvTable csv({"n", "rho_beta_distance", "alpha_bar_bound"});
    for (std::size_t n = 0; n < decay.size(); ++n)
        csv.add_row({static_cast<double>(n), decay[n], decay[0] * std::pow(hm.alpha_bar, static_cast<double>(n))});
    r.files.push_back({"rho_beta_decay.csv", csv.str()});
    return r;
}

ExperimentResult birkhoff_jentzsch(const ExperimentContext& ctx) {
    const double a = ctx.param("diag"), b = ctx.param("offdiag");
    Eigen::MatrixXd m(2, 2);
    m << a, b, b, a;
    const auto diam = projective_diameter(m, ctx.count("n_probe"), ctx.stream(0));
    const double ratio = projective_contraction_ratio(m, ctx.count("n_pairs"), ctx.stream(1));
    ExperimentResult r;
    r.summary["two_by_two"]["diameter"] = diam.delta;
    r.summary["two_by_two"]["diameter_exact"] = 2.0 * std::abs(std::log(a / b));
    r.summary["two_by_two"]["max_contraction_ratio"] = ratio;
    r.summary["two_by_two"]["tanh_bound"] = std::tanh(diam.delta / 4.0);

    const double L = ctx.param("half_width"), t = ctx.param("t_step");
    KernelOptions ko;
    ko.bc = BoundaryCondition::dirichlet_zero;
    ko.exec = ctx.exec();
    const auto kernel = discretize_kernel(SdeModel::brownian(1), Grid1D(-L, L, ctx.count("n_cells")), t, ko);
    const auto jz = power_iteration_jentzsch(kernel.matrix());
    const auto cone = fit_cone_bounds(kernel.matrix());
    json k;
    k["states"] = kernel.size();
    k["lambda0"] = jz.lambda0;
    k["lambda0_continuum"] = std::exp(-std::numbers::pi * std::numbers::pi * t / (8.0 * L * L));
    k["right_residual"] = jz.right_residual;
    k["left_residual"] = jz.left_residual;
    k["iterations"] = jz.iterations;
    k["observed_rate"] = jz.observed_rate;
    k["rate_bound"] = jz.rate_bound;
    k["cone_L"] = cone.L;
    k["cone_violations"] = count_cone_violations(kernel.matrix(), cone);
    r.summary["killed_bm"] = k;
    CsvTable csv({"x", "h0", "pi0"});
    for (std::size_t i = 0; i < kernel.size(); ++i)
        csv.add_row({kernel.states()[i], jz.h0(static_cast<Eigen::Index>(i)), jz.pi0(static_cast<Eigen::Index>(i))});
    r.files.push_back({"perron_vectors.csv", csv.str()});
    return r;
}

ExperimentResult action_ou(const ExperimentContext& ctx) {
    const SdeModel model = ctx.model();
    const double x0 = ctx.param("x0"), y = ctx.param("y"), T = ctx.param("T");
    const std::size_t n = ctx.count("n_steps");
    MinimizeOptions mo;
    mo.tol = ctx.param("tol");
    mo.max_iter = ctx.count("max_iter");
    const std::vector<double> a{x0}, bvec{y};
    const auto min = minimize_action(model, a, bvec, T, n, mo);
    const double theta = ctx.config().model.params.at("theta"), sigma = ctx.config().model.params.at("sigma");
    const double closed = theta * std::pow(y - x0 * std::exp(-theta * T), 2) /
                          (sigma * sigma * (1.0 - std::exp(-2.0 * theta * T)));
    double profile_error = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const double s = min.path.grid.node(k);
        const double phi = (x0 * std::sinh(theta * (T - s)) + y * std::sinh(theta * s)) / std::sinh(theta * T);
        profile_error = std::max(profile_error, std::abs(min.path[k] - phi));
    }
    // Free Brownian case: the straight line is the exact minimiser.
    const auto free = minimize_action(SdeModel::brownian(1), a, bvec, T, n, mo);

    ExperimentResult r;
    r.summary["action"] = *min.path.action;
    r.summary["closed_form"] = closed;
    r.summary["abs_error"] = std::abs(*min.path.action - closed);
    r.summary["profile_max_error"] = profile_error;
    r.summary["converged"] = min.converged;
    r.summary["iterations"] = min.iterations;
    r.summary["residual"] = min.residual;
    r.summary["free_action"] = *free.path.action;
    r.summary["free_closed_form"] = (y - x0) * (y - x0) / (2.0 * T);
    r.summary["free_converged"] = free.converged;
    r.files.push_back({"minimizer.csv", to_text([&](std::ostream& os) { write_csv(os, min.path); })});
    if (!min.converged || !free.converged) {
        r.flagged = true;
        r.flag_reason = "action minimisation did not converge";
    }
    return r;
}

std::vector<double> geometric_list(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

ExperimentResult quasipotential_experiment(const ExperimentContext& ctx) {
    const SdeModel model = ctx.model();
    const Potential U = ctx.potential();
    const double noise = ctx.config().model.params.at("noise");
    const std::vector<double> xs{ctx.param("x_star")}, y{ctx.param("y")};
    QuasipotentialOptions qo;
    qo.dt = ctx.param("dt");
    qo.minimize.tol = ctx.param("tol");
    const auto T_list = geometric_list(ctx.param("T_min"), ctx.param("T_max"), ctx.count("n_T"));
    const auto q = quasipotential(model, xs, y, T_list, qo);
    // In 1D the cheapest path climbs to the highest point of U between x* and y.
    double u_max = std::max(U(xs[0]), U(y[0]));
    for (int i = 1; i < 4000; ++i) u_max = std::max(u_max, U(xs[0] + (y[0] - xs[0]) * i / 4000.0));
    const double reversible = 2.0 * (u_max - U(xs[0])) / (noise * noise);
    ExperimentResult r;
    r.summary["value"] = q.value;
    r.summary["minimizing_T"] = q.minimizing_T;
    r.summary["reversible_value"] = reversible;
    r.summary["relative_error"] = std::abs(q.value - reversible) / std::abs(reversible);
    r.summary["converged"] = q.converged;
    CsvTable csv({"T", "action", "envelope"});
    for (std::size_t i = 0; i < q.T_values.size(); ++i) csv.add_row({q.T_values[i], q.actions[i], q.envelope[i]});
    r.files.push_back({"action_vs_T.csv", csv.str()});
    r.files.push_back({"minimizer.csv", to_text([&](std::ostream& os) { write_csv(os, q.path); })});
    if (!q.converged) {
        r.flagged = true;
        r.flag_reason = "an action minimisation in the T sweep did not converge";
    }
    return r;
}

ExperimentResult arrhenius(const ExperimentContext& ctx) {
    const Potential U = ctx.potential();
    const double a = ctx.param("half_width"), x = ctx.param("x0");
    const double v_bar = 2.0 * (std::min(U(-a), U(a)) - U(x));
    if (!(v_bar > 0.0)) throw std::invalid_argument("arrhenius: U(x0) must lie below U at both ends of the interval");
    ArrheniusOptions ao;
    ao.h = ctx.param("h");
    ao.n_paths = ctx.count("n_paths");
    ao.t_max_factor = ctx.param("t_max_factor");
    ao.max_censored = ctx.param("max_censored");
    ao.exec = ctx.exec();
    const std::vector<double> x0{x};
    const auto rep = arrhenius_check(U, {ctx.param("eps1"), ctx.param("eps2"), ctx.param("eps3")},
                                     Domain::interval(-a, a), x0, v_bar, ao, ctx.stream());
    ExperimentResult r;
    r.summary["v_bar"] = rep.v_bar;
    r.summary["intercept"] = rep.intercept;
    r.summary["slope"] = rep.slope;
    r.summary["monotone"] = rep.monotone;
    r.summary["relative_error_smallest"] = rep.relative_error_smallest;
    r.summary["eps"] = rep.eps;
    r.summary["eps_log_mean_tau"] = rep.eps_log_mean;
    CsvTable csv({"eps", "eps_log_mean_tau", "stderr", "mean_tau", "mean_tau_stderr", "fraction_censored"});
    for (std::size_t i = 0; i < rep.eps.size(); ++i)
        csv.add_row({rep.eps[i], rep.eps_log_mean[i], rep.eps_log_stderr[i], rep.mean_tau[i], rep.std_error[i],
                     rep.fraction_censored[i]});
    r.files.push_back({"arrhenius.csv", csv.str()});
    return r;
}

ExperimentResult eyring_kramers(const ExperimentContext& ctx) {
    const Potential U = ctx.potential();
    const double eps = ctx.param("eps");
    const std::vector<double> xs{ctx.param("x_star")}, zs{ctx.param("z_star")};
    const double target = ctx.param("target");
    if (!(xs[0] < zs[0] && zs[0] < target)) throw std::invalid_argument("eyring_kramers: need x_star < z_star < target");
    const double formula = eyring_kramers_time(U, xs, zs, eps);
    ExitOptions opts;
    opts.h = ctx.param("h");
    opts.n_paths = ctx.count("n_paths");
    opts.t_max = ctx.param("t_max");
    opts.exec = ctx.exec();
    const auto model = SdeModel::gradient_with_noise(U, std::sqrt(eps));
    const auto stats = mc_exit(model, xs, Domain::half_space(target, 0, Domain::Side::below), opts, ctx.stream());
    ExperimentResult r;
    r.summary["eps"] = eps;
    r.summary["mean_time"] = stats.mean_time;
    r.summary["std_error"] = stats.time_std_error;
    r.summary["formula"] = formula;
    r.summary["ratio"] = stats.mean_time / formula;
    r.summary["fraction_censored"] = stats.fraction_censored;
    r.files.push_back({"exit_statistics.json", to_text([&](std::ostream& os) { write_json(os, stats); }) + "\n"});
    if (!stats.valid || stats.fraction_censored >= 1e-3) {
        r.flagged = true;
        r.flag_reason = "censored fraction " + format_number(stats.fraction_censored) + " is not below 1e-3";
    }
    return r;
}

json certify(const std::string& name, const DiscreteKernel& kernel, const Eigen::VectorXd& V, std::size_t& total) {
    json j;
    j["kernel"] = name;
    j["states"] = kernel.size();
    const auto drift = verify_geometric_drift(kernel, V);
    j["drift"]["gamma"] = drift.gamma;
    j["drift"]["d"] = drift.d;
    j["drift"]["feasible"] = drift.feasible;
    const auto dv = count_drift_violations(kernel, V, drift);
    j["drift"]["violations"] = dv;
    total += dv;
    if (drift.feasible) {
        std::vector<double> sorted(V.data(), V.data() + V.size());
        std::sort(sorted.begin(), sorted.end());
        const double R = std::max(4.0 * drift.d / (1.0 - drift.gamma), sorted[sorted.size() / 2]);
        const auto m = verify_minorisation(kernel, R, V, &drift);
        const auto mv = count_minorisation_violations(kernel, m);
        j["minorisation"]["R"] = R;
        j["minorisation"]["alpha"] = m.alpha;
        j["minorisation"]["small_set_size"] = m.C.size();
        j["minorisation"]["violations"] = mv;
        total += mv;
    }
    if ((kernel.matrix().array() > 0.0).all()) {
        const auto cone = fit_cone_bounds(kernel.matrix());
        const auto cv = count_cone_violations(kernel.matrix(), cone);
        j["cone"]["L"] = cone.L;
        j["cone"]["violations"] = cv;
        total += cv;
    } else {
        j["cone"] = "skipped: kernel has zero entries";
    }
    return j;
}

ExperimentResult certificate_suite(const ExperimentContext& ctx) {
    const std::size_t nodes = ctx.count("n_nodes");
    const double t = ctx.param("t_step");
    KernelOptions pde;
    pde.exec = ctx.exec();
    KernelOptions mc = pde;
    mc.method = KernelMethod::mc;
    mc.mc_paths = ctx.count("mc_paths");
    mc.seed = ctx.config().seed;
    KernelOptions killed = pde;
    killed.bc = BoundaryCondition::dirichlet_zero;
    const auto quad = [](double x) { return 1.0 + x * x; };

    std::size_t total = 0;
    json list = json::array();
    const Grid1D ou_grid(-5.0, 5.0, nodes - 1);
    const auto ou = SdeModel::ornstein_uhlenbeck(1.0, 1.0);
    const auto k1 = discretize_kernel(ou, ou_grid, t, pde);
    list.push_back(certify("ou_pde", k1, k1.sample(quad), total));
    const auto k2 = discretize_kernel(ou, ou_grid, t, mc);
    list.push_back(certify("ou_mc", k2, k2.sample(quad), total));
    const auto k3 = discretize_kernel(SdeModel::gradient(Potential::double_well()), Grid1D(-3.0, 3.0, nodes - 1), t, pde);
    list.push_back(certify("double_well_pde", k3, k3.sample(quad), total));
    const auto k4 = discretize_kernel(SdeModel::brownian(1), Grid1D(-1.0, 1.0, nodes - 1), 0.1, killed);
    list.push_back(certify("killed_bm_pde", k4, k4.sample(quad), total));
    Eigen::MatrixXd w(2, 2);
    w << 2.0, 1.0, 1.0, 2.0;
    const auto k5 = DiscreteKernel::row_normalized(w);
    list.push_back(certify("two_state", k5, k5.sample(quad), total));

    ExperimentResult r;
    r.summary["certificates"] = list;
    r.summary["total_violations"] = total;
    if (total != 0) {
        r.flagged = true;
        r.flag_reason = std::to_string(total) + " certificate entries failed the recheck";
    }
    return r;
}

ExperimentResult gbm_exit_experiment(const ExperimentContext& ctx) {
    const SdeModel model = ctx.model();
    const double rr = ctx.config().model.params.at("r");
    const double a = ctx.param("a"), b = ctx.param("b"), x = ctx.param("x0");
    ExitOptions opts;
    opts.h = ctx.param("h");
    opts.n_paths = ctx.count("n_paths");
    opts.t_max = ctx.param("t_max");
    opts.keep_samples = true;
    opts.exec = ctx.exec();
    const std::vector<double> x0{x};
    const auto stats = mc_exit(model, x0, Domain::interval(a, b), opts, ctx.stream());
    const auto p_b = stats.functional([&](const ExitSample& s) { return !s.censored && s.location[0] >= x ? 1.0 : 0.0; });
    ExperimentResult r;
    r.summary["p_hit_b_first"] = estimate_json(p_b);
    if (std::abs(rr - 0.5) > 1e-12) {
        const auto exact = gbm_exit(rr, a, b, x);
        r.summary["p_hit_b_first_exact"] = exact.p_hit_b_first;
        r.summary["z"] = z_score(p_b, exact.p_hit_b_first);
    }
    r.summary["mean_time"] = stats.mean_time;
    r.summary["fraction_censored"] = stats.fraction_censored;
    r.files.push_back({"exit_statistics.json", to_text([&](std::ostream& os) { write_json(os, stats); }) + "\n"});
    if (stats.fraction_censored >= 1e-3) {
        r.flagged = true;
        r.flag_reason = "censored fraction " + format_number(stats.fraction_censored) + " is not below 1e-3";
    }
    return r;
}

ExperimentResult line_hitting(const ExperimentContext& ctx) {
    LineHittingOptions lo;
    lo.t_max = ctx.param("t_max");
    lo.h_max = ctx.param("h_max");
    lo.exec = ctx.exec();
    const auto s = line_hitting_2d(ctx.count("n_paths"), ctx.param("h"), ctx.stream(), lo);
    ExperimentResult r;
    r.summary["n_paths"] = s.n_paths;
    r.summary["fraction_censored"] = s.fraction_censored;
    r.summary["median_tau"] = quantile(s.tau, 0.5);
    r.summary["median_tau_exact"] = line_hitting_median();
    r.summary["ks_tau"] = ks_statistic(s.tau, line_hitting_cdf);
    r.summary["ks_w2_cauchy"] = ks_statistic(s.w2, cauchy_cdf);
    CsvTable csv({"tau", "w2"});
    for (std::size_t i = 0; i < s.tau.size(); ++i) csv.add_row({s.tau[i], s.w2[i]});
    r.files.push_back({"hitting_samples.csv", csv.str()});
    return r;
}

ExperimentResult lyapunov_report(const ExperimentContext& ctx) {
    const SdeModel model = ctx.model();
    if (model.n != 1) throw std::invalid_argument("lyapunov_report needs a scalar model");
    const Grid1D grid(ctx.param("x_min"), ctx.param("x_max"), ctx.count("n_cells"));
    const auto rep = mt_lyapunov_report(model, [](double x) { return 1.0 + x * x; }, grid);
    ExperimentResult r;
    r.summary["V"] = "1 + x^2";
    r.summary["norm_like"] = rep.norm_like;
    r.summary["fit_slope"] = rep.fit_slope;
    r.summary["fit_intercept"] = rep.fit_intercept;
    json crit = json::array();
    for (const auto& c : rep.criteria) {
        json j;
        j["name"] = c.name;
        j["inequality"] = c.inequality;
        j["c"] = c.c;
        j["d"] = c.d;
        if (c.has_set) j["set"] = {c.c_lo, c.c_hi};
        j["feasible"] = c.feasible;
        j["max_violation"] = c.max_violation;
        crit.push_back(j);
    }
    r.summary["criteria"] = crit;
    r.summary["topological_conditions"] = rep.topological_conditions;
    CsvTable csv({"x", "V", "LV"});
    for (std::size_t i = 0; i < rep.x.size(); ++i) csv.add_row({rep.x[i], rep.V[i], rep.LV[i]});
    r.files.push_back({"generator_on_V.csv", csv.str()});
    return r;
}

ExperimentResult legendre_coin(const ExperimentContext& ctx) {
    const std::size_t nx = ctx.count("n_x"), nt = ctx.count("n_t");
    const double dmax = ctx.param("delta_max"), tmax = ctx.param("t_max");
    std::vector<double> xs(nx), ts(nt);
    for (std::size_t i = 0; i < nx; ++i) xs[i] = -dmax + 2.0 * dmax * static_cast<double>(i) / static_cast<double>(nx - 1);
    for (std::size_t i = 0; i < nt; ++i) ts[i] = -tmax + 2.0 * tmax * static_cast<double>(i) / static_cast<double>(nt - 1);
    const auto pair = legendre_transform([](double t) { return std::log(std::cosh(t / 2.0)); }, xs, ts);
    double err = 0.0;
    CsvTable csv({"x", "rate_numeric", "rate_exact", "t_star"});
    for (std::size_t i = 0; i < nx; ++i) {
        err = std::max(err, std::abs(pair.Lambda_star[i] - coin_rate(xs[i])));
        csv.add_row({xs[i], pair.Lambda_star[i], coin_rate(xs[i]), pair.t_star[i]});
    }
    ExperimentResult r;
    r.summary["max_abs_error"] = err;
    r.summary["convex"] = pair.convex();
    r.summary["rate_at_0.1"] = pair(0.1);
    r.summary["rate_at_0.1_exact"] = coin_rate(0.1);
    r.files.push_back({"rate_function.csv", csv.str()});
    return r;
}

ExperimentResult kolmogorov_ou(const ExperimentContext& ctx) {
    const SdeModel model = ctx.model();
    const double theta = ctx.config().model.params.at("theta"), sigma = ctx.config().model.params.at("sigma");
    const double T = ctx.param("T");
    const Grid1D grid(ctx.param("x_min"), ctx.param("x_max"), ctx.count("n_cells"));
    const auto phi0 = grid.sample([](double x) { return x * x; });
    SolverOptions so;
    so.dt = ctx.param("dt");
    const auto hist = solve_backward_kolmogorov(model, phi0, T, grid, BoundaryCondition::neumann_zero, so);
    const double decay = std::exp(-2.0 * theta * T), var = sigma * sigma / (2.0 * theta) * (1.0 - decay);
    const auto exact = [&](double x) { return x * x * decay + var; };
    const double inner = ctx.param("check_radius");
    double err = 0.0;
    CsvTable csv({"x", "u", "exact"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.node(i);
        if (std::abs(x) <= inner) err = std::max(err, std::abs(hist.final().values[i] - exact(x)));
        csv.add_row({x, hist.final().values[i], exact(x)});
    }
    SemigroupOptions mo;
    mo.n_paths = ctx.count("mc_paths");
    mo.n_steps = ctx.count("mc_steps");
    mo.exec = ctx.exec();
    const double xq = ctx.param("mc_x");
    const auto mc = mc_semigroup(model, [](double x) { return x * x; }, xq, T, mo, ctx.stream());
    ExperimentResult r;
    r.summary["pde_max_error"] = err;
    r.summary["mc_estimate"] = estimate_json(mc);
    r.summary["mc_exact"] = exact(xq);
    r.summary["mc_z"] = z_score(mc, exact(xq));
    r.files.push_back({"backward_solution.csv", csv.str()});
    return r;
}

std::vector<Experiment> build_registry() {
    std::vector<Experiment> reg;
    reg.push_back({"exit_ball", "Mean exit time of Brownian motion from a ball", 1, {"bm", "ou", "gradient"},
                   {{"dim", 2.0}}, "x^2/2",
                   {real("radius", 1.0, 1e-6, 1e6), real("x0", 0.0, -1e6, 1e6), real("h", 1e-3, 1e-8, 1.0),
                    integer("n_paths", 10000, 1, 1e8), real("t_max", 50.0, 1e-6, 1e12),
                    integer("write_samples", 0, 0, 1)},
                   exit_ball});
    reg.push_back({"recurrence_shell", "Probability of hitting the inner ball before the outer shell", 2, {"bm"},
                   {{"dim", 3.0}}, "",
                   {real("r_inner", 1.0, 1e-6, 1e6), real("r_outer", 64.0, 1e-6, 1e9), real("start", 2.0, 1e-6, 1e9),
                    real("h", 1e-4, 1e-10, 1.0), real("h_max", 100.0, 0.0, 1e9), real("distance_scale", 5.0, 1.0, 100.0),
                    integer("n_paths", 10000, 1, 1e8), real("t_max", 1e7, 1e-6, 1e15)},
                   recurrence_shell});
    reg.push_back({"feynman_kac", "Laplace transform of the exit time of Brownian motion from an interval", 3, {}, {}, "",
                   {real("half_width", 1.0, 1e-6, 1e6), real("x0", 0.0, -1e6, 1e6), real("lambda1", 0.5, 0.0, 1e6),
                    real("lambda2", 1.0, 0.0, 1e6), real("lambda3", 2.0, 0.0, 1e6), real("h", 1e-6, 1e-12, 1.0),
                    real("h_max", 1e-2, 0.0, 1.0), real("distance_scale", 5.0, 1.0, 100.0),
                    integer("n_paths", 10000, 1, 1e8), real("t_max", 100.0, 1e-6, 1e12)},
                   feynman_kac});
    reg.push_back({"arcsine", "Occupation time of the positive half line", 4, {}, {}, "",
                   {integer("n_paths", 10000, 1, 1e8), integer("n_steps", 1000, 1, 1e8), real("T", 1.0, 1e-9, 1e9)},
                   arcsine});
    reg.push_back({"ito_integral", "Left-point sums of W dW under grid refinement and the isometry", 5, {}, {}, "",
                   {integer("n_paths", 4000, 2, 1e8), integer("base_steps", 64, 1, 1e6), integer("doublings", 3, 1, 12),
                    real("T", 1.0, 1e-9, 1e9)},
                   ito_integral_experiment});
    reg.push_back({"fokker_planck_stationary", "Stationarity of e^{-U}/Z and relaxation from a uniform start", 6,
                   {"gradient"}, {}, "x^2/2",
                   {real("x_min", -8.0, -1e6, 1e6), real("x_max", 8.0, -1e6, 1e6), integer("n_cells", 1600, 2, 1e7),
                    real("dt", 1e-2, 1e-9, 10.0), real("T_stationary", 10.0, 0.0, 1e6),
                    real("T_converge", 20.0, 0.0, 1e6)},
                   fokker_planck_stationary});
    const std::vector<ParamSpec> ou_grid = {real("x_min", -5.0, -1e6, 1e6), real("x_max", 5.0, -1e6, 1e6),
                                            integer("n_nodes", 201, 3, 5000), real("t_step", 1.0, 1e-6, 1e3)};
    auto hm_params = ou_grid;
    for (auto p : {real("R_factor", 2.0, 1.000001, 1e6), real("alpha0_fraction", 0.5, 1e-6, 0.999999),
                   integer("n_pairs", 1000, 1, 1e7), real("decay_start", 3.0, -1e6, 1e6),
                   integer("decay_steps", 30, 1, 100000)})
        hm_params.push_back(p);
    reg.push_back({"hairer_mattingly", "Drift, minorisation and weighted total variation contraction of the OU kernel",
                   7, {"ou"}, {}, "", hm_params, hairer_mattingly});
    reg.push_back({"birkhoff_jentzsch", "Projective contraction of a 2x2 kernel and Perron vectors of killed BM", 8, {},
                   {}, "",
                   {real("diag", 2.0, 1e-9, 1e9), real("offdiag", 1.0, 1e-9, 1e9), integer("n_probe", 1000, 0, 1e7),
                    integer("n_pairs", 10000, 1, 1e7), real("half_width", 1.0, 1e-6, 1e6), real("t_step", 0.1, 1e-6, 1e3),
                    integer("n_cells", 100, 3, 5000)},
                   birkhoff_jentzsch});
    reg.push_back({"action_ou", "Minimal Freidlin-Wentzell action of the OU process", 9, {"ou"}, {}, "",
                   {real("x0", 0.0, -1e6, 1e6), real("y", 1.0, -1e6, 1e6), real("T", 1.0, 1e-6, 1e6),
                    integer("n_steps", 2000, 2, 1e6), real("tol", 1e-6, 1e-14, 1.0), integer("max_iter", 2000, 1, 1e7)},
                   action_ou});
    reg.push_back({"quasipotential", "Quasipotential of a double well as an infimum over travel times", 10,
                   {"gradient"}, {{"noise", 1.0}}, "x^4/4 - x^2/2",
                   {real("x_star", -1.0, -1e6, 1e6), real("y", 0.0, -1e6, 1e6), real("T_min", 2.0, 1e-3, 1e4),
                    real("T_max", 20.0, 1e-3, 1e4), integer("n_T", 6, 1, 1000), real("dt", 5e-3, 1e-6, 1.0),
                    real("tol", 1e-6, 1e-14, 1.0)},
                   quasipotential_experiment});
    reg.push_back({"arrhenius", "eps log E[tau] against the quasipotential barrier", 11, {"gradient"}, {}, "x^2/2",
                   {real("eps1", 0.25, 1e-6, 1e6), real("eps2", 0.167, 1e-6, 1e6), real("eps3", 0.125, 1e-6, 1e6),
                    real("half_width", 1.0, 1e-6, 1e6), real("x0", 0.0, -1e6, 1e6), real("h", 1e-2, 1e-8, 1.0),
                    integer("n_paths", 1000, 2, 1e8), real("t_max_factor", 50.0, 1.0, 1e6),
                    real("max_censored", 0.01, 0.0, 1.0)},
                   arrhenius});
    reg.push_back({"eyring_kramers", "Mean transition time between the wells against the prefactor formula", 12,
                   {"gradient"}, {}, "x^4/4 - x^2/2",
                   {real("eps", 0.15, 1e-6, 1e6), real("x_star", -1.0, -1e6, 1e6), real("z_star", 0.0, -1e6, 1e6),
                    real("target", 0.9, -1e6, 1e6), real("h", 2e-3, 1e-8, 1.0), integer("n_paths", 500, 1, 1e8),
                    real("t_max", 1e4, 1e-6, 1e12)},
                   eyring_kramers});
    reg.push_back({"certificate_suite", "Entrywise recheck of drift, minorisation and cone certificates", 13, {}, {}, "",
                   {integer("n_nodes", 201, 3, 5000), real("t_step", 1.0, 1e-6, 1e3), integer("mc_paths", 2000, 1, 1e7)},
                   certificate_suite});
    reg.push_back({"gbm_exit", "Exit of geometric Brownian motion from an interval", 0, {"gbm"}, {}, "",
                   {real("a", 0.5, 1e-9, 1e9), real("b", 2.0, 1e-9, 1e9), real("x0", 1.0, 1e-9, 1e9),
                    real("h", 1e-3, 1e-8, 1.0), integer("n_paths", 4000, 1, 1e8), real("t_max", 200.0, 1e-6, 1e12)},
                   gbm_exit_experiment});
    reg.push_back({"line_hitting", "Hitting time and position of a line by planar Brownian motion", 0, {}, {}, "",
                   {integer("n_paths", 4000, 1, 1e8), real("h", 1e-4, 1e-10, 1.0), real("h_max", 1e4, 0.0, 1e9),
                    real("t_max", 1e6, 1.0, 1e15)},
                   line_hitting});
    reg.push_back({"lyapunov_report", "Lyapunov criteria for V = 1 + x^2", 0, {"ou", "bm", "gradient"}, {}, "x^2/2",
                   {real("x_min", -10.0, -1e6, 1e6), real("x_max", 10.0, -1e6, 1e6), integer("n_cells", 400, 4, 1e7)},
                   lyapunov_report});
    reg.push_back({"legendre_coin", "Numerical Legendre transform of the coin log-moment generating function", 0, {}, {},
                   "",
                   {real("delta_max", 0.45, 1e-6, 0.499), integer("n_x", 91, 2, 1e6), real("t_max", 40.0, 1e-3, 700.0),
                    integer("n_t", 2001, 3, 1e7)},
                   legendre_coin});
    reg.push_back({"kolmogorov_ou", "Backward Kolmogorov equation for x^2 under OU against the closed form", 0, {"ou"},
                   {}, "",
                   {real("x_min", -6.0, -1e6, 1e6), real("x_max", 6.0, -1e6, 1e6), integer("n_cells", 600, 2, 1e7),
                    real("dt", 1e-3, 1e-9, 10.0), real("T", 1.0, 0.0, 1e6), real("check_radius", 3.0, 0.0, 1e6),
                    integer("mc_paths", 10000, 1, 1e8), integer("mc_steps", 1000, 1, 1e8), real("mc_x", 1.0, -1e6, 1e6)},
                   kolmogorov_ou});
    return reg;
}

}  // namespace

const std::vector<Experiment>& experiment_registry() {
    static const std::vector<Experiment> reg = build_registry();
    return reg;
}

const Experiment& find_experiment(const std::string& name) {
    for (const auto& e : experiment_registry())
        if (e.name == name) return e;
    throw std::out_of_range("unknown experiment '" + name + "'");
}

ExperimentConfig default_config(const std::string& experiment, std::uint64_t seed) {
    ConfigDocument doc;
    doc.sections[""]["experiment"] = ConfigValue{experiment, 1, 1};
    doc.sections[""]["seed"] = ConfigValue{std::to_string(seed), 1, 1};
    return to_experiment_config(doc);
}

ExperimentResult run_experiment(const ExperimentConfig& config, Execution exec) {
    const Experiment& e = find_experiment(config.experiment);
    ExperimentContext ctx(config, exec);
    return e.run(ctx);
}

}  // namespace sdelab
