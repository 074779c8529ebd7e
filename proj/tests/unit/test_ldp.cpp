#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "sdelab/ldp/action.hpp"
#include "sdelab/ldp/exit_laws.hpp"
#include "sdelab/ldp/hamiltonian.hpp"
#include "sdelab/ldp/legendre.hpp"
#include "sdelab/ldp/minimize.hpp"

using namespace sdelab;
using Catch::Approx;

TEST_CASE("Schilder rate of a straight line", "[ldp][action]") {
    const std::vector<double> a{0.0}, b{2.0};
    const auto line = ActionPath::line(a, b, TimeGrid(0.0, 0.5, 50));
    // (1/2) * (2 / 0.5)^2 * 0.5
    CHECK(schilder_rate(line) == Approx(4.0).epsilon(1e-12));
    const std::vector<double> c{1.0};
    CHECK_THROWS(schilder_rate(ActionPath::line(c, b, TimeGrid(0.0, 1.0, 10))));
    CHECK(fw_rate(SdeModel::brownian(1), line) == Approx(4.0).epsilon(1e-12));
    // The ODE path costs nothing.
    const auto ode = ode_path(SdeModel::ornstein_uhlenbeck(1.0, 1.0), b, TimeGrid(0.0, 1.0, 100));
    CHECK(fw_rate(SdeModel::ornstein_uhlenbeck(1.0, 1.0), ode) == Approx(0.0).margin(1e-20));
    const auto degenerate = SdeModel::ornstein_uhlenbeck(1.0, 0.0);
    CHECK_THROWS_AS(fw_rate(degenerate, line), std::domain_error);
}

TEST_CASE("action path utilities", "[ldp][action]") {
    const auto p = ActionPath::from_function([](double t) { return t * t; }, TimeGrid(0.0, 1.0, 10));
    CHECK(p[10] == Approx(1.0));
    const auto r = p.resampled(TimeGrid(0.0, 1.0, 20));
    CHECK(r[10] == Approx(0.5 * (p[5] + p[5])));
    CHECK(r[11] == Approx(0.5 * (p[5] + p[6])));
    const auto s = p.slice(2, 6);
    CHECK(s.grid.n_steps() == 4);
    CHECK(s[0] == p[2]);
    std::ostringstream os;
    write_csv(os, p);
    CHECK(os.str().rfind("t,x0\n", 0) == 0);
}

TEST_CASE("action gradient matches finite differences", "[ldp][action]") {
    const auto model = SdeModel::scalar([](double x) { return x - x * x * x; },
                                        [](double x) { return 1.0 + 0.3 * std::sin(x); });
    auto path = ActionPath::from_function([](double t) { return -1.0 + 1.2 * t + 0.1 * std::sin(5 * t); },
                                          TimeGrid(0.0, 1.0, 20));
    std::vector<double> grad(path.values.size());
    const double s0 = fw_rate_gradient(model, path, grad);
    CHECK(s0 == Approx(fw_rate(model, path)));
    const double h = 1e-6;
    for (std::size_t k : {1u, 7u, 13u, 19u}) {
        auto plus = path, minus = path;
        plus.values[k] += h;
        minus.values[k] -= h;
        const double fd = (fw_rate(model, plus) - fw_rate(model, minus)) / (2 * h);
        CHECK(grad[k] == Approx(fd).epsilon(1e-4).margin(1e-7));
    }
}

TEST_CASE("Hamilton flow conserves H", "[ldp][hamiltonian]") {
    const auto model = SdeModel::gradient_with_noise(Potential::double_well(), 1.0);
    const HamiltonianState start{{-0.9}, {0.2}};
    const double h0 = hamiltonian(model, start);
    // H = psi^2 / 2 + psi f(phi), f = phi - phi^3.
    CHECK(h0 == Approx(0.02 + 0.2 * (-0.9 + 0.729)));
    const auto flow = hamilton_flow(model, start, 2.0, 2000);
    CHECK(flow.states.size() == 2001);
    CHECK(flow.max_h_drift < 1e-8);
    CHECK_FALSE(flow.flagged);
}

TEST_CASE("Legendre transform of the coin log-MGF", "[ldp][legendre]") {
    std::vector<double> xs, ts;
    for (int i = -40; i <= 40; ++i) xs.push_back(0.01 * i);
    for (int i = -400; i <= 400; ++i) ts.push_back(0.05 * i);
    const auto pair = legendre_transform([](double t) { return std::log(std::cosh(0.5 * t)); }, xs, ts);
    for (std::size_t i = 0; i < xs.size(); ++i) REQUIRE(pair.Lambda_star[i] == Approx(coin_rate(xs[i])).margin(1e-9));
    CHECK(coin_rate(0.1) == Approx(0.6 * std::log(1.2) + 0.4 * std::log(0.8)));
    CHECK(coin_rate(0.1) == Approx(0.0201).margin(1e-4));
    CHECK(pair.convex());
    CHECK(pair(0.0) == Approx(0.0).margin(1e-12));
    CHECK(pair(0.105) == Approx(0.5 * (coin_rate(0.1) + coin_rate(0.11))));
}

TEST_CASE("OU exit rate in finite time", "[ldp][exit]") {
    CHECK(ou_exit_rate(0.0, 1.0, 1.0) == Approx(std::exp(1.0) / (2.0 * std::sinh(1.0))));
    double prev = ou_exit_rate(0.0, 1.0, 0.5);
    for (double T : {1.0, 2.0, 4.0, 8.0}) {
        const double v = ou_exit_rate(0.0, 1.0, T);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(ou_exit_rate(0.0, 1.5, 30.0) == Approx(ou_exit_rate_limit(1.5)).epsilon(1e-12));
    CHECK(ou_exit_rate_limit(1.5) == 2.25);
}

TEST_CASE("minimal action for OU", "[ldp][minimize]") {
    const auto ou = SdeModel::ornstein_uhlenbeck(1.0, 1.0);
    const std::vector<double> a{0.0}, b{1.0};
    const auto m = minimize_action(ou, a, b, 2.0, 400);
    REQUIRE(m.converged);
    CHECK(m.residual < 1e-6);
    CHECK(*m.path.action == Approx(ou_exit_rate(0.0, 1.0, 2.0)).epsilon(1e-2));
    for (std::size_t i = 1; i < m.history.size(); ++i) REQUIRE(m.history[i] <= m.history[i - 1]);
    for (std::size_t k = 0; k <= 400; k += 50) {
        const double s = m.path.grid.node(k);
        CHECK(m.path[k] == Approx(std::sinh(s) / std::sinh(2.0)).margin(5e-3));
    }
    MinimizeOptions few;
    few.max_iter = 1;
    few.tol = 1e-14;
    few.init = PathInit::ode;
    CHECK_FALSE(minimize_action(ou, a, b, 2.0, 400, few).converged);
}

TEST_CASE("quasipotential of the double well", "[ldp][minimize]") {
    const auto model = SdeModel::gradient_with_noise(Potential::double_well(), 1.0);
    const std::vector<double> xs{-1.0}, y{-0.2}, off{-0.5};
    const auto q = quasipotential(model, xs, y, {8.0, 2.0, 4.0});
    CHECK(q.T_values == std::vector<double>{2.0, 4.0, 8.0});
    CHECK(q.converged);
    // 2 (U(y) - U(-1)) with U = x^4/4 - x^2/2.
    const double exact = 2.0 * (std::pow(0.2, 4) / 4 - 0.02 + 0.25);
    CHECK(q.value == Approx(exact).epsilon(0.03));
    for (std::size_t i = 1; i < q.envelope.size(); ++i) CHECK(q.envelope[i] <= q.envelope[i - 1]);
    CHECK_THROWS(quasipotential(model, off, y, {2.0}));
}

TEST_CASE("Eyring-Kramers prefactor for the double well", "[ldp][exit]") {
    const std::vector<double> x{-1.0}, z{0.0};
    const double eps = 0.2;
    // U''(0) = -1, U''(-1) = 2, barrier 1/4.
    const double expected = 2.0 * std::numbers::pi * std::sqrt(0.5) * std::exp(0.5 / eps);
    CHECK(eyring_kramers_time(Potential::double_well(), x, z, eps) == Approx(expected).epsilon(1e-6));
    CHECK_THROWS(eyring_kramers_time(Potential::double_well(), z, x, eps));
}

TEST_CASE("Arrhenius check needs three noise levels", "[ldp][exit]") {
    const std::vector<double> x0{0.0};
    CHECK_THROWS(arrhenius_check(Potential::quadratic(1), {0.5, 0.25}, Domain::interval(-1.0, 1.0), x0, 1.0, {},
                                 GaussianStream(1, 0)));
    ArrheniusOptions opts;
    opts.n_paths = 200;
    opts.h = 1e-2;
    const auto rep = arrhenius_check(Potential::quadratic(1), {1.0, 0.5, 0.25}, Domain::interval(-1.0, 1.0), x0, 1.0,
                                     opts, GaussianStream(1, 0));
    CHECK(rep.eps.size() == 3);
    CHECK(rep.mean_tau[2] > rep.mean_tau[0]);
    for (std::size_t i = 0; i < 3; ++i) CHECK(rep.eps_log_mean[i] == Approx(rep.eps[i] * std::log(rep.mean_tau[i])));
}
