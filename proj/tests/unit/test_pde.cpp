#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "sdelab/core/sde_model.hpp"
#include "sdelab/pde/closed_forms.hpp"
#include "sdelab/pde/generator.hpp"
#include "sdelab/pde/grid.hpp"
#include "sdelab/pde/kolmogorov.hpp"
#include "sdelab/pde/semigroup_mc.hpp"

using namespace sdelab;
using Catch::Approx;

TEST_CASE("grid basics", "[pde][grid]") {
    Grid1D g(-1.0, 1.0, 4);
    CHECK(g.size() == 5);
    CHECK(g.dx() == 0.5);
    CHECK(g.node(4) == 1.0);
    CHECK(g.nearest(0.3) == 3);
    CHECK(g.nearest(-9.0) == 0);
    const auto w = g.weights();
    CHECK(w.front() == 0.25);
    CHECK(std::accumulate(w.begin(), w.end(), 0.0) == Approx(2.0));
    CHECK_THROWS(Grid1D(0.0, 1.0, 1));
    CHECK(parse_boundary_condition(to_string(BoundaryCondition::natural)) == BoundaryCondition::natural);
    CHECK_THROWS(parse_boundary_condition("periodic"));
}

TEST_CASE("generator of x^2 under OU", "[pde][generator]") {
    const auto ou = SdeModel::ornstein_uhlenbeck(2.0, 0.5);
    const Grid1D g(-2.0, 2.0, 40);
    const auto phi = g.sample([](double x) { return x * x; });
    for (std::size_t i = 1; i < g.n_cells(); ++i) {
        const double x = g.node(i);
        // L x^2 = -2 theta x^2 + sigma^2.
        CHECK(apply_generator(ou, phi, g, i) == Approx(-4.0 * x * x + 0.25).margin(1e-10));
    }
    CHECK_THROWS_AS(apply_generator(ou, phi, g, 0), std::out_of_range);
    const auto bm = SdeModel::brownian(3);
    const std::vector<double> x{0.3, -0.2, 0.5};
    const auto r2 = [](std::span<const double> y) { return y[0] * y[0] + y[1] * y[1] + y[2] * y[2]; };
    CHECK(apply_generator(bm, r2, x) == Approx(3.0).epsilon(1e-5));
}

TEST_CASE("adjoint generator annihilates the gradient stationary density", "[pde][generator]") {
    const auto model = SdeModel::gradient(Potential::quadratic(1));
    const Grid1D g(-6.0, 6.0, 1200);
    DensityField rho{g, g.sample([](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi); }), 0};
    for (std::size_t i = 10; i < g.n_cells() - 10; i += 50) CHECK(std::abs(apply_adjoint_generator(model, rho, i)) < 1e-4);
}

TEST_CASE("tridiagonal solve agrees with multiplication", "[pde]") {
    Tridiagonal m{{0, -1, -1, -1}, {4, 4, 4, 4}, {-1, -1, -1, 0}};
    std::vector<double> x{1, 2, 3, 4}, y(4);
    m.multiply(x, y);
    TridiagonalSolver(m).solve(y);
    for (int i = 0; i < 4; ++i) CHECK(y[i] == Approx(x[i]));
    const auto t = m.transposed();
    CHECK(t.upper[0] == m.lower[1]);
}

TEST_CASE("discrete generator has generator structure", "[pde][operator]") {
    const auto model = SdeModel::gradient(Potential::double_well());
    for (auto bc : {BoundaryCondition::neumann_zero, BoundaryCondition::natural}) {
        KolmogorovOperator op(model, Grid1D(-3.0, 3.0, 60), bc);
        const auto& a = op.matrix();
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double lo = i > 0 ? a.lower[i] : 0.0, up = i + 1 < a.size() ? a.upper[i] : 0.0;
            REQUIRE(lo >= 0.0);
            REQUIRE(up >= 0.0);
            REQUIRE(std::abs(lo + a.diag[i] + up) < 1e-9 * (1 + std::abs(a.diag[i])));
        }
    }
    KolmogorovOperator killed(model, Grid1D(-3.0, 3.0, 60), BoundaryCondition::dirichlet_zero);
    CHECK(killed.matrix().diag[0] == 0.0);
    std::vector<double> v(61, 1.0);
    CHECK_THROWS_AS(killed.explicit_step(v, 10.0, false), CflError);
}

TEST_CASE("heat equation from a narrow start follows the heat kernel", "[pde][fp]") {
    const auto bm = SdeModel::brownian(1);
    const Grid1D g(-8.0, 8.0, 800);
    const auto rho0 = delta_density(g, 0.0);
    SolverOptions so;
    so.dt = 1e-3;
    const auto hist = solve_fokker_planck(bm, rho0, 1.0, BoundaryCondition::neumann_zero, so);
    // The smoothed start adds (2 dx)^2 to the variance.
    const double var = 1.0 + 4.0 * g.dx() * g.dx();
    CHECK(hist.final().mass() == Approx(1.0).margin(1e-10));
    CHECK(hist.final().variance() == Approx(var).epsilon(2e-3));
    CHECK(l1_distance(hist.final(), [&](double x) { return heat_kernel(var, x); }) < 5e-3);
    CHECK(hist.positivity_preserved);
}

TEST_CASE("OU density variance follows the closed form", "[pde][fp]") {
    const auto ou = SdeModel::ornstein_uhlenbeck(1.0, 1.0);
    const Grid1D g(-6.0, 6.0, 1200);
    SolverOptions so;
    so.dt = 5e-4;
    const auto hist = solve_fokker_planck(ou, delta_density(g, 0.0), 0.5, BoundaryCondition::natural, so);
    const double s0 = 4.0 * g.dx() * g.dx();
    CHECK(hist.final().variance() == Approx(ou_variance(0.5) + s0 * std::exp(-1.0)).epsilon(5e-3));
}

TEST_CASE("killing removes mass and the survivors match the image solution", "[pde][fp]") {
    const auto bm = SdeModel::brownian(1);
    const double H = 1.0;
    const Grid1D g(-8.0, H, 900);
    SolverOptions so;
    so.dt = 1e-3;
    const auto hist = solve_fokker_planck(bm, delta_density(g, 0.0), 0.5, BoundaryCondition::dirichlet_zero, so);
    double survival = 0;
    const Grid1D q(-8.0, H, 9000);
    const auto w = q.weights();
    for (std::size_t i = 0; i < q.size(); ++i) survival += w[i] * killed_bm_density(0.5, q.node(i), H);
    CHECK(hist.final().mass() == Approx(survival).margin(5e-3));
    CHECK(hist.absorbed_mass == Approx(1.0 - survival).margin(5e-3));
    CHECK(reflected_bm_density(0.5, H, H) == Approx(2.0 * heat_kernel(0.5, H)));
}

TEST_CASE("backward equation for OU reproduces E[X_t^2]", "[pde][backward]") {
    const auto ou = SdeModel::ornstein_uhlenbeck(1.0, 1.0);
    const Grid1D g(-6.0, 6.0, 600);
    const auto phi0 = g.sample([](double x) { return x * x; });
    SolverOptions so;
    so.dt = 1e-3;
    const auto hist = solve_backward_kolmogorov(ou, phi0, 1.0, g, BoundaryCondition::neumann_zero, so);
    for (double x : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
        const double exact = x * x * std::exp(-2.0) + 0.5 * (1.0 - std::exp(-2.0));
        CHECK(hist.final().values[g.nearest(x)] == Approx(exact).margin(5e-3));
    }
    const auto mid = hist.at(0.5);
    CHECK(mid.time == Approx(0.5));
}

TEST_CASE("explicit and implicit steppers agree below the CFL limit", "[pde][backward]") {
    const auto ou = SdeModel::ornstein_uhlenbeck(1.0, 1.0);
    const Grid1D g(-4.0, 4.0, 80);
    const auto phi0 = g.sample([](double x) { return std::cos(x); });
    SolverOptions imp, exp;
    imp.dt = exp.dt = 1e-4;
    exp.stepper = Stepper::explicit_euler;
    const auto a = solve_backward_kolmogorov(ou, phi0, 0.2, g, BoundaryCondition::neumann_zero, imp);
    const auto b = solve_backward_kolmogorov(ou, phi0, 0.2, g, BoundaryCondition::neumann_zero, exp);
    // Both steppers are first order in dt.
    for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(a.final().values[i] == Approx(b.final().values[i]).margin(1e-3));
    exp.dt = 1.0;
    CHECK_THROWS_AS(solve_backward_kolmogorov(ou, phi0, 1.0, g, BoundaryCondition::neumann_zero, exp), CflError);
}

TEST_CASE("stationary density of a gradient model", "[pde][stationary]") {
    const Grid1D g(-6.0, 6.0, 1200);
    const auto pi = stationary_density_gradient([](double x) { return 0.5 * x * x; }, g);
    CHECK(pi.mass() == Approx(1.0).margin(1e-12));
    CHECK(gradient_partition_function([](double x) { return 0.5 * x * x; }, g) ==
          Approx(std::sqrt(2 * std::numbers::pi)).epsilon(1e-8));
    CHECK_THROWS(stationary_density_gradient([](double x) { return 0.01 * x * x; }, g));
}

TEST_CASE("density CSV round trip", "[pde][io]") {
    const Grid1D g(0.0, 1.0, 10);
    DensityField f{g, g.sample([](double x) { return x * 0.1 + 1.0 / 3.0; }), 0.0};
    std::stringstream ss;
    write_csv(ss, f);
    const auto back = read_density_csv(ss);
    CHECK(back.grid == g);
    CHECK(back.values == f.values);
}

TEST_CASE("Monte Carlo semigroup and Feynman-Kac", "[pde][mc]") {
    const auto ou = SdeModel::ornstein_uhlenbeck(1.0, 1.0);
    SemigroupOptions opts;
    opts.n_paths = 20000;
    opts.n_steps = 200;
    const auto e = mc_semigroup(ou, [](double x) { return x * x; }, 1.0, 1.0, opts, GaussianStream(4, 0));
    const double exact = std::exp(-2.0) + 0.5 * (1.0 - std::exp(-2.0));
    CHECK(std::abs(e.value - exact) < 4.0 * e.std_error + 5e-3);
    // Constant killing rate q multiplies by e^{-q t}.
    const auto fk = mc_feynman_kac(SdeModel::brownian(1), [](double) { return 0.7; }, [](double) { return 1.0; }, 2.0,
                                   0.0, opts, GaussianStream(4, 1));
    CHECK(fk.value == Approx(std::exp(-1.4)).epsilon(1e-12));
}
