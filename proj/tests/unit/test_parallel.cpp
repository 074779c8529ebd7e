#include <catch_amalgamated.hpp>

#include <cmath>

#include "sdelab/core/parallel.hpp"
#include "sdelab/ergodicity/kernel.hpp"
#include "sdelab/exit/brownian_laws.hpp"
#include "sdelab/exit/exit_mc.hpp"
#include "sdelab/ldp/minimize.hpp"
#include "sdelab/pde/semigroup_mc.hpp"

using namespace sdelab;

// The OpenMP kernels must reproduce the serial reference bit for bit.

namespace {

struct Threads {
    int saved = max_threads();
    explicit Threads(int n) { set_threads(n); }
    ~Threads() { set_threads(saved); }
};

}  // namespace

TEST_CASE("for_each_index visits every index and rethrows", "[parallel]") {
    Threads t(4);
    std::vector<std::size_t> seen(1000, 0);
    for_each_index(seen.size(), Execution::openmp, [&](std::size_t i) { seen[i] = i + 1; });
    for (std::size_t i = 0; i < seen.size(); ++i) REQUIRE(seen[i] == i + 1);
    CHECK_THROWS_AS(for_each_index(100, Execution::openmp,
                                   [](std::size_t i) {
                                       if (i == 57) throw std::runtime_error("boom");
                                   }),
                    std::runtime_error);
}

TEST_CASE("exit Monte Carlo is identical serial and parallel", "[parallel][exit]") {
    Threads t(4);
    ExitOptions opts;
    opts.n_paths = 500;
    opts.h = 1e-3;
    opts.lambdas = {1.0, 2.0};
    opts.keep_samples = true;
    const std::vector<double> x0{0.1, -0.2};
    const auto d = Domain::ball(1.0, {0.0, 0.0});
    opts.exec = Execution::serial;
    const auto a = mc_exit(SdeModel::brownian(2), x0, d, opts, GaussianStream(11, 0));
    opts.exec = Execution::openmp;
    const auto b = mc_exit(SdeModel::brownian(2), x0, d, opts, GaussianStream(11, 0));
    CHECK(a.mean_time == b.mean_time);
    CHECK(a.time_std_error == b.time_std_error);
    CHECK(a.laplace[1].estimate.value == b.laplace[1].estimate.value);
    CHECK(a.exit_location_histogram == b.exit_location_histogram);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        REQUIRE(a.samples[i].time == b.samples[i].time);
        REQUIRE(a.samples[i].location == b.samples[i].location);
    }
}

TEST_CASE("Brownian law samplers are identical serial and parallel", "[parallel][exit]") {
    Threads t(4);
    const auto a = arcsine_occupation(800, TimeGrid(0.0, 1.0, 200), GaussianStream(12, 0), Execution::serial);
    const auto b = arcsine_occupation(800, TimeGrid(0.0, 1.0, 200), GaussianStream(12, 0), Execution::openmp);
    CHECK(a.fractions == b.fractions);
    CHECK(a.ks_statistic == b.ks_statistic);

    LineHittingOptions so, po;
    so.exec = Execution::serial;
    const auto c = line_hitting_2d(300, 1e-3, GaussianStream(13, 0), so);
    const auto e = line_hitting_2d(300, 1e-3, GaussianStream(13, 0), po);
    CHECK(c.tau == e.tau);
    CHECK(c.w2 == e.w2);
}

TEST_CASE("semigroup and kernel estimators are identical serial and parallel", "[parallel][pde]") {
    Threads t(4);
    SemigroupOptions so;
    so.n_paths = 2000;
    so.n_steps = 100;
    SemigroupOptions po = so;
    so.exec = Execution::serial;
    const auto ou = SdeModel::ornstein_uhlenbeck(1.0, 1.0);
    const auto phi = [](double x) { return std::cos(x); };
    const auto a = mc_semigroup(ou, phi, 0.5, 1.0, so, GaussianStream(14, 0));
    const auto b = mc_semigroup(ou, phi, 0.5, 1.0, po, GaussianStream(14, 0));
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);

    KernelOptions ks, kp;
    ks.method = kp.method = KernelMethod::mc;
    ks.mc_paths = kp.mc_paths = 300;
    ks.mc_steps = kp.mc_steps = 20;
    ks.exec = Execution::serial;
    const Grid1D grid(-3.0, 3.0, 30);
    CHECK(discretize_kernel(ou, grid, 0.5, ks).matrix() == discretize_kernel(ou, grid, 0.5, kp).matrix());
    ks.method = kp.method = KernelMethod::pde;
    CHECK(discretize_kernel(ou, grid, 0.5, ks).matrix() == discretize_kernel(ou, grid, 0.5, kp).matrix());
}

TEST_CASE("boundary quasipotential is identical serial and parallel", "[parallel][ldp]") {
    Threads t(4);
    const auto model = SdeModel::gradient_with_noise(Potential::quadratic(2), 1.0, 2);
    const std::vector<double> origin{0.0, 0.0};
    const auto circle = [](double s) {
        return std::vector<double>{std::cos(2 * M_PI * s), 0.5 * std::sin(2 * M_PI * s)};
    };
    QuasipotentialOptions qo;
    qo.dt = 5e-2;
    const auto a = boundary_quasipotential(model, origin, circle, {2.0, 4.0}, qo, 8, Execution::serial);
    const auto b = boundary_quasipotential(model, origin, circle, {2.0, 4.0}, qo, 8, Execution::openmp);
    CHECK(a.value == b.value);
    CHECK(a.parameter == b.parameter);
    // |y|^2 at the nearest boundary point (0, 0.5), up to finite T.
    CHECK(a.value == Catch::Approx(0.25).epsilon(0.05));
}
