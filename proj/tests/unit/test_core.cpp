#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <numeric>

#include "sdelab/core/brownian.hpp"
#include "sdelab/core/integrators.hpp"
#include "sdelab/core/linear_sde.hpp"
#include "sdelab/core/random.hpp"
#include "sdelab/core/sde_model.hpp"
#include "sdelab/core/stats.hpp"
#include "sdelab/core/stochastic_integrals.hpp"

using namespace sdelab;
using Catch::Approx;

TEST_CASE("philox matches the published known-answer vectors", "[core][rng]") {
    using A4 = std::array<std::uint32_t, 4>;
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and substreams differ", "[core][rng]") {
    GaussianStream a(42, 7), b(42, 7);
    for (int i = 0; i < 100; ++i) REQUIRE(a.normal() == b.normal());
    GaussianStream c = a;
    CHECK(c.normal() == a.normal());
    GaussianStream s0 = GaussianStream(42, 7).substream(0), s1 = GaussianStream(42, 7).substream(1);
    CHECK(s0.normal() != s1.normal());
    CHECK(GaussianStream(1, 0).normal() != GaussianStream(2, 0).normal());
}

TEST_CASE("normal draws have unit variance and uniform draws stay open", "[core][rng]") {
    GaussianStream s(3, 0);
    const int n = 200000;
    std::vector<double> x(n);
    for (auto& v : x) v = s.normal();
    const auto m = mean_estimate(x);
    CHECK(std::abs(m.value) < 4.0 * m.std_error);
    CHECK(sample_variance(x) == Approx(1.0).margin(0.015));
    double kurt = 0;
    for (double v : x) kurt += v * v * v * v;
    CHECK(kurt / n == Approx(3.0).margin(0.06));
    for (int i = 0; i < 10000; ++i) {
        const double u = s.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("time grid nodes and refinement", "[core]") {
    TimeGrid g(0.0, 2.0, 4);
    CHECK(g.size() == 5);
    CHECK(g.step() == 0.5);
    CHECK(g.node(4) == 2.0);
    CHECK(g.refined(2).n_steps() == 8);
    TimeGrid single(1.0, 2.0, 0);
    CHECK(single.size() == 1);
    CHECK(single.step() == 0.0);
    CHECK(single.node(0) == 1.0);
    CHECK_THROWS(TimeGrid(1.0, 1.0, 4));
}

TEST_CASE("wiener increments have variance h", "[core][brownian]") {
    GaussianStream s(5, 0);
    const TimeGrid grid(0.0, 1.0, 100000);
    const auto w = sample_wiener(grid, 1, s);
    CHECK(w[0] == 0.0);
    double qv = 0;
    for (std::size_t k = 0; k < grid.n_steps(); ++k) qv += w.increment(k) * w.increment(k);
    // Quadratic variation of BM on [0, 1].
    CHECK(qv == Approx(1.0).margin(0.02));
}

TEST_CASE("midpoint refinement keeps the coarse nodes and the bridge variance", "[core][brownian]") {
    GaussianStream s(6, 0);
    const TimeGrid grid(0.0, 1.0, 4);
    const auto w = sample_wiener(grid, 2, s);
    const auto fine = refine_wiener_midpoint(w, 3, s);
    REQUIRE(fine.grid.n_steps() == 32);
    for (std::size_t k = 0; k <= 4; ++k)
        for (std::size_t i = 0; i < 2; ++i) CHECK(fine.at(8 * k, i) == w.at(k, i));
    ZeroNormalSource zero;
    const auto lin = refine_wiener_midpoint(w, 1, zero);
    CHECK(lin.at(1, 0) == Approx(0.5 * (w.at(0, 0) + w.at(1, 0))));

    // Var(W(1/2) | W(0) = 0, W(1) = 0) = 1/4 for the first level.
    std::vector<double> mids(20000);
    for (std::size_t p = 0; p < mids.size(); ++p) {
        GaussianStream ps = s.substream(p);
        WienerPath pinned{TimeGrid(0.0, 1.0, 1), 1, {0.0, 0.0}};
        mids[p] = refine_wiener_midpoint(pinned, 1, ps)[1];
    }
    CHECK(sample_variance(mids) == Approx(0.25).margin(0.01));
    CHECK_THROWS(refine_wiener_midpoint(w, -1, s));
}

TEST_CASE("brownian scaling maps the grid and the values", "[core][brownian]") {
    GaussianStream s(8, 0);
    const auto w = sample_wiener(TimeGrid(0.0, 1.0, 10), 1, s);
    const auto r = rescale_wiener(w, 2.0);
    CHECK(r.grid.t_end() == Approx(4.0));
    CHECK(r[10] == Approx(2.0 * w[10]));
}

TEST_CASE("Euler-Maruyama on OU matches the exact mean and variance", "[core][integrators]") {
    const auto model = SdeModel::ornstein_uhlenbeck(1.0, 1.0);
    const TimeGrid grid(0.0, 1.0, 200);
    std::vector<double> end(20000);
    const std::vector<double> x0{1.0};
    for (std::size_t p = 0; p < end.size(); ++p) {
        GaussianStream s = GaussianStream(9, 0).substream(p);
        end[p] = euler_maruyama(model, x0, grid, s).values.back();
    }
    const auto m = mean_estimate(end);
    CHECK(std::abs(m.value - std::exp(-1.0)) < 4.0 * m.std_error + 2e-3);
    CHECK(sample_variance(end) == Approx((1.0 - std::exp(-2.0)) / 2.0).margin(0.015));
}

TEST_CASE("deterministic skeleton equals explicit Euler", "[core][integrators]") {
    const auto model = SdeModel::ornstein_uhlenbeck(2.0, 0.0);
    const TimeGrid grid(0.0, 1.0, 50);
    const std::vector<double> x0{1.0};
    const auto e = explicit_euler(model, x0, grid);
    CHECK(e[50] == Approx(std::pow(1.0 - 2.0 / 50.0, 50)));
}

TEST_CASE("non-finite states raise BlowUpError", "[core][integrators]") {
    const auto model = SdeModel::scalar([](double x) { return x * x * x * x; }, [](double) { return 0.0; });
    const std::vector<double> x0{10.0};
    CHECK_THROWS_AS(explicit_euler(model, x0, TimeGrid(0.0, 10.0, 10)), BlowUpError);
}

TEST_CASE("Ito and Stratonovich sums of W dW", "[core][integrals]") {
    GaussianStream s(10, 0);
    const auto w = sample_wiener(TimeGrid(0.0, 1.0, 1000), 1, s);
    const NodeFunction W = [&](std::size_t k) { return w[k]; };
    const double wt = w[1000];
    // The trapezoid sum telescopes to W_T^2 / 2 exactly.
    CHECK(stratonovich_integral(W, w) == Approx(0.5 * wt * wt).epsilon(1e-12));
    double qv = 0;
    for (std::size_t k = 0; k < 1000; ++k) qv += w.increment(k) * w.increment(k);
    CHECK(ito_integral(W, w) == Approx(0.5 * wt * wt - 0.5 * qv).epsilon(1e-12));
}

TEST_CASE("linear SDE solutions", "[core][linear]") {
    GaussianStream s(11, 0);
    const auto w = sample_wiener(TimeGrid(0.0, 1.0, 1000), 1, s);
    const auto gbm = exact_linear_multiplicative([](double) { return 0.3; }, [](double) { return 0.5; }, 2.0, w);
    CHECK(gbm[1000] == Approx(2.0 * std::exp((0.3 - 0.125) + 0.5 * w[1000])).epsilon(1e-10));
    const auto ou = exact_linear_additive([](double) { return 0.0; }, [](double) { return 1.0; }, 0.5, w);
    CHECK(ou[1000] == Approx(0.5 + w[1000]).epsilon(1e-12));
    const auto sine = sine_fixture(w);
    for (std::size_t k = 0; k <= 1000; ++k) REQUIRE(std::abs(sine[k]) <= 1.0);
}

TEST_CASE("statistics helpers", "[core][stats]") {
    const std::vector<double> x{1, 2, 3, 4};
    const auto e = mean_estimate(x);
    CHECK(e.value == 2.5);
    CHECK(e.std_error == Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(quantile(x, 0.5) == Approx(2.5));
    const std::vector<double> y{3, 5, 7, 9};
    const auto f = linear_fit(x, y);
    CHECK(f.slope == Approx(2.0));
    CHECK(f.intercept == Approx(1.0));
    CHECK(normal_cdf(0.0) == Approx(0.5));
    CHECK(normal_quantile(0.975) == Approx(1.959963984540054).epsilon(1e-9));
    CHECK(normal_cdf(normal_quantile(0.2)) == Approx(0.2).epsilon(1e-12));
    CHECK(ks_statistic({0.5}, [](double u) { return u; }) == Approx(0.5));
}

TEST_CASE("model presets", "[core][model]") {
    const auto bm = SdeModel::brownian(3);
    CHECK(bm.n == 3);
    std::vector<double> d(9), x(3, 1.0);
    bm.diffusion_matrix(x, d);
    CHECK(d[0] == 1.0);
    CHECK(d[1] == 0.0);
    const auto g = SdeModel::gradient(Potential::double_well());
    CHECK(g.drift_at(2.0) == Approx(-(8.0 - 2.0)));
    CHECK(g.diffusion_coefficient(0.3) == Approx(2.0));
    const auto ou = SdeModel::ornstein_uhlenbeck(2.0, 3.0);
    std::vector<double> jac(1), pt{0.7};
    ou.drift_jacobian_at(pt, jac);
    CHECK(jac[0] == Approx(-2.0).epsilon(1e-8));
    const auto U = Potential::quadratic(2);
    const std::vector<double> p2{1.0, 2.0};
    CHECK(U(p2) == Approx(2.5));
    CHECK(U.hessian_at(p2)[3] == Approx(1.0).epsilon(1e-6));
}
