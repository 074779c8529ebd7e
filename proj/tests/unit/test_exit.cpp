#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "sdelab/exit/brownian_laws.hpp"
#include "sdelab/exit/domain.hpp"
#include "sdelab/exit/exit_mc.hpp"
#include "sdelab/exit/oracles.hpp"

using namespace sdelab;
using Catch::Approx;

TEST_CASE("exit oracles at reference points", "[exit][oracle]") {
    const std::vector<double> origin2{0.0, 0.0};
    CHECK(ball_exit_expectation(1.0, origin2) == 0.5);
    CHECK(ball_exit_expectation(2.0, 1.0, 3) == Approx(1.0));
    CHECK(ball_hitting_probability(1.0, 2.0, 3) == 0.5);
    CHECK(ball_hitting_probability(1.0, 5.0, 2) == 1.0);
    CHECK(shell_hitting_probability(1.0, 64.0, 2.0, 3) == Approx(31.0 / 63.0));
    CHECK(shell_hitting_probability(1.0, 3.0, 2.0, 1) == Approx(0.5));
    CHECK(shell_hitting_probability(1.0, 1e12, 2.0, 3) == Approx(0.5).epsilon(1e-9));
    CHECK_THROWS(ball_exit_expectation(1.0, 1.5, 2));

    // Harmonic function x^(1-2r) with r = 0: linear.
    CHECK(gbm_exit(0.0, 1.0, 3.0, 2.0).p_hit_b_first == Approx(0.5));
    const auto up = gbm_exit(1.0, 0.0, 4.0, 1.0);
    CHECK(up.p_hit_b_first == 1.0);
    CHECK(*up.mean_time_to_b == Approx(2.0 * std::log(4.0)));
    CHECK(gbm_exit(0.25, 0.0, 4.0, 1.0).p_hit_b_first == Approx(0.5));
    CHECK_THROWS(gbm_exit(0.5, 0.1, 2.0, 1.0));
}

TEST_CASE("Feynman-Kac closed forms", "[exit][oracle]") {
    CHECK(fk_laplace_interval(1.0, 1.0, 0.0) == Approx(1.0 / std::cosh(std::sqrt(2.0))));
    CHECK(fk_laplace_one_sided(0.0, 1.0, 0.5) == Approx(0.75));
    CHECK(fk_laplace_one_sided(1e-10, 1.0, 0.5) == Approx(0.75).epsilon(1e-6));
    CHECK(fk_laplace_one_sided(2.0, 1.0, 0.0) == Approx(0.5 * fk_laplace_interval(2.0, 1.0, 0.0)));
    // -d/dlambda at 0 gives E tau = a^2 - x^2.
    const double h = 1e-6;
    CHECK((1.0 - fk_laplace_interval(h, 2.0, 0.5)) / h == Approx(4.0 - 0.25).epsilon(1e-4));
    CHECK(fk_one_sided_time(1.0, 0.0) == Approx(0.5));
    CHECK(fk_conditional_mean(1.0, 0.0) == Approx(1.0));
    // E[tau 1{right}] = P(right) * E[tau | right].
    CHECK(fk_one_sided_time(2.0, 0.7) == Approx((0.7 + 2.0) / 4.0 * fk_conditional_mean(2.0, 0.7)));
    CHECK(three_set_bound(1.0, 0.5, 4.0) == Approx((1.0 + 0.5 * 4.0) / 0.5));
    CHECK_THROWS(three_set_bound(1.0, 1.0, 1.0));
}

TEST_CASE("domains classify points", "[exit][domain]") {
    const auto ball = Domain::ball(1.0, {0.0, 0.0});
    CHECK(ball.contains(std::vector<double>{0.5, 0.5}));
    CHECK_FALSE(ball.contains(std::vector<double>{1.0, 0.0}));
    CHECK(ball.distance_bound(std::vector<double>{0.5, 0.0}) == Approx(0.5));
    const auto iv = Domain::interval(-1.0, 2.0);
    CHECK(iv.contains(std::vector<double>{1.9}));
    CHECK(iv.boundary_parameter(std::vector<double>{2.0}) == 0.5);
    const auto hs = Domain::half_space(1.0, 0, Domain::Side::below);
    CHECK(hs.contains(std::vector<double>{0.0, 100.0}));
    CHECK_FALSE(hs.contains(std::vector<double>{1.0, 0.0}));
    const auto shell = Domain::shell(1.0, 4.0, {0.0, 0.0, 0.0});
    CHECK(shell.has_distance());
    CHECK(shell.distance_bound(std::vector<double>{2.0, 0.0, 0.0}) == Approx(1.0));
    const auto pred = Domain::predicate([](std::span<const double> x) { return x[0] - 1.0; });
    CHECK_FALSE(pred.has_distance());
}

TEST_CASE("one-dimensional exit time of BM from an interval", "[exit][mc]") {
    ExitOptions opts;
    opts.h = 1e-4;
    opts.n_paths = 4000;
    const std::vector<double> x0{0.5};
    const auto s = mc_exit(SdeModel::brownian(1), x0, Domain::interval(-1.0, 1.0), opts, GaussianStream(1, 0));
    CHECK(s.valid);
    CHECK(s.fraction_censored == 0.0);
    // E tau = 1 - x^2; discrete monitoring biases upward by O(sqrt h).
    CHECK(s.mean_time == Approx(0.75).margin(4.0 * s.time_std_error + 0.02));
    CHECK(s.exit_location_histogram.size() == 2);
    CHECK(s.exit_location_histogram[0] + s.exit_location_histogram[1] == s.n_exited);
}

TEST_CASE("coarser steps bias the exit time upward", "[exit][mc]") {
    ExitOptions fine, coarse;
    fine.n_paths = coarse.n_paths = 4000;
    fine.h = 1e-4;
    coarse.h = 1e-2;
    const std::vector<double> x0{0.0, 0.0};
    const auto d = Domain::ball(1.0, {0.0, 0.0});
    const auto a = mc_exit(SdeModel::brownian(2), x0, d, fine, GaussianStream(2, 0));
    const auto b = mc_exit(SdeModel::brownian(2), x0, d, coarse, GaussianStream(2, 0));
    CHECK(b.mean_time > a.mean_time);
    CHECK(a.mean_time > 0.5 - 4.0 * a.time_std_error);
}

TEST_CASE("censoring and argument checks", "[exit][mc]") {
    ExitOptions opts;
    opts.n_paths = 200;
    opts.t_max = 0.01;
    opts.h = 1e-3;
    const std::vector<double> x0{0.0};
    const auto s = mc_exit(SdeModel::brownian(1), x0, Domain::interval(-10.0, 10.0), opts, GaussianStream(3, 0));
    CHECK(s.fraction_censored == 1.0);
    CHECK_FALSE(s.valid);
    const std::vector<double> outside{20.0};
    CHECK_THROWS(mc_exit(SdeModel::brownian(1), outside, Domain::interval(-10.0, 10.0), opts, GaussianStream(3, 0)));
    CHECK_THROWS(s.functional([](const ExitSample&) { return 1.0; }));
}

TEST_CASE("exit statistics serialise with stable keys", "[exit][io]") {
    ExitOptions opts;
    opts.n_paths = 50;
    opts.lambdas = {1.0};
    opts.keep_samples = true;
    const std::vector<double> x0{0.0};
    const auto s = mc_exit(SdeModel::brownian(1), x0, Domain::interval(-0.5, 0.5), opts, GaussianStream(4, 0));
    std::ostringstream js, csv;
    write_json(js, s);
    CHECK(js.str().rfind("{\"exit_location_histogram\":[", 0) == 0);
    CHECK(js.str().find("\"laplace\":[{\"estimate\":") != std::string::npos);
    write_samples_csv(csv, s);
    CHECK(csv.str().rfind("path_id,exit_time,censored,x0\n", 0) == 0);
}

TEST_CASE("distance-scaled steps reach the 3D shell oracle", "[exit][mc]") {
    ExitOptions opts;
    opts.h = 1e-4;
    opts.h_max = 10.0;
    opts.n_paths = 4000;
    opts.t_max = 1e6;
    opts.keep_samples = true;
    const std::vector<double> x0{2.0, 0.0, 0.0};
    const auto s = mc_exit(SdeModel::brownian(3), x0, Domain::shell(1.0, 8.0, {0.0, 0.0, 0.0}), opts, GaussianStream(5, 0));
    const auto hit = s.functional([](const ExitSample& e) {
        return std::sqrt(e.location[0] * e.location[0] + e.location[1] * e.location[1] + e.location[2] * e.location[2]) <
                       4.5
                   ? 1.0
                   : 0.0;
    });
    CHECK(hit.value == Approx(shell_hitting_probability(1.0, 8.0, 2.0, 3)).margin(4.0 * hit.std_error + 0.01));
}

TEST_CASE("arcsine law of the occupation fraction", "[exit][laws]") {
    CHECK(arcsine_cdf(0.5) == Approx(0.5));
    CHECK(arcsine_cdf(0.0) == 0.0);
    CHECK(arcsine_cdf(1.0) == Approx(1.0));
    const auto occ = arcsine_occupation(3000, TimeGrid(0.0, 1.0, 500), GaussianStream(6, 0));
    CHECK(occ.fractions.size() == 3000);
    CHECK(occ.ks_statistic < 0.04);
}

TEST_CASE("planar BM hitting a line", "[exit][laws]") {
    CHECK(line_hitting_cdf(line_hitting_median()) == Approx(0.5));
    CHECK(cauchy_cdf(1.0) == Approx(0.75));
    const auto s = line_hitting_2d(2000, 1e-4, GaussianStream(7, 0));
    CHECK(s.tau.size() == s.w2.size());
    CHECK(s.fraction_censored < 0.01);
    CHECK(ks_statistic(s.w2, cauchy_cdf) < 0.05);
    CHECK(ks_statistic(s.tau, line_hitting_cdf) < 0.05);
}
