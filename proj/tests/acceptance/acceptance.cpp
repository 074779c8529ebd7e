// Runs every acceptance experiment with its registered defaults and compares
// against reference values computed independently of the library.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sdelab/runner/experiments.hpp"

using sdelab::ExperimentResult;
using json = nlohmann::ordered_json;

namespace ref {
// 1/cosh(sqrt(2 lambda)) for lambda = 0.5, 1, 2.
constexpr double laplace[3] = {0.64805427366388539958, 0.45909813108542546, 0.26580222883407969212};
constexpr double lambdas[3] = {0.5, 1.0, 2.0};
// sinh(sqrt(2l)) / sinh(2 sqrt(2l)) = laplace / 2 at x = 0.
constexpr double one_sided_time = 0.5;  // (a^2 - x^2)(3a + x) / (6a), a = 1, x = 0
constexpr double conditional_mean = 1.0;  // (a - x)(3a + x) / 3
constexpr double gamma_ou = 0.13533528323661269189;  // e^{-2}
constexpr double d_ou = 0.43233235838169365406;  // (1 - e^{-2}) / 2
constexpr double log4 = 1.3862943611198906188;
constexpr double ou_action = 1.1565176427496656;  // 1 / (1 - e^{-2})
constexpr double ek_time = 124.54122797274549;  // 2 pi / sqrt(2) * e^{10/3}
}  // namespace ref

namespace {

struct Line {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentResult run(const std::string& name, double& secs) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = sdelab::run_experiment(sdelab::default_config(name));
    secs = seconds_since(t0);
    return r;
}

Line c1() {
    double t = 0;
    const auto r = run("exit_ball", t);
    const double m = r.summary["mean_time"];
    return {1, "ball exit", std::abs(m - 0.5) <= 0.03 && t < 60.0 && !r.flagged,
            fmt("mean %.4f vs 0.5 (tol 0.03), %.1fs", m, t)};
}

Line c2() {
    double t = 0;
    const auto r = run("recurrence_shell", t);
    const double p = r.summary["hit_frequency"];
    return {2, "recurrence/transience", std::abs(p - 0.5) <= 0.03 && t < 120.0 && !r.flagged,
            fmt("hit frequency %.4f vs 0.5 (tol 0.03), %.1fs", p, t)};
}

Line c3() {
    double t = 0;
    const auto r = run("feynman_kac", t);
    const auto& s = r.summary;
    double worst = 0;
    for (int i = 0; i < 3; ++i) {
        const auto& l = s["laplace"][static_cast<std::size_t>(i)];
        if (double(l["lambda"]) != ref::lambdas[i]) return {3, "Feynman-Kac", false, "unexpected lambda"};
        const auto z = [](const json& e, double exact) {
            return std::abs((double(e["value"]) - exact) / double(e["std_error"]));
        };
        worst = std::max({worst, z(l["estimate"], ref::laplace[i]), z(l["one_sided"], ref::laplace[i] / 2.0)});
    }
    worst = std::max(worst, std::abs((double(s["one_sided_time"]["estimate"]["value"]) - ref::one_sided_time) /
                                     double(s["one_sided_time"]["estimate"]["std_error"])));
    worst = std::max(worst, std::abs((double(s["conditional_mean"]["estimate"]) - ref::conditional_mean) /
                                     double(s["conditional_mean"]["std_error"])));
    return {3, "Feynman-Kac", worst < 3.0 && !r.flagged, fmt("largest |z| %.2f over 8 identities (tol 3)", worst)};
}

Line c4() {
    double t = 0;
    const auto r = run("arcsine", t);
    const double ks = r.summary["ks_statistic"];
    return {4, "arcsine law", ks < 0.03, fmt("KS %.4f (tol 0.03)", ks)};
}

Line c5() {
    double t = 0;
    const auto r = run("ito_integral", t);
    const auto& levels = r.summary["levels"];
    bool ok = levels.size() == 4;
    std::string ratios;
    for (std::size_t j = 1; j < levels.size(); ++j) {
        const double q = levels[j]["ratio_to_previous"];
        ok = ok && std::abs(q / std::sqrt(2.0) - 1.0) <= 0.1;
        ratios += fmt("%.3f ", q);
    }
    const double z = r.summary["isometry"]["z"];
    ok = ok && std::abs(z) < 5.0;
    return {5, "Ito calculus", ok, "RMS ratios " + ratios + fmt("vs 1.414 (tol 10%%), isometry z %.2f (tol 5)", z)};
}

Line c6() {
    double t = 0;
    const auto r = run("fokker_planck_stationary", t);
    const double drift = r.summary["stationary_l1_drift"], conv = r.summary["uniform_start_l1"];
    return {6, "Fokker-Planck stationarity", drift < 1e-4 && conv < 1e-3 && !r.flagged,
            fmt("L1 drift %.2e (tol 1e-4), L1 from uniform %.2e (tol 1e-3)", drift, conv)};
}

Line c7() {
    double t = 0;
    const auto r = run("hairer_mattingly", t);
    const auto& s = r.summary;
    if (r.flagged) return {7, "Hairer-Mattingly", false, r.flag_reason};
    const double g = s["drift"]["gamma"], d = s["drift"]["d"], alpha = s["minorisation"]["alpha"];
    const double ratio = s["contraction"]["max_ratio"], abar = s["constants"]["alpha_bar"];
    const std::size_t viol = s["contraction"]["violations"];
    const bool ok = std::abs(g / ref::gamma_ou - 1) <= 0.05 && std::abs(d / ref::d_ou - 1) <= 0.05 && alpha > 0 &&
                    viol == 0 && ratio <= abar + 1e-9;
    return {7, "Hairer-Mattingly", ok,
            fmt("gamma %.4f d %.4f (ref %.4f %.4f, tol 5%%), alpha %.3f, max ratio %.4f <= alpha_bar %.4f", g, d,
                ref::gamma_ou, ref::d_ou, alpha, ratio, abar)};
}

Line c8() {
    double t = 0;
    const auto r = run("birkhoff_jentzsch", t);
    const auto& a = r.summary["two_by_two"];
    const auto& k = r.summary["killed_bm"];
    const double delta = a["diameter"], ratio = a["max_contraction_ratio"];
    const double lambda0 = k["lambda0"], rr = k["right_residual"], lr = k["left_residual"];
    const double rate = k["observed_rate"], bound = k["rate_bound"];
    const bool ok = std::abs(delta - ref::log4) <= 1e-9 && ratio <= 1.0 / 3.0 + 1e-9 && lambda0 < 1.0 &&
                    rr < 1e-8 && lr < 1e-8 && rate <= bound;
    return {8, "Birkhoff/Jentzsch", ok,
            fmt("Delta %.10f, ratio %.9f <= 1/3; lambda0 %.6f, residuals %.1e/%.1e, rate %.4f <= %.4f", delta, ratio,
                lambda0, rr, lr, rate, bound)};
}

Line c9() {
    double t = 0;
    const auto r = run("action_ou", t);
    const double a = r.summary["action"], f = r.summary["free_action"];
    const bool ok = std::abs(a - ref::ou_action) <= 1e-3 && std::abs(f - 0.5) <= 1e-4 && !r.flagged;
    return {9, "Schilder/Freidlin-Wentzell", ok,
            fmt("OU action %.6f vs %.6f (tol 1e-3), free %.8f vs 0.5 (tol 1e-4)", a, ref::ou_action, f)};
}

Line c10() {
    double t = 0;
    const auto r = run("quasipotential", t);
    const double v = r.summary["value"];
    return {10, "quasipotential", std::abs(v / 0.5 - 1.0) <= 0.02 && !r.flagged, fmt("V %.6f vs 0.5 (tol 2%%)", v)};
}

Line c11() {
    double t = 0;
    const auto r = run("arrhenius", t);
    const auto eps = r.summary["eps"].get<std::vector<double>>();
    const auto y = r.summary["eps_log_mean_tau"].get<std::vector<double>>();
    // V_bar = 2 (U(1) - U(0)) = 1 for U = x^2 / 2 on (-1, 1).
    bool mono = eps.size() == 3 && y.size() == 3;
    for (std::size_t i = 1; mono && i < eps.size(); ++i)
        mono = eps[i] < eps[i - 1] && std::abs(y[i] - 1.0) < std::abs(y[i - 1] - 1.0);
    const double err = mono ? std::abs(y.back() - 1.0) : 1.0;
    return {11, "Arrhenius (desk scale)", mono && err <= 0.15,
            fmt("monotone %s, relative error %.3f at smallest eps (tol 0.15); eps->0 limit not reachable here",
                mono ? "yes" : "no", err)};
}

Line c12() {
    double t = 0;
    const auto r = run("eyring_kramers", t);
    const double m = r.summary["mean_time"];
    const double q = m / ref::ek_time;
    return {12, "Eyring-Kramers (desk scale)", q >= 0.5 && q <= 2.0 && !r.flagged,
            fmt("MC %.2f vs formula %.2f, ratio %.3f in [0.5, 2]; full accuracy needs smaller eps", m, ref::ek_time, q)};
}

Line c13() {
    double t = 0;
    const auto r = run("certificate_suite", t);
    const std::size_t total = r.summary["total_violations"];
    std::size_t rechecked = 0;
    for (const auto& c : r.summary["certificates"]) {
        rechecked += 1 + c.contains("minorisation") + (c["cone"].is_object() ? 1 : 0);
    }
    return {13, "certificate soundness", total == 0 && rechecked > 0,
            fmt("%zu certificates rechecked entrywise, %zu violations", rechecked, total)};
}

}  // namespace

int main() {
    const std::vector<std::function<Line()>> criteria = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Line l;
        try {
            l = criteria[i]();
        } catch (const std::exception& e) {
            l = {static_cast<int>(i + 1), "exception", false, e.what()};
        }
        if (!l.pass) ++failed;
        std::printf("%s criterion %2d %-28s %s\n", l.pass ? "PASS" : "FAIL", l.id, l.name.c_str(), l.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
