#include "sdelab/exit/exit_mc.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "sdelab/core/integrators.hpp"

namespace sdelab {

Estimate ExitStatistics::functional(const std::function<double(const ExitSample&)>& fn) const {
    if (samples.empty()) throw std::logic_error("ExitStatistics::functional: run with keep_samples");
    std::vector<double> v(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) v[i] = fn(samples[i]);
    return mean_estimate(v);
}

namespace {

double frobenius(std::span<const double> g) {
    double s = 0.0;
    for (double v : g) s += v * v;
    return std::sqrt(s);
}

}  // namespace

ExitStatistics mc_exit(const SdeModel& model, std::span<const double> x0, const Domain& domain,
                       const ExitOptions& opts, const GaussianStream& stream) {
    if (x0.size() != model.n) throw std::invalid_argument("mc_exit: x0 has wrong dimension");
    if (!domain.contains(x0)) throw std::invalid_argument("mc_exit: x0 is not inside the domain");
    if (!(opts.h > 0.0) || !(opts.t_max > 0.0) || !std::isfinite(opts.t_max))
        throw std::invalid_argument("mc_exit: need h > 0 and finite t_max > 0");
    if (opts.n_paths == 0) throw std::invalid_argument("mc_exit: n_paths must be positive");
    const bool scaled = opts.h_max > opts.h && domain.has_distance();
    const std::size_t n = model.n;

    std::vector<ExitSample> outcomes(opts.n_paths);
    for_each_index(opts.n_paths, opts.exec, [&](std::size_t p) {
        GaussianStream noise = stream.substream(p);
        EulerStepper stepper(model);
        std::vector<double> x(x0.begin(), x0.end()), prev(n), g(n * model.k);
        double t = 0.0;
        double level_prev = domain.level(x);
        ExitSample& out = outcomes[p];
        out.path_id = p;
        std::size_t step_index = 0;
        while (true) {
            double h = opts.h;
            if (scaled) {
                model.diffusion(x, g);
                const double amp = std::max(frobenius(g), 1e-300);
                const double d = domain.distance_bound(x) / (opts.distance_scale * amp);
                h = std::clamp(d * d, opts.h, opts.h_max);
            }
            std::copy(x.begin(), x.end(), prev.begin());
            stepper.step(x, h, noise);
            ++step_index;
            if (!all_finite(x)) throw BlowUpError(step_index, "mc_exit path " + std::to_string(p));
            const double level = domain.level(x);
            if (level >= 0.0) {
                const double frac = std::clamp(-level_prev / (level - level_prev), 0.0, 1.0);
                out.time = t + frac * h;
                out.location.resize(n);
                for (std::size_t i = 0; i < n; ++i) out.location[i] = prev[i] + frac * (x[i] - prev[i]);
                return;
            }
            level_prev = level;
            t += h;
            if (t >= opts.t_max) {
                out.censored = true;
                out.time = t;
                out.location = x;
                return;
            }
        }
    });

    ExitStatistics stats;
    stats.n_paths = opts.n_paths;
    stats.exit_location_histogram.assign(domain.histogram_bins(), 0);
    std::vector<double> times;
    times.reserve(opts.n_paths);
    for (const auto& o : outcomes) {
        if (o.censored) continue;
        times.push_back(o.time);
        const double u = domain.boundary_parameter(o.location);
        if (u >= 0.0 && !stats.exit_location_histogram.empty()) {
            const auto bins = stats.exit_location_histogram.size();
            const auto bin = std::min(static_cast<std::size_t>(u * static_cast<double>(bins)), bins - 1);
            ++stats.exit_location_histogram[bin];
        }
    }
    stats.n_exited = times.size();
    stats.fraction_censored =
        static_cast<double>(opts.n_paths - stats.n_exited) / static_cast<double>(opts.n_paths);
    stats.valid = stats.n_exited > 0;
    if (stats.valid) {
        const Estimate e = mean_estimate(times);
        stats.mean_time = e.value;
        stats.time_std_error = e.std_error;
    }
    for (double lambda : opts.lambdas) {
        std::vector<double> v(opts.n_paths);
        for (std::size_t i = 0; i < outcomes.size(); ++i)
            v[i] = outcomes[i].censored ? 0.0 : std::exp(-lambda * outcomes[i].time);
        stats.laplace.push_back({lambda, mean_estimate(v)});
    }
    if (opts.keep_samples) stats.samples = std::move(outcomes);
    return stats;
}

namespace {

std::string num(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

void write_json(std::ostream& os, const ExitStatistics& s) {
    os << "{\"exit_location_histogram\":[";
    for (std::size_t i = 0; i < s.exit_location_histogram.size(); ++i)
        os << (i ? "," : "") << s.exit_location_histogram[i];
    os << "],\"fraction_censored\":" << num(s.fraction_censored) << ",\"laplace\":[";
    for (std::size_t i = 0; i < s.laplace.size(); ++i)
        os << (i ? "," : "") << "{\"estimate\":" << num(s.laplace[i].estimate.value)
           << ",\"lambda\":" << num(s.laplace[i].lambda) << ",\"std_error\":" << num(s.laplace[i].estimate.std_error)
           << "}";
    os << "],\"mean_time\":" << num(s.mean_time) << ",\"n_exited\":" << s.n_exited << ",\"n_paths\":" << s.n_paths
       << ",\"time_std_error\":" << num(s.time_std_error) << ",\"valid\":" << (s.valid ? "true" : "false") << "}";
}

void write_samples_csv(std::ostream& os, const ExitStatistics& s) {
    const std::size_t dim = s.samples.empty() ? 0 : s.samples.front().location.size();
    os << "path_id,exit_time,censored";
    for (std::size_t i = 0; i < dim; ++i) os << ",x" << i;
    os << '\n';
    for (const auto& e : s.samples) {
        os << e.path_id << ',' << num(e.time) << ',' << (e.censored ? 1 : 0);
        for (double v : e.location) os << ',' << num(v);
        os << '\n';
    }
}

}  // namespace sdelab
