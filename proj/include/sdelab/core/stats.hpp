#pragma once

#include <functional>
#include <span>
#include <vector>

namespace sdelab {

/// Monte Carlo estimate with its standard error.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

/// Sample mean and standard error of the mean (unbiased variance).
Estimate mean_estimate(std::span<const double> samples);

double sample_variance(std::span<const double> samples);

/// Kolmogorov-Smirnov statistic sup|F_n - F| for the given samples.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Empirical quantile with linear interpolation, q in [0, 1].
double quantile(std::vector<double> samples, double q);

double normal_cdf(double x);
double normal_quantile(double p);

/// Least squares fit y = intercept + slope * x.
struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
};
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace sdelab
