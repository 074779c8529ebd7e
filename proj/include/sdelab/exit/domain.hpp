#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace sdelab {

/// Open set A whose first-exit time tau = inf{t > 0 : X_t not in A} is
/// estimated. Every kind is described by a level function that is negative
/// inside and nonnegative outside; exit times are interpolated on it.
class Domain {
public:
    enum class Kind { ball, interval, half_space, predicate };
    /// Side of a half space that forms the domain.
    enum class Side { below, above };

    /// Level function for predicate domains. When `is_distance` is set the
    /// magnitude must be a lower bound on the Euclidean distance to the
    /// boundary, which enables distance-scaled time steps.
    using Level = std::function<double(std::span<const double>)>;

    static Domain ball(double radius, std::vector<double> center);
    static Domain interval(double a, double b);
    /// {x : x[axis] < level} (below) or {x : x[axis] > level} (above).
    static Domain half_space(double level, std::size_t axis, Side side);
    static Domain predicate(Level level, bool is_distance = false, std::string label = "predicate");
    /// {r_in < |x - center| < r_out}, a predicate domain with exact distance.
    static Domain shell(double r_in, double r_out, std::vector<double> center);

    Kind kind() const { return kind_; }
    bool contains(std::span<const double> x) const { return level(x) < 0.0; }
    double level(std::span<const double> x) const;
    /// Lower bound on the distance to the boundary, or 0 if unknown.
    double distance_bound(std::span<const double> x) const;
    bool has_distance() const { return kind_ != Kind::predicate || distance_; }

    /// Boundary parameter in [0, 1) used for the exit-location histogram:
    /// polar angle of the first two coordinates for balls, 0 / 0.5 for the
    /// left / right end of an interval. Negative if the kind has none.
    double boundary_parameter(std::span<const double> exit_point) const;
    /// Number of histogram bins for this kind (64 for balls, 2 for intervals).
    std::size_t histogram_bins() const;

    std::string describe() const;

private:
    Kind kind_ = Kind::ball;
    double a_ = 0.0, b_ = 0.0;
    std::size_t axis_ = 0;
    Side side_ = Side::below;
    std::vector<double> center_;
    Level level_;
    bool distance_ = false;
    std::string label_;
};

}  // namespace sdelab
