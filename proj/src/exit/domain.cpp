#include "sdelab/exit/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sdelab {

namespace {

double radius_from(std::span<const double> x, const std::vector<double>& center) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - (i < center.size() ? center[i] : 0.0);
        r2 += d * d;
    }
    return std::sqrt(r2);
}

}  // namespace

Domain Domain::ball(double radius, std::vector<double> center) {
    if (!(radius > 0.0)) throw std::invalid_argument("Domain::ball: radius must be positive");
    if (center.empty()) throw std::invalid_argument("Domain::ball: center must have a dimension");
    Domain d;
    d.kind_ = Kind::ball;
    d.a_ = radius;
    d.center_ = std::move(center);
    return d;
}

Domain Domain::interval(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("Domain::interval: need a < b");
    Domain d;
    d.kind_ = Kind::interval;
    d.a_ = a;
    d.b_ = b;
    return d;
}

Domain Domain::half_space(double level, std::size_t axis, Side side) {
    Domain d;
    d.kind_ = Kind::half_space;
    d.a_ = level;
    d.axis_ = axis;
    d.side_ = side;
    return d;
}

Domain Domain::predicate(Level level, bool is_distance, std::string label) {
    if (!level) throw std::invalid_argument("Domain::predicate: empty level function");
    Domain d;
    d.kind_ = Kind::predicate;
    d.level_ = std::move(level);
    d.distance_ = is_distance;
    d.label_ = std::move(label);
    return d;
}

Domain Domain::shell(double r_in, double r_out, std::vector<double> center) {
    if (!(0.0 < r_in && r_in < r_out)) throw std::invalid_argument("Domain::shell: need 0 < r_in < r_out");
    return predicate(
        [r_in, r_out, center](std::span<const double> x) {
            const double r = radius_from(x, center);
            return std::max(r_in - r, r - r_out);
        },
        true, "shell");
}

double Domain::level(std::span<const double> x) const {
    switch (kind_) {
        case Kind::ball: return radius_from(x, center_) - a_;
        case Kind::interval: return std::max(a_ - x[0], x[0] - b_);
        case Kind::half_space: {
            if (axis_ >= x.size()) throw std::out_of_range("Domain::half_space: axis out of range");
            return side_ == Side::below ? x[axis_] - a_ : a_ - x[axis_];
        }
        case Kind::predicate: return level_(x);
    }
    return 0.0;
}

double Domain::distance_bound(std::span<const double> x) const {
    if (!has_distance()) return 0.0;
    return std::max(0.0, -level(x));
}

double Domain::boundary_parameter(std::span<const double> p) const {
    switch (kind_) {
        case Kind::ball: {
            if (p.size() == 1) return p[0] >= center_[0] ? 0.5 : 0.0;
            const double angle = std::atan2(p[1] - center_[1], p[0] - center_[0]);
            const double u = (angle + std::numbers::pi) / (2.0 * std::numbers::pi);
            return u >= 1.0 ? 0.0 : u;
        }
        case Kind::interval: return p[0] >= 0.5 * (a_ + b_) ? 0.5 : 0.0;
        default: return -1.0;
    }
}

std::size_t Domain::histogram_bins() const {
    switch (kind_) {
        case Kind::ball: return 64;
        case Kind::interval: return 2;
        default: return 0;
    }
}

std::string Domain::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::ball: os << "ball(R=" << a_ << ")"; break;
        case Kind::interval: os << "interval(" << a_ << ", " << b_ << ")"; break;
        case Kind::half_space:
            os << "half_space(x[" << axis_ << "] " << (side_ == Side::below ? "<" : ">") << " " << a_ << ")";
            break;
        case Kind::predicate: os << label_; break;
    }
    return os.str();
}

}  // namespace sdelab
