#include "sdelab/pde/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sdelab {

Grid1D::Grid1D(double x_min, double x_max, std::size_t n_cells)
    : x_min_(x_min), x_max_(x_max), n_cells_(n_cells) {
    if (!(x_min < x_max)) throw std::invalid_argument("Grid1D: x_min must be below x_max");
    if (n_cells < 2) throw std::invalid_argument("Grid1D: need at least two cells");
}

double Grid1D::node(std::size_t i) const {
    if (i == n_cells_) return x_max_;
    return x_min_ + static_cast<double>(i) * dx();
}

std::vector<double> Grid1D::nodes() const {
    std::vector<double> x(size());
    for (std::size_t i = 0; i < size(); ++i) x[i] = node(i);
    return x;
}

std::vector<double> Grid1D::weights() const {
    std::vector<double> w(size(), dx());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

std::size_t Grid1D::nearest(double x) const {
    const double pos = std::round((x - x_min_) / dx());
    if (pos <= 0.0) return 0;
    return std::min(static_cast<std::size_t>(pos), n_cells_);
}

std::vector<double> Grid1D::sample(const std::function<double(double)>& f) const {
    std::vector<double> v(size());
    for (std::size_t i = 0; i < size(); ++i) v[i] = f(node(i));
    return v;
}

BoundaryCondition parse_boundary_condition(const std::string& name) {
    if (name == "dirichlet_zero" || name == "dirichlet") return BoundaryCondition::dirichlet_zero;
    if (name == "neumann_zero" || name == "neumann") return BoundaryCondition::neumann_zero;
    if (name == "natural") return BoundaryCondition::natural;
    throw std::invalid_argument("unknown boundary condition '" + name + "'");
}

std::string to_string(BoundaryCondition bc) {
    switch (bc) {
        case BoundaryCondition::dirichlet_zero: return "dirichlet_zero";
        case BoundaryCondition::neumann_zero: return "neumann_zero";
        case BoundaryCondition::natural: return "natural";
    }
    return "?";
}

double DensityField::mass() const {
    const auto w = grid.weights();
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) m += w[i] * values[i];
    return m;
}

double DensityField::mean() const {
    const auto w = grid.weights();
    double m = 0.0, s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        m += w[i] * values[i];
        s += w[i] * values[i] * grid.node(i);
    }
    return s / m;
}

double DensityField::variance() const {
    const auto w = grid.weights();
    const double mu = mean();
    double m = 0.0, s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = grid.node(i) - mu;
        m += w[i] * values[i];
        s += w[i] * values[i] * d * d;
    }
    return s / m;
}

double DensityField::boundary_mass(std::size_t n_nodes) const {
    const auto w = grid.weights();
    const std::size_t n = std::min(n_nodes, values.size() / 2);
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m += w[i] * std::abs(values[i]) + w[values.size() - 1 - i] * std::abs(values[values.size() - 1 - i]);
    return m;
}

double l1_distance(const DensityField& a, const DensityField& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("l1_distance: grids differ");
    const auto w = a.grid.weights();
    double d = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) d += w[i] * std::abs(a.values[i] - b.values[i]);
    return d;
}

double l1_distance(const DensityField& a, const std::function<double(double)>& f) {
    const auto w = a.grid.weights();
    double d = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) d += w[i] * std::abs(a.values[i] - f(a.grid.node(i)));
    return d;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

void write_csv(std::ostream& os, const DensityField& field) {
    os << "x,value\n";
    for (std::size_t i = 0; i < field.values.size(); ++i)
        os << format_double(field.grid.node(i)) << ',' << format_double(field.values[i]) << '\n';
}

DensityField read_density_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "x,value") throw std::runtime_error("density CSV: missing header");
    std::vector<double> xs, vs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("density CSV: malformed row");
        xs.push_back(std::stod(line.substr(0, comma)));
        vs.push_back(std::stod(line.substr(comma + 1)));
    }
    if (xs.size() < 3) throw std::runtime_error("density CSV: too few rows");
    return DensityField{Grid1D(xs.front(), xs.back(), xs.size() - 1), vs, 0.0};
}

}  // namespace sdelab
