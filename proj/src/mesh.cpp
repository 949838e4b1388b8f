#include "vofde/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vofde/error.hpp"

namespace vofde {

OrderRangeError::OrderRangeError(double x, double t, double value)
    : Error([&] {
          std::ostringstream os;
          os.precision(17);
          os << "order gamma(x=" << x << ", t=" << t << ") = " << value << " lies outside [0, 1]";
          return os.str();
      }()),
      x_(x),
      t_(t),
      value_(value) {}

SpatialGrid::SpatialGrid(double x_left, double x_right, int intervals)
    : x_left_(x_left), x_right_(x_right), intervals_(intervals) {
    if (!std::isfinite(x_left) || !std::isfinite(x_right) || !(x_right > x_left)) {
        throw MeshError("spatial grid needs finite x_right > x_left");
    }
    if (intervals < 2) {
        throw MeshError("spatial grid needs at least 2 intervals");
    }
    dx_ = (x_right - x_left) / intervals;
}

double SpatialGrid::x(std::size_t j) const noexcept {
    if (j == 0) return x_left_;
    if (j >= static_cast<std::size_t>(intervals_)) return x_right_;
    return x_left_ + static_cast<double>(j) * dx_;
}

std::size_t SpatialGrid::nearest(double x) const noexcept {
    const double s = std::round((x - x_left_) / dx_);
    if (!(s > 0.0)) return 0;
    return std::min(static_cast<std::size_t>(s), static_cast<std::size_t>(intervals_));
}

std::vector<double> SpatialGrid::nodes() const {
    std::vector<double> out(size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = x(j);
    return out;
}

SpatialGrid build_grid(double x_left, double x_right, int intervals) {
    return SpatialGrid(x_left, x_right, intervals);
}

TimeMesh TimeMesh::from_nodes(std::vector<double> nodes) {
    if (nodes.empty() || nodes.front() != 0.0) {
        throw MeshError("time mesh must start at t_0 = 0");
    }
    for (std::size_t m = 1; m < nodes.size(); ++m) {
        if (!std::isfinite(nodes[m]) || !(nodes[m] > nodes[m - 1])) {
            throw MeshError("time mesh must be strictly increasing");
        }
    }
    TimeMesh mesh;
    mesh.nodes_ = std::move(nodes);
    return mesh;
}

void TimeMesh::append(double delta) {
    if (!std::isfinite(delta) || !(delta > 0.0)) {
        throw MeshError("time increment must be positive and finite");
    }
    const double next = nodes_.back() + delta;
    if (!(next > nodes_.back())) {
        throw StepUnderflowError("time increment is below the representable spacing at t_n");
    }
    nodes_.push_back(next);
}

TimeMesh append_time(TimeMesh mesh, double delta) {
    mesh.append(delta);
    return mesh;
}

}  // namespace vofde
