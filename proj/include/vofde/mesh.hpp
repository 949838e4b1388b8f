#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vofde {

/// Uniform 1-D grid with nodes x_j = x_left + j*dx, j = 0..J.
class SpatialGrid {
public:
    /// [0, 1] with 2 intervals.
    SpatialGrid() : SpatialGrid(0.0, 1.0, 2) {}
    SpatialGrid(double x_left, double x_right, int intervals);

    double x_left() const noexcept { return x_left_; }
    double x_right() const noexcept { return x_right_; }
    int intervals() const noexcept { return intervals_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(intervals_) + 1; }
    std::size_t interior_size() const noexcept { return static_cast<std::size_t>(intervals_) - 1; }
    double dx() const noexcept { return dx_; }

    /// Endpoints are returned exactly; interior nodes are x_left + j*dx.
    double x(std::size_t j) const noexcept;

    /// Index of the node closest to `x` (clamped to the grid).
    std::size_t nearest(double x) const noexcept;

    std::vector<double> nodes() const;

private:
    double x_left_;
    double x_right_;
    int intervals_;
    double dx_;
};

SpatialGrid build_grid(double x_left, double x_right, int intervals);

/// Strictly increasing time nodes starting at t_0 = 0.
class TimeMesh {
public:
    TimeMesh() : nodes_{0.0} {}

    /// Builds a mesh from explicit nodes; throws MeshError unless they start
    /// at 0 and increase strictly.
    static TimeMesh from_nodes(std::vector<double> nodes);

    std::size_t size() const noexcept { return nodes_.size(); }
    /// Index of the last node (n in t_0..t_n).
    std::size_t last_index() const noexcept { return nodes_.size() - 1; }
    double back() const noexcept { return nodes_.back(); }
    double operator[](std::size_t m) const noexcept { return nodes_[m]; }
    /// tau_m = t_m - t_{m-1}, m >= 1.
    double increment(std::size_t m) const noexcept { return nodes_[m] - nodes_[m - 1]; }
    std::span<const double> nodes() const noexcept { return nodes_; }

    /// Appends t_n + delta. Throws MeshError for non-positive or non-finite
    /// delta, StepUnderflowError when t_n + delta rounds to t_n.
    void append(double delta);

private:
    std::vector<double> nodes_;
};

/// Functional form of TimeMesh::append.
TimeMesh append_time(TimeMesh mesh, double delta);

}  // namespace vofde
