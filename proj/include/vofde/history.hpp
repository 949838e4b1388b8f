#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vofde/mesh.hpp"

namespace vofde {

using Field = std::vector<double>;

/// Accepted time nodes t_0..t_n and the full spatial field at each one.
/// Increments U^{m+1} - U^m are stored alongside the fields so the memory
/// sum can reuse them at every later step.
class SolutionHistory {
public:
    SolutionHistory(Field initial);

    std::size_t size() const noexcept { return fields_.size(); }
    std::size_t last_index() const noexcept { return fields_.size() - 1; }
    const TimeMesh& mesh() const noexcept { return mesh_; }
    std::span<const double> times() const noexcept { return mesh_.nodes(); }
    double time(std::size_t m) const noexcept { return mesh_[m]; }
    double back_time() const noexcept { return mesh_.back(); }
    const Field& field(std::size_t m) const noexcept { return fields_[m]; }
    const Field& back() const noexcept { return fields_.back(); }
    /// U^{m+1} - U^m, m in [0, size() - 2].
    const Field& increment(std::size_t m) const noexcept { return increments_[m]; }
    std::size_t field_size() const noexcept { return fields_.front().size(); }

    /// Appends the node t_n + delta with the given field.
    void push(double delta, Field field);

private:
    TimeMesh mesh_;
    std::vector<Field> fields_;
    std::vector<Field> increments_;
};

/// A history, optionally extended by one provisional node that has not been
/// accepted. Used to chain the two half steps of a trial without mutating the
/// accepted history.
class HistoryView {
public:
    HistoryView(const SolutionHistory& base) : base_(&base) {}  // NOLINT: implicit by design of the call sites
    HistoryView(const SolutionHistory& base, double extra_time, const Field& extra_field,
                const Field& extra_increment)
        : base_(&base), extra_time_(extra_time), extra_field_(&extra_field), extra_increment_(&extra_increment) {}

    std::size_t size() const noexcept { return base_->size() + (extra_field_ ? 1 : 0); }
    std::size_t last_index() const noexcept { return size() - 1; }
    double time(std::size_t m) const noexcept {
        return m < base_->size() ? base_->time(m) : extra_time_;
    }
    double back_time() const noexcept { return time(last_index()); }
    const Field& field(std::size_t m) const noexcept {
        return m < base_->size() ? base_->field(m) : *extra_field_;
    }
    const Field& back() const noexcept { return field(last_index()); }
    const Field& increment(std::size_t m) const noexcept {
        return m + 1 < base_->size() ? base_->increment(m) : *extra_increment_;
    }
    std::size_t field_size() const noexcept { return base_->field_size(); }

private:
    const SolutionHistory* base_;
    double extra_time_ = 0.0;
    const Field* extra_field_ = nullptr;
    const Field* extra_increment_ = nullptr;
};

Field field_difference(const Field& newer, const Field& older);

}  // namespace vofde
