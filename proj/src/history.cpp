#include "vofde/history.hpp"

#include "vofde/error.hpp"

namespace vofde {

SolutionHistory::SolutionHistory(Field initial) {
    if (initial.size() < 3) {
        throw MeshError("solution history needs a field with at least 3 nodes");
    }
    fields_.push_back(std::move(initial));
}

void SolutionHistory::push(double delta, Field field) {
    if (field.size() != field_size()) {
        throw MeshError("field size does not match the history");
    }
    mesh_.append(delta);
    increments_.push_back(field_difference(field, fields_.back()));
    fields_.push_back(std::move(field));
}

Field field_difference(const Field& newer, const Field& older) {
    Field d(newer.size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = newer[j] - older[j];
    return d;
}

}  // namespace vofde
