#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vofde/history.hpp"
#include "vofde/problem.hpp"

namespace vofde::l1 {

/// base^p with the convention 0^p = 0 for every p >= 0 (including p = 0).
double pow0(double base, double p);

/// L1 weights T^{m,n}, m = 0..n-1, for one order value at step n:
///   T^{m,n} = [(t_n - t_m)^{1-gamma} - (t_n - t_{m+1})^{1-gamma}] / tau_{m+1}.
struct CaputoWeights {
    std::vector<double> values;
};

/// Weights for the mesh prefix t_0..t_n (n = times.size() - 1 >= 1).
/// Throws MeshError if the nodes are not strictly increasing from 0, and
/// DomainError if gamma is outside [0, 1].
CaputoWeights caputo_weights(std::span<const double> times, double gamma);

/// The same weights multiplied by tau_n^gamma (the scheme's T-tilde).
CaputoWeights scaled_weights(std::span<const double> times, double gamma);

/// Row system over interior nodes 1..J-1. lower[0] and upper[N-1] are zero;
/// the Dirichlet couplings are already folded into rhs.
struct TridiagonalSystem {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;
    std::vector<double> rhs;
};

/// Deterministic kernel work counters.
struct WorkCounters {
    /// Memory-sum terms per node summed over nodes and steps: a step
    /// producing node n charges n terms to each interior node.
    std::uint64_t history_terms = 0;
    std::uint64_t implicit_steps = 0;
    /// Distinct weight vectors built (one per distinct order value per step).
    std::uint64_t weight_vectors = 0;
};

/// U^{n-1}_j - sum_{m=0}^{n-2} Ttilde^{m,n} (U^{m+1}_j - U^m_j), where
/// `scaled` holds at least n-1 scaled weights for node j and n is the index
/// of the step being built (history.size()).
double memory_operator(const HistoryView& history, std::span<const double> scaled, std::size_t j);

/// Builds the implicit system for the node t_new > last history time.
TridiagonalSystem assemble_step(const ProblemSpec& spec, const HistoryView& history, double t_new,
                                WorkCounters* counters = nullptr);

/// Thomas algorithm. Throws NumericalError on a zero or non-finite pivot.
std::vector<double> thomas_solve(const TridiagonalSystem& system);

/// One implicit step of size delta from the last history node; returns the
/// full field including the boundary values at the new time.
Field implicit_step(const ProblemSpec& spec, const HistoryView& history, double delta,
                    WorkCounters* counters = nullptr);

}  // namespace vofde::l1
