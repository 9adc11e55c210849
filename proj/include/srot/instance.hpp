#pragma once

#include <cstdint>
#include <iosfwd>

#include "srot/core.hpp"
#include "srot/rng.hpp"

namespace srot {

/// Random probability vector with entries drawn from U[0.05, 1) and normalized.
Vector random_histogram(Index size, Rng& rng);

/// Histogram on the grid {k / units}: every entry is a positive multiple of
/// 1/units. Requires units >= size.
Vector random_grid_histogram(Index size, int units, Rng& rng);

/// C ~ U[0,1)^{m x n} with random histograms; deterministic in `seed`.
Problem random_problem(Index rows, Index cols, double lambda, std::uint64_t seed);

/// Each column an independent random point of b_i * Delta_m.
TransportPlan random_feasible_plan(const Vector& target, Index rows, Rng& rng);

/// Plain-text instance format:
///   m n
///   a_1 ... a_m
///   b_1 ... b_n
///   C (m rows of n values)
/// Lambda is not part of the file.
Problem read_instance(std::istream& in, double lambda);
void write_instance(std::ostream& out, const Problem& problem);

}  // namespace srot
