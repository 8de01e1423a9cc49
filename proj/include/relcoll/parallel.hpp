#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <span>
#include <vector>

namespace relcoll {

/// Serial loops are the reference implementation; parallel loops evaluate
/// the same nodes with OpenMP and must reproduce the serial result bit for bit.
enum class Execution { serial, parallel };

/// Pairwise (cascade) summation; the split points depend only on the length,
/// so the result is independent of how the terms were produced.
double pairwise_sum(std::span<double const> terms);

/// Pairwise sum of weights[i] * values[i].
double pairwise_dot(std::span<double const> weights, std::span<double const> values);

/// Run body(i) for i in [0, count). In parallel mode every iteration still
/// runs and the exception from the lowest failing index is rethrown.
void for_each_index(std::size_t count, Execution exec, std::function<void(std::size_t)> const& body);

/// Number of OpenMP threads the parallel mode will use.
int parallel_threads();

}  // namespace relcoll
