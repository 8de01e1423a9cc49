#include "relcoll/parallel.hpp"

#include <mutex>
#include <stdexcept>

#include <omp.h>

namespace relcoll {

namespace {
constexpr std::size_t kPairwiseBlock = 8;
}

double pairwise_sum(std::span<double const> terms)
{
    if (terms.size() <= kPairwiseBlock) {
        double acc = 0.0;
        for (double t : terms) {
            acc += t;
        }
        return acc;
    }
    std::size_t const half = terms.size() / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

double pairwise_dot(std::span<double const> weights, std::span<double const> values)
{
    if (weights.size() != values.size()) {
        throw std::invalid_argument("pairwise_dot: length mismatch");
    }
    if (weights.size() <= kPairwiseBlock) {
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i] * values[i];
        }
        return acc;
    }
    std::size_t const half = weights.size() / 2;
    return pairwise_dot(weights.first(half), values.first(half))
           + pairwise_dot(weights.subspan(half), values.subspan(half));
}

void for_each_index(std::size_t count, Execution exec, std::function<void(std::size_t)> const& body)
{
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }

    std::exception_ptr failure;
    std::size_t failure_index = count;
    std::mutex failure_mutex;
    auto const signed_count = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < signed_count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            // keep the lowest index so the report matches the serial loop
            if (static_cast<std::size_t>(i) < failure_index) {
                failure_index = static_cast<std::size_t>(i);
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

int parallel_threads()
{
    return omp_get_max_threads();
}

}  // namespace relcoll
