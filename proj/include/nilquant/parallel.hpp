#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace nilquant {

// Worker count: NILQUANT_THREADS if set and positive, else hardware threads.
int worker_count();

// Runs body(i) for i in [0, n). Each index is handled by exactly one worker,
// so results written per index are deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Fixed-order pairwise summation.
std::complex<double> pairwise_sum(const std::complex<double>* data, std::size_t n);
double pairwise_sum(const double* data, std::size_t n);

}  // namespace nilquant
