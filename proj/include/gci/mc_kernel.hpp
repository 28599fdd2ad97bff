#pragma once

#include "gci/measures.hpp"
#include "gci/moments.hpp"

#include <omp.h>

#include <cstdint>
#include <exception>
#include <stdexcept>
#include <vector>

namespace gci {

enum class Execution { serial, parallel };

/// Threads used by Execution::parallel; 0 keeps the OpenMP default.
void set_thread_count(int threads);
int thread_count();

struct SamplePlan {
  std::uint64_t seed = 0;
  std::size_t n = 0;
};

/// Monte Carlo driver shared by every estimator.
///
/// Draws `plan.n` points from `measure` in blocks of kBlockSize (block b uses
/// substream (seed, b)), feeds each to `observe(x, out)` which writes k
/// observables, and accumulates their moments per block. Blocks are merged
/// in index order, so serial and parallel runs agree bit for bit.
/// `observe` must be safe to call concurrently.
template <class Observe>
Moments accumulate(const Measure& measure, const SamplePlan& plan, std::size_t k, Observe&& observe,
                   Execution exec = Execution::parallel, const std::vector<std::vector<std::size_t>>& groups = {}) {
  if (plan.n == 0) throw std::invalid_argument("sample count must be positive");
  const std::size_t blocks = (plan.n + kBlockSize - 1) / kBlockSize;
  std::vector<Moments> partial(blocks, Moments(k, groups));

  auto run_block = [&](std::size_t b, Point& x, std::vector<double>& out) {
    RandomStream rng(plan.seed, b);
    const std::size_t end = std::min(plan.n, (b + 1) * kBlockSize);
    for (std::size_t i = b * kBlockSize; i < end; ++i) {
      draw(measure, rng, x);
      observe(static_cast<const Point&>(x), std::span<double>(out));
      partial[b].add(out);
    }
  };

  if (exec == Execution::serial) {
    Point x(dim(measure));
    std::vector<double> out(k);
    for (std::size_t b = 0; b < blocks; ++b) run_block(b, x, out);
  } else {
    std::exception_ptr failure;
#pragma omp parallel
    {
      Point x(dim(measure));
      std::vector<double> out(k);
#pragma omp for schedule(dynamic, 1)
      for (std::size_t b = 0; b < blocks; ++b) {
        try {
          run_block(b, x, out);
        } catch (...) {
#pragma omp critical(gci_mc_failure)
          if (!failure) failure = std::current_exception();
        }
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  Moments total(k, groups);
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace gci
