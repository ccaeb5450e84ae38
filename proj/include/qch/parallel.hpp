#pragma once

#include <cstddef>
#include <functional>

namespace qch {

/// Worker cap: QCH_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(begin, end) over [0, n) split into contiguous chunks, one per
/// worker. Bodies must only write to disjoint state.
void parallel_for_chunks(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& body);

/// Result of an argmax reduction; ties resolve to the smallest index.
struct MaxResult {
  double value = -1.0 / 0.0;
  std::size_t index = 0;
};

/// Deterministic max-reduction of f(i) over [0, n).
MaxResult parallel_max(std::size_t n, const std::function<double(std::size_t)>& f);

}  // namespace qch
