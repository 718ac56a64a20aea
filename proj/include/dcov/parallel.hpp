#pragma once

#include <cstddef>
#include <functional>

namespace dcov {

/// Worker count used by the parallel kernels. Defaults to $DCOV_THREADS, else 1.
std::size_t num_threads();
void set_num_threads(std::size_t n);

/// Runs body(i) for i in [begin, end), split into contiguous blocks over the
/// configured workers. Each index is visited exactly once; bodies must write
/// only to per-index slots so results do not depend on the worker count.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

/// RAII override of the worker count.
class ThreadScope {
 public:
  explicit ThreadScope(std::size_t n) : saved_(num_threads()) { set_num_threads(n); }
  ~ThreadScope() { set_num_threads(saved_); }
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  std::size_t saved_;
};

}  // namespace dcov
