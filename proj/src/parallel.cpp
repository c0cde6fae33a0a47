#include "relspec/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

#include "relspec/config.hpp"

namespace relspec {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  if (threads == 0) threads = default_threads();
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      for (std::size_t i = begin; i < end; ++i) {
        try {
          body(i);
        } catch (...) {
          errors[w] = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  // Blocks are ordered, so the first recorded error has the smallest index.
  for (std::size_t w = 0; w < workers; ++w) {
    if (errors[w]) std::rethrow_exception(errors[w]);
  }
}

}  // namespace relspec
