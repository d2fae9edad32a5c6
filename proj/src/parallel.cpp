#include "citerank/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace citerank {

unsigned effective_workers(std::size_t n, unsigned threads) {
  if (threads <= 1 || n < 2) return 1;
  return static_cast<unsigned>(std::min<std::size_t>(threads, n));
}

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  const unsigned workers = effective_workers(n, threads);
  if (workers == 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace citerank
