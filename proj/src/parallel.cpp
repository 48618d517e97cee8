#include "se1p/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace se1p {

int default_threads() {
  if (const char* env = std::getenv("SE1P_THREADS")) {
    try {
      int t = std::stoi(env);
      if (t > 0) return t;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

int resolve_threads(int threads) { return threads > 0 ? threads : default_threads(); }

int worker_count(std::size_t n, int threads) {
  int t = resolve_threads(threads);
  if (t <= 1 || n < 2) return 1;
  return static_cast<std::size_t>(t) > n ? static_cast<int>(n) : t;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t, int)>& body) {
  int t = worker_count(n, threads);
  if (t == 1) {
    body(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(t);
  for (int w = 0; w < t; ++w) {
    std::size_t b = n * w / t, e = n * (w + 1) / t;
    pool.emplace_back([&, b, e, w] {
      try {
        body(b, e, w);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace se1p
