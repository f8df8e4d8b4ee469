#include "gausslab/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace gausslab {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GAUSSLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0 && v < 4096) return static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_blocks(std::size_t n, int threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  std::size_t nblocks = static_cast<std::size_t>(threads < 1 ? 1 : threads);
  if (nblocks > n) nblocks = n;
  if (nblocks == 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nblocks);
  std::vector<std::exception_ptr> errors(nblocks);
  for (std::size_t b = 0; b < nblocks; ++b) {
    std::size_t begin = n * b / nblocks;
    std::size_t end = n * (b + 1) / nblocks;
    pool.emplace_back([&fn, &errors, b, begin, end] {
      try {
        fn(b, begin, end);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace gausslab
