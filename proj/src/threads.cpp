#include "hankelrec/threads.hpp"

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace hankelrec {

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  if (threads <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = std::min(threads, n);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    // Static chunking: worker w covers [w * n / workers, (w + 1) * n / workers).
    const int begin = static_cast<int>(static_cast<long long>(w) * n / workers);
    const int end = static_cast<int>(static_cast<long long>(w + 1) * n / workers);
    pool.emplace_back([&, w, begin, end] {
      try {
        for (int i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

int default_thread_count() {
  const char* env = std::getenv("HANKELREC_THREADS");
  if (!env) return 1;
  try {
    const int v = std::stoi(env);
    return v > 0 ? v : 1;
  } catch (const std::exception&) {
    return 1;
  }
}

}  // namespace hankelrec
