#include "ctop/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ctop {

namespace {
std::atomic<int>& configured() {
  static std::atomic<int> n{[] {
    const char* env = std::getenv("CTOP_THREADS");
    int v = env ? std::atoi(env) : 1;
    return v > 0 ? v : 1;
  }()};
  return n;
}

thread_local bool insideWorker = false;
}  // namespace

void setThreadCount(int n) { configured() = n > 0 ? n : 1; }
int threadCount() { return configured(); }

void parallelFor(std::size_t n, const std::function<void(std::size_t)>& body) {
  int threads = threadCount();
  // nested calls run inline
  if (threads <= 1 || n <= 1 || insideWorker) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::size_t errIndex = n;
  std::mutex errMu;
  auto work = [&] {
    insideWorker = true;
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      try {
        body(i);
      } catch (...) {
        // keep the lowest failing index so the reported error is schedule-independent
        std::lock_guard lk(errMu);
        if (i < errIndex) {
          errIndex = i;
          err = std::current_exception();
        }
      }
    }
    insideWorker = false;
  };
  std::vector<std::thread> pool;
  int k = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(threads)));
  for (int t = 1; t < k; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace ctop
