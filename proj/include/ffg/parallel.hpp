#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace ffg {

// out[k] = fn(k) for k < n on up to `workers` threads. Results keep input
// order; the first exception (by index) is rethrown after all threads join.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, int workers, Fn fn) {
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errs(n);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t k; (k = next++) < n;) {
      try {
        slots[k].emplace(fn(k));
      } catch (...) {
        errs[k] = std::current_exception();
      }
    }
  };
  const std::size_t t = std::clamp<std::size_t>(workers < 1 ? 1 : workers, 1, std::max<std::size_t>(n, 1));
  if (t == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < t; ++i) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace ffg
