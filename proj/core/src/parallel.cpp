#include "contractlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "contractlab/caps.hpp"
#include "contractlab/errors.hpp"

namespace contractlab {

void require_within_cap(std::size_t n, std::size_t cap, const std::string& what) {
  if (n > cap) {
    throw CapExceeded(what + ": n = " + std::to_string(n) + " exceeds the cap of " + std::to_string(cap));
  }
}

std::size_t worker_count() {
  if (const char* env = std::getenv("CONTRACTLAB_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

namespace {
constexpr std::uint64_t kMinChunk = 2048;
constexpr std::size_t kMaxChunks = 64;
}  // namespace

ChunkPlan::ChunkPlan(std::uint64_t total) : total_(total) {
  const std::uint64_t by_size = (total + kMinChunk - 1) / kMinChunk;
  chunks_ = static_cast<std::size_t>(std::clamp<std::uint64_t>(by_size, 1, kMaxChunks));
}

std::uint64_t ChunkPlan::begin(std::size_t c) const { return total_ * c / chunks_; }

std::uint64_t ChunkPlan::end(std::size_t c) const { return total_ * (c + 1) / chunks_; }

void run_chunks(const ChunkPlan& plan, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(worker_count(), plan.size());
  if (workers <= 1) {
    for (std::size_t c = 0; c < plan.size(); ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t c = next++; c < plan.size(); c = next++) {
      try {
        body(c);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace contractlab
