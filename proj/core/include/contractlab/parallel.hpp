#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace contractlab {

// Worker threads to use; CONTRACTLAB_THREADS overrides hardware_concurrency().
std::size_t worker_count();

// A split of [0, total) into contiguous chunks. The split depends only on total,
// never on the worker count, so reductions over chunk results are reproducible
// on any machine.
class ChunkPlan {
 public:
  explicit ChunkPlan(std::uint64_t total);

  std::size_t size() const { return chunks_; }
  std::uint64_t begin(std::size_t c) const;
  std::uint64_t end(std::size_t c) const;

 private:
  std::uint64_t total_;
  std::size_t chunks_;
};

// Runs body(chunk) for every chunk on up to worker_count() threads. The first
// exception thrown by any chunk is rethrown on the calling thread.
void run_chunks(const ChunkPlan& plan, const std::function<void(std::size_t)>& body);

// Convenience: evaluates fn(begin, end) per chunk, results in chunk order.
template <class R, class Fn>
std::vector<R> map_chunks(std::uint64_t total, Fn&& fn) {
  ChunkPlan plan(total);
  std::vector<R> out(plan.size());
  run_chunks(plan, [&](std::size_t c) { out[c] = fn(plan.begin(c), plan.end(c)); });
  return out;
}

}  // namespace contractlab
