#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace mwsn {

/// Worker count; 0 means "use the hardware concurrency".
struct Parallelism {
    unsigned threads = 1;
};

unsigned resolve_threads(Parallelism p);

/// Calls fn(block) for every block in [0, blocks). Blocks are claimed
/// dynamically, so fn must only write to block-private storage; callers merge
/// block results in index order to keep reductions independent of the
/// worker count.
template <class Fn>
void for_each_block(std::size_t blocks, Parallelism p, Fn&& fn) {
    const unsigned workers = std::min<std::size_t>(resolve_threads(p), blocks);
    if (workers <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) fn(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) fn(b);
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
}

}  // namespace mwsn
