#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace diskbio {

/// Worker count: DISKBIO_THREADS caps it, 0 or unset means hardware auto.
inline int worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("DISKBIO_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return int(std::min<unsigned>(unsigned(v), hw));
    }
    return int(hw);
}

/// Run body(begin, end) over disjoint contiguous blocks of [0, n). Each worker
/// owns its blocks' output rows, so results are bit-identical across runs.
template <typename Body>
void parallel_blocks(int n, Body&& body) {
    int workers = std::min(worker_count(), std::max(1, n));
    if (workers <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        int b = w * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&body, b, e] { body(b, e); });
    }
    for (auto& t : pool) t.join();
}

} // namespace diskbio
