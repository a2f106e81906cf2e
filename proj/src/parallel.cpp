#include "superell/parallel.hpp"

namespace superell {

void parallel_segments(u64 n, u32 workers, const std::function<void(u32, u64, u64)>& fn) {
    if (workers <= 1 || n < 2 * workers) {
        fn(0, 0, n);
        return;
    }
    const u64 chunk = n / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (u32 w = 0; w < workers; ++w) {
        const u64 lo = w * chunk;
        const u64 hi = (w + 1 == workers) ? n : lo + chunk;
        pool.emplace_back([&fn, w, lo, hi] { fn(w, lo, hi); });
    }
    for (auto& t : pool) t.join();
}

} // namespace superell
