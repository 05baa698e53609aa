#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace polaron {

// Run fn(i) for i in [0, tasks) on up to `threads` workers.  Tasks write to
// their own result slots; callers reduce in task order afterwards, so results
// do not depend on scheduling.
inline void parallel_for(int tasks, int threads,
                         const std::function<void(int)>& fn) {
    if (threads <= 1 || tasks <= 1) {
        for (int i = 0; i < tasks; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= tasks) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int count = std::min(threads, tasks);
    pool.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace polaron
