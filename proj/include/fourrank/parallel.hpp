#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "fourrank/error.hpp"

namespace fourrank {

/// Thread count from FOURRANK_THREADS, else the hardware concurrency.
inline unsigned default_thread_count()
{
    if (const char* env = std::getenv("FOURRANK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1 || v > 1024)
            throw domain_error(std::string("FOURRANK_THREADS must be an integer in [1, 1024], got '") + env + "'");
        return unsigned(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs work(chunk_index, begin, end) over fixed-size chunks of [0, count). The chunking does
/// not depend on the thread count, so per-chunk results folded in chunk order are
/// reproducible. The first exception thrown by a worker is rethrown.
template <class Work>
void parallel_chunks(std::size_t count, std::size_t chunk, unsigned threads, Work&& work)
{
    if (chunk == 0)
        throw domain_error("parallel_chunks: chunk size must be positive");
    const std::size_t nchunks = (count + chunk - 1) / chunk;
    threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(nchunks, 1))));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= nchunks)
                return;
            try {
                work(c, c * chunk, std::min(count, (c + 1) * chunk));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = nchunks;
                return;
            }
        }
    };
    if (threads == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(run);
        for (auto& th : pool)
            th.join();
    }
    if (error)
        std::rethrow_exception(error);
}

/// Deterministic parallel map: out[i] = f(i).
template <class T, class F> std::vector<T> parallel_map(std::size_t count, unsigned threads, F&& f)
{
    std::vector<T> out(count);
    parallel_chunks(count, 1, threads, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            out[i] = f(i);
    });
    return out;
}

} // namespace fourrank
