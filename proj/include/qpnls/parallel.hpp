#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace qpnls {

/// Worker count from QPNLS_WORKERS, falling back to 1.
inline unsigned default_workers() {
    if (const char* env = std::getenv("QPNLS_WORKERS")) {
        try {
            long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return 1;
}

/// Splits [0, n) into `workers` contiguous chunks and runs fn(chunk, begin, end)
/// on each. Chunk c always covers the same indices for a given worker count,
/// so callers that combine per-chunk output in chunk order see the same
/// sequence as a serial loop.
template <class Fn>
void for_each_chunk(std::size_t n, unsigned workers, Fn&& fn) {
    workers = std::max(1u, workers);
    if (workers == 1 || n < 2) {
        fn(std::size_t{0}, std::size_t{0}, n);
        return;
    }
    std::size_t chunks = std::min<std::size_t>(workers, n);
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(chunks);
    threads.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        std::size_t begin = n * c / chunks;
        std::size_t end = n * (c + 1) / chunks;
        threads.emplace_back([&, c, begin, end] {
            try {
                fn(c, begin, end);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

inline std::size_t chunk_count(std::size_t n, unsigned workers) {
    workers = std::max(1u, workers);
    return workers == 1 || n < 2 ? 1 : std::min<std::size_t>(workers, n);
}

}  // namespace qpnls
