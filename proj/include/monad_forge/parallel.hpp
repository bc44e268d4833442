#ifndef MONAD_FORGE_PARALLEL_HPP
#define MONAD_FORGE_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace monad_forge
{

// Worker count: MONAD_FORGE_THREADS if set to a positive integer, else hardware concurrency.
inline unsigned thread_count()
{
    if (const char *env = std::getenv("MONAD_FORGE_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::exception &) {
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

// Runs fn(chunk_index, begin, end) over [0, n) split into contiguous chunks and returns
// the per-chunk results in chunk order, so merged output does not depend on scheduling.
template <typename Fn>
auto parallel_chunks(std::size_t n, Fn fn, unsigned threads = thread_count())
{
    using result_type = decltype(fn(std::size_t{}, std::size_t{}, std::size_t{}));
    const std::size_t nchunks = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
    std::vector<result_type> results(nchunks);
    if (nchunks == 1) {
        results[0] = fn(0, 0, n);
        return results;
    }
    std::vector<std::exception_ptr> errors(nchunks);
    std::vector<std::thread> pool;
    pool.reserve(nchunks);
    for (std::size_t c = 0; c < nchunks; ++c) {
        const std::size_t b = n * c / nchunks;
        const std::size_t e = n * (c + 1) / nchunks;
        pool.emplace_back([&, c, b, e] {
            try {
                results[c] = fn(c, b, e);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    for (auto &err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
    return results;
}

} // namespace monad_forge

#endif
