#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

namespace cubicsep {

/// Slice `index` of `count` interleaved slices of a work range.
struct Partition {
    unsigned count = 1;
    unsigned index = 0;

    bool owns(std::size_t item) const { return item % count == index; }
    void validate() const
    {
        if (count == 0 || index >= count)
            throw std::invalid_argument("partition index out of range");
    }
};

/// Runs fn(Partition{count, i}) for every slice on up to `workers` threads and
/// returns the results in slice order.
template <class Fn>
auto run_partitions(unsigned count, unsigned workers, Fn fn)
{
    using Result = decltype(fn(Partition{}));
    std::vector<Result> out(count);
    workers = std::max(1u, std::min(workers, count));
    if (workers == 1) {
        for (unsigned i = 0; i < count; ++i)
            out[i] = fn(Partition{count, i});
        return out;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (unsigned i = w; i < count; i += workers)
                    out[i] = fn(Partition{count, i});
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

}  // namespace cubicsep
