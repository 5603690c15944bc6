#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

namespace nec {

/// Selects the OpenMP kernel or the plain serial loop it is tested against.
enum class Execution { serial, parallel };

/// out[i] = fn(i) for i in [0, n). The parallel path distributes indices
/// dynamically; results are written by index so the output order never
/// depends on scheduling. The first exception thrown by `fn` is rethrown.
template <typename Result, typename Fn>
std::vector<Result> indexed_map(std::size_t n, Execution exec, Fn&& fn) {
    static_assert(!std::is_same_v<Result, bool>, "vector<bool> elements are not independently writable");
    std::vector<Result> out(n);
    if (exec == Execution::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::exception_ptr failure;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(nec_indexed_map_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace nec
