#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#include <omp.h>

namespace sdelab {

enum class Execution { serial, openmp };

/// Calls body(i) for i in [0, n).
///
/// The serial branch is the reference implementation; the OpenMP branch must
/// produce identical results, so bodies write only to slot i of caller-owned
/// storage and all reductions happen afterwards in index order. The first
/// exception thrown by any body is rethrown on the calling thread.
template <typename Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
    if (exec == Execution::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < count; ++i) {
        {
            std::lock_guard lock(error_mutex);
            if (error) continue;
        }
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

inline int max_threads() { return omp_get_max_threads(); }
inline void set_threads(int n) {
    if (n > 0) omp_set_num_threads(n);
}

}  // namespace sdelab
