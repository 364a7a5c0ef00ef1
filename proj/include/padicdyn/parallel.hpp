#pragma once

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace padicdyn {

/// Execution mode of the data-parallel kernels. Every kernel has a serial
/// path that computes bit-identical results; the parallel path writes each
/// result into a preassigned slot, so the merged output never depends on
/// thread scheduling.
enum class ExecMode {
    Serial,
    Parallel,
};

/// Runs fn(i) for i in [0, count). In Parallel mode the iterations are
/// distributed over OpenMP threads; the first exception (if any) is rethrown
/// after the loop completes.
template <typename Fn>
void for_each_index(std::size_t count, ExecMode mode, Fn&& fn) {
#ifdef _OPENMP
    if (mode == ExecMode::Parallel && count > 1) {
        std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(count); ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(padicdyn_for_each_index)
                {
                    if (!first_error) first_error = std::current_exception();
                }
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        return;
    }
#endif
    (void)mode;
    for (std::size_t i = 0; i < count; ++i) {
        fn(i);
    }
}

} // namespace padicdyn
