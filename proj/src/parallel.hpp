#pragma once

#include <ksoliton/soliton.hpp>

#include <cstddef>
#include <exception>

namespace ksol::detail {

/// Runs body(i) for i in [0, count). The parallel path distributes indices over
/// OpenMP threads and rethrows the first exception after the loop joins.
template <class Body>
void for_each_index(std::size_t count, soliton::Execution exec, Body&& body) {
    if (exec == soliton::Execution::Serial) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    const auto last = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < last; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(ksol_for_each_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace ksol::detail
