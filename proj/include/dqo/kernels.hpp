// Data-parallel inner loops with their serial references.
//
// Reductions run over fixed-size blocks whose partial sums are combined pairwise in a
// fixed order, so the parallel result is bitwise identical for any thread count.  Inside
// a block terms are accumulated from the largest index down, matching the serial
// reference which sums the whole range in descending order.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dqo::kernels {

inline constexpr std::size_t block_size = 4096;

// Threads the OpenMP kernels will use (1 without OpenMP).
inline int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace serial {

// Sum of term(n) for n = last, last-1, ..., first (inclusive).  Empty if first > last.
template <class T, class Term>
T sum_descending(std::size_t first, std::size_t last, Term&& term) {
    T acc{};
    if (first > last) return acc;
    for (std::size_t n = last + 1; n-- > first;) acc += term(n);
    return acc;
}

template <class Fn>
std::vector<double> evaluate(std::span<const double> x, Fn&& fn) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = fn(x[i]);
    return out;
}

}  // namespace serial

namespace parallel {

template <class T>
T pairwise_combine(std::vector<T> parts) {
    if (parts.empty()) return T{};
    while (parts.size() > 1) {
        std::vector<T> next((parts.size() + 1) / 2);
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] = 2 * i + 1 < parts.size() ? parts[2 * i] + parts[2 * i + 1] : parts[2 * i];
        }
        parts = std::move(next);
    }
    return parts.front();
}

// Same contract as serial::sum_descending; deterministic for any thread count.
template <class T, class Term>
T sum_descending(std::size_t first, std::size_t last, Term&& term) {
    if (first > last) return T{};
    const std::size_t count = last - first + 1;
    const std::size_t blocks = (count + block_size - 1) / block_size;
    // Block 0 holds the largest indices so the combination order mirrors descending sums.
    std::vector<T> parts(blocks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
        const std::size_t hi = last - static_cast<std::size_t>(b) * block_size;
        const std::size_t lo = hi + 1 >= first + block_size ? hi + 1 - block_size : first;
        T acc{};
        for (std::size_t n = hi + 1; n-- > lo;) acc += term(n);
        parts[static_cast<std::size_t>(b)] = acc;
    }
    return pairwise_combine(std::move(parts));
}

template <class Fn>
std::vector<double> evaluate(std::span<const double> x, Fn&& fn) {
    std::vector<double> out(x.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(x.size()); ++i) {
        out[static_cast<std::size_t>(i)] = fn(x[static_cast<std::size_t>(i)]);
    }
    return out;
}

// Runs body(i) for i in [0, count); results must be written to per-index slots.
template <class Body>
void for_each_index(std::size_t count, Body&& body) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
        body(static_cast<std::size_t>(i));
    }
}

}  // namespace parallel

}  // namespace dqo::kernels
