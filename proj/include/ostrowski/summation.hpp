#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "ostrowski/phase.hpp"

namespace ostrowski {

// Leaves of the pairwise reduction hold at most this many terms.
inline constexpr std::size_t kPairwiseLeaf = 32;

// Fixed-order pairwise (tree) sum of term(i) for begin <= i < end.
//
// Ranges of at most kPairwiseLeaf terms are summed left to right; longer
// ranges split at begin + len / 2 and add left + right. The order depends
// only on (begin, end), so results are reproducible bit for bit.
template <class Term>
Complex pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
    const std::size_t len = end - begin;
    if (len <= kPairwiseLeaf) {
        double re = 0.0;
        double im = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const Complex t = term(i);
            re += t.real();
            im += t.imag();
        }
        return {re, im};
    }
    const std::size_t mid = begin + len / 2;
    const Complex left = pairwise_sum(begin, mid, term);
    const Complex right = pairwise_sum(mid, end, term);
    return {left.real() + right.real(), left.imag() + right.imag()};
}

// Real-valued variant with the same tree.
template <class Term>
double pairwise_sum_real(std::size_t begin, std::size_t end, const Term& term) {
    const std::size_t len = end - begin;
    if (len <= kPairwiseLeaf) {
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) acc += term(i);
        return acc;
    }
    const std::size_t mid = begin + len / 2;
    return pairwise_sum_real(begin, mid, term) + pairwise_sum_real(mid, end, term);
}

// 0 means "all hardware threads".
inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs task(i) for 0 <= i < count on up to `threads` workers. Tasks write to
// disjoint outputs, so results do not depend on the worker count. The first
// exception thrown by a task is rethrown on the calling thread.
template <class Task>
void parallel_for(std::size_t count, unsigned threads, const Task& task) {
    const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < count; i += workers) task(i);
                } catch (...) {
                    const std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace ostrowski
