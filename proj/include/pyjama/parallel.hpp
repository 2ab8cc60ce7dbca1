#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>

#include "pyjama/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pyjama {

// Serial is the reference path; Parallel runs the same kernel under OpenMP.
// Every parallel kernel must produce output identical to its serial run.
enum class Exec { Serial, Parallel };

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Index loop with a deterministic iteration space. The body must only write
// to per-index slots (callers merge in index order afterwards).
template <class F>
void parallel_for(Exec exec, std::size_t n, F&& body) {
    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
#endif
    }
    for (std::size_t i = 0; i < n; ++i) body(i);
}

// Work-unit accounting shared by geometry/density; throws once the limit is hit.
class Budget {
  public:
    static constexpr std::uint64_t kUnlimited = UINT64_MAX;

    explicit Budget(std::uint64_t limit = kUnlimited) : limit_(limit), used_(0) {}

    void charge(std::uint64_t units = 1) {
        std::uint64_t now = used_.fetch_add(units, std::memory_order_relaxed) + units;
        if (now > limit_) throw BudgetExhausted("work budget exhausted");
    }
    std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }
    std::uint64_t limit() const { return limit_; }

  private:
    std::uint64_t limit_;
    std::atomic<std::uint64_t> used_;
};

}  // namespace pyjama
