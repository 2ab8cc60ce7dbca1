#pragma once

#include <stdexcept>
#include <string>

namespace pyjama {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A quantity that must be rational is not (e.g. an inner product fed to dist_to_int).
struct IrrationalValue : std::runtime_error {
    explicit IrrationalValue(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Exact method only exists for d <= 2; callers should fall back to enclosures.
struct UnsupportedDimension : std::runtime_error {
    explicit UnsupportedDimension(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency failure: a computed relation lattice was not saturated.
struct SaturationViolated : std::logic_error {
    explicit SaturationViolated(const std::string& what) : std::logic_error(what) {}
};

struct DegenerateStrip : std::runtime_error {
    explicit DegenerateStrip(const std::string& what) : std::runtime_error(what) {}
};

struct NotPeriodicQuadratic : std::runtime_error {
    explicit NotPeriodicQuadratic(const std::string& what) : std::runtime_error(what) {}
};

// A witness evaluated below its guaranteed bound; indicates a bug, never a math fact.
struct InternalBoundViolation : std::logic_error {
    explicit InternalBoundViolation(const std::string& what) : std::logic_error(what) {}
};

struct IrrationalInnerProduct : std::runtime_error {
    explicit IrrationalInnerProduct(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExhausted : std::runtime_error {
    explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pyjama
