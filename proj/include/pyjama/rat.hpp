#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace pyjama {

using Int = boost::multiprecision::cpp_int;
// Always stored in lowest terms with positive denominator; all arithmetic exact.
using Rat = boost::multiprecision::cpp_rational;

Int floor_div(const Int& a, const Int& b);
Int rat_floor(const Rat& x);
Int rat_ceil(const Rat& x);

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// x - floor(x), in [0, 1).
Rat frac_part(const Rat& x);

// Distance to the nearest integer; result in [0, 1/2].
Rat dist_to_int(const Rat& x);

// "p" or "p/q"; denominators of 1 are omitted.
std::string rat_to_string(const Rat& x);

// Accepts sums/differences of exact terms: "1/3-1/48", "5/16+1/1000000",
// "0.21" (exact decimal), "3". No floats, no rounding.
Rat parse_rat_expr(std::string_view text);

struct RatInterval {
    Rat lo, hi;  // lo <= hi

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat l, Rat h);

    Rat width() const { return hi - lo; }
    Rat midpoint() const { return (lo + hi) / 2; }

    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains_integer() const;
    // Integers k with lo <= k <= hi, as [first, last]; empty() when none.
    Int first_integer() const { return rat_ceil(lo); }
    Int last_integer() const { return rat_floor(hi); }
    Int integer_count() const;

    RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    RatInterval scaled(const Int& c) const;

    friend bool operator==(const RatInterval&, const RatInterval&) = default;
};

// Intersection; empty result reported through the bool.
bool intersect_interval(const RatInterval& a, const RatInterval& b, RatInterval& out);

}  // namespace pyjama
