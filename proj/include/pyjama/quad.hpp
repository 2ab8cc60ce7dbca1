#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pyjama/rat.hpp"

namespace pyjama {

// Element of a multiquadratic field: a finite sum  sum_r q_r * sqrt(d_r)  with
// rational q_r and pairwise distinct squarefree positive radicands d_r
// (radicand 1 carries the rational part). Distinct square roots of squarefree
// integers are linearly independent over Q, so the element is zero iff the
// term list is empty. Immutable after construction.
class QuadElem {
  public:
    struct Term {
        Int radicand;  // squarefree, >= 1
        Rat coeff;     // nonzero
        friend bool operator==(const Term&, const Term&) = default;
    };

    QuadElem() = default;
    QuadElem(const Rat& r);            // rational value
    QuadElem(long v) : QuadElem(Rat(v)) {}
    QuadElem(int v) : QuadElem(Rat(v)) {}

    // coeff * sqrt(radicand); radicand must be squarefree positive.
    static QuadElem sqrt_term(const Rat& coeff, const Int& radicand);

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    // Throws IrrationalValue if any radicand > 1 survives.
    Rat as_rational() const;
    // Coefficient of radicand 1 (zero when absent).
    Rat rational_part() const;

    // Exact: structural test for zero, interval refinement otherwise.
    int sign() const;

    QuadElem operator-() const;
    QuadElem operator+(const QuadElem& o) const;
    QuadElem operator-(const QuadElem& o) const;
    QuadElem operator*(const QuadElem& o) const;
    // Field inverse; element must be nonzero.
    QuadElem inverse() const;

    friend bool operator==(const QuadElem&, const QuadElem&) = default;

    const std::vector<Term>& terms() const { return terms_; }

    // Rational enclosure of the value with width <= 4^-precision-ish;
    // exact for rational elements.
    RatInterval enclosure(unsigned precision_bits) const;
    double approx() const;  // float rendering only; never used in decisions

    // Canonical text form: "p/q" terms and "p/q*sqrt(d)" terms joined by +/-,
    // radicands ascending, e.g. "-1/6-1/3*sqrt(6)".
    std::string to_string() const;
    static QuadElem parse(std::string_view text);

  private:
    std::vector<Term> terms_;  // sorted by radicand ascending

    void add_term(const Int& radicand, const Rat& coeff);
};

bool is_squarefree(Int n);

// Enclosure of sqrt(d) with dyadic endpoints, denominator 2^bits.
RatInterval sqrt_enclosure(const Int& d, unsigned bits);

}  // namespace pyjama
