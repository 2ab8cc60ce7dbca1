#include "pyjama/quad.hpp"

#include <algorithm>
#include <cctype>

#include "pyjama/errors.hpp"

namespace pyjama {

bool is_squarefree(Int n) {
    if (n <= 0) return false;
    for (Int i = 2; i * i <= n; ++i) {
        if (n % i == 0) {
            n /= i;
            if (n % i == 0) return false;
        }
    }
    return true;
}

RatInterval sqrt_enclosure(const Int& d, unsigned bits) {
    Int scale = Int(1) << bits;
    Int scaled = d * scale * scale;
    Int s = boost::multiprecision::sqrt(scaled);
    // s = floor(sqrt(d * 4^bits)) so s/2^bits <= sqrt(d) <= (s+1)/2^bits.
    return {Rat(s, scale), Rat(s + 1, scale)};
}

QuadElem::QuadElem(const Rat& r) {
    if (r != 0) terms_.push_back({Int(1), r});
}

QuadElem QuadElem::sqrt_term(const Rat& coeff, const Int& radicand) {
    if (!is_squarefree(radicand))
        throw ParseError("radicand " + radicand.str() + " is not a squarefree positive integer");
    QuadElem e;
    if (coeff != 0) e.terms_.push_back({radicand, coeff});
    return e;
}

bool QuadElem::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1);
}

Rat QuadElem::as_rational() const {
    if (terms_.empty()) return Rat(0);
    if (terms_.size() == 1 && terms_[0].radicand == 1) return terms_[0].coeff;
    throw IrrationalValue("value " + to_string() + " is not rational");
}

Rat QuadElem::rational_part() const {
    for (const Term& t : terms_)
        if (t.radicand == 1) return t.coeff;
    return Rat(0);
}

void QuadElem::add_term(const Int& radicand, const Rat& coeff) {
    if (coeff == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), radicand,
                               [](const Term& t, const Int& r) { return t.radicand < r; });
    if (it != terms_.end() && it->radicand == radicand) {
        it->coeff += coeff;
        if (it->coeff == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {radicand, coeff});
    }
}

QuadElem QuadElem::operator-() const {
    QuadElem r = *this;
    for (Term& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

QuadElem QuadElem::operator+(const QuadElem& o) const {
    QuadElem r = *this;
    for (const Term& t : o.terms_) r.add_term(t.radicand, t.coeff);
    return r;
}

QuadElem QuadElem::operator-(const QuadElem& o) const { return *this + (-o); }

QuadElem QuadElem::operator*(const QuadElem& o) const {
    QuadElem r;
    for (const Term& a : terms_) {
        for (const Term& b : o.terms_) {
            // sqrt(a) * sqrt(b) = g * sqrt(ab / g^2) with g = gcd(a, b);
            // squarefree inputs keep the product radicand squarefree.
            Int g = boost::multiprecision::gcd(a.radicand, b.radicand);
            Int rad = (a.radicand / g) * (b.radicand / g);
            r.add_term(rad, a.coeff * b.coeff * g);
        }
    }
    return r;
}

int QuadElem::sign() const {
    if (terms_.empty()) return 0;
    if (terms_.size() == 1) return terms_[0].coeff < 0 ? -1 : 1;
    // Provably nonzero here, so refinement terminates.
    for (unsigned bits = 32;; bits *= 2) {
        RatInterval e = enclosure(bits);
        if (e.lo > 0) return 1;
        if (e.hi < 0) return -1;
    }
}

RatInterval QuadElem::enclosure(unsigned bits) const {
    Rat lo = 0, hi = 0;
    for (const Term& t : terms_) {
        if (t.radicand == 1) {
            lo += t.coeff;
            hi += t.coeff;
            continue;
        }
        RatInterval s = sqrt_enclosure(t.radicand, bits);
        if (t.coeff >= 0) {
            lo += t.coeff * s.lo;
            hi += t.coeff * s.hi;
        } else {
            lo += t.coeff * s.hi;
            hi += t.coeff * s.lo;
        }
    }
    return {lo, hi};
}

double QuadElem::approx() const {
    RatInterval e = enclosure(64);
    return static_cast<double>(e.lo) / 2 + static_cast<double>(e.hi) / 2;
}

QuadElem QuadElem::inverse() const {
    if (terms_.empty()) throw std::domain_error("inverse of zero");
    if (is_rational()) return QuadElem(Rat(1) / terms_[0].coeff);
    // Pick a prime p dividing some radicand, multiply by the conjugate that
    // flips the sign of every sqrt(p)-carrying term; the product lives in a
    // subfield with strictly fewer primes under its radicands.
    Int p = 0;
    for (const Term& t : terms_) {
        if (t.radicand == 1) continue;
        Int n = t.radicand;
        for (Int i = 2; i * i <= n; ++i)
            if (n % i == 0) {
                p = i;
                break;
            }
        if (p == 0) p = n;  // radicand itself prime
        break;
    }
    QuadElem conj;
    for (const Term& t : terms_)
        conj.add_term(t.radicand, t.radicand % p == 0 ? -t.coeff : t.coeff);
    QuadElem norm = (*this) * conj;
    return conj * norm.inverse();
}

std::string QuadElem::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const Term& t = terms_[i];
        Rat c = t.coeff;
        if (i == 0) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c < 0 ? "-" : "+";
            if (c < 0) c = -c;
        }
        out += rat_to_string(c);
        if (t.radicand != 1) out += "*sqrt(" + t.radicand.str() + ")";
    }
    return out;
}

namespace {

// One signed term: "p/q", "sqrt(d)", "p/q*sqrt(d)".
QuadElem parse_quad_term(std::string_view t, std::string_view whole) {
    Rat coeff(1);
    Int radicand(1);
    auto star = t.find('*');
    std::string_view coeff_part, sqrt_part;
    if (star != std::string_view::npos) {
        coeff_part = t.substr(0, star);
        sqrt_part = t.substr(star + 1);
    } else if (t.substr(0, 5) == "sqrt(") {
        sqrt_part = t;
    } else {
        coeff_part = t;
    }
    if (!coeff_part.empty()) coeff = parse_rat_expr(coeff_part);
    if (!sqrt_part.empty()) {
        if (sqrt_part.substr(0, 5) != "sqrt(" || sqrt_part.back() != ')')
            throw ParseError("malformed term '" + std::string(t) + "' in '" + std::string(whole) + "'");
        std::string inner(sqrt_part.substr(5, sqrt_part.size() - 6));
        if (inner.empty() || !std::all_of(inner.begin(), inner.end(), [](unsigned char c) {
                return std::isdigit(c);
            }))
            throw ParseError("malformed radicand in '" + std::string(t) + "'");
        radicand = Int(inner);
    }
    return QuadElem::sqrt_term(coeff, radicand);
}

}  // namespace

QuadElem QuadElem::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty value");
    QuadElem total;
    std::size_t pos = 0;
    int sign = 1;
    if (s[0] == '+' || s[0] == '-') {
        sign = s[0] == '-' ? -1 : 1;
        pos = 1;
    }
    if (pos >= s.size()) throw ParseError("dangling sign in '" + std::string(text) + "'");
    while (pos < s.size()) {
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        QuadElem term = parse_quad_term(std::string_view(s).substr(pos, end - pos), text);
        total = sign > 0 ? total + term : total - term;
        if (end == s.size()) return total;
        sign = s[end] == '-' ? -1 : 1;
        pos = end + 1;
        if (pos == s.size()) throw ParseError("dangling operator in '" + std::string(text) + "'");
    }
    if (pos == 0) throw ParseError("empty value");
    return total;
}

}  // namespace pyjama
