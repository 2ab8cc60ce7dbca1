#include "pyjama/rat.hpp"

#include <cctype>

#include "pyjama/errors.hpp"

namespace pyjama {

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

Int rat_floor(const Rat& x) { return floor_div(numerator(x), denominator(x)); }

Int rat_ceil(const Rat& x) { return -floor_div(-numerator(x), denominator(x)); }

Rat frac_part(const Rat& x) { return x - Rat(rat_floor(x)); }

Rat dist_to_int(const Rat& x) {
    Rat f = frac_part(x);
    Rat g = 1 - f;
    return f <= g ? f : g;
}

std::string rat_to_string(const Rat& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) s += "/" + denominator(x).str();
    return s;
}

namespace {

// One term of an exact expression: integer, fraction, or terminating decimal.
Rat parse_term(std::string_view t, std::string_view whole) {
    if (t.empty()) throw ParseError("empty term in rational expression '" + std::string(whole) + "'");
    auto digits = [&](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    auto slash = t.find('/');
    if (slash != std::string_view::npos) {
        std::string_view num = t.substr(0, slash), den = t.substr(slash + 1);
        if (!digits(num) || !digits(den)) throw ParseError("bad fraction '" + std::string(t) + "'");
        Int d{std::string(den)};
        if (d == 0) throw ParseError("zero denominator in '" + std::string(t) + "'");
        return Rat(Int(std::string(num)), d);
    }
    auto dot = t.find('.');
    if (dot != std::string_view::npos) {
        std::string_view ip = t.substr(0, dot), fp = t.substr(dot + 1);
        if ((!ip.empty() && !digits(ip)) || !digits(fp))
            throw ParseError("bad decimal '" + std::string(t) + "'");
        Int scale = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        Int whole_part = ip.empty() ? Int(0) : Int(std::string(ip));
        return Rat(whole_part * scale + Int(std::string(fp)), scale);
    }
    if (!digits(t)) throw ParseError("bad integer term '" + std::string(t) + "'");
    return Rat(Int(std::string(t)));
}

}  // namespace

Rat parse_rat_expr(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty rational expression");

    Rat total = 0;
    std::size_t pos = 0;
    int sign = 1;
    if (s[0] == '+' || s[0] == '-') {
        sign = s[0] == '-' ? -1 : 1;
        pos = 1;
    }
    while (pos < s.size()) {
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        total += sign * parse_term(std::string_view(s).substr(pos, end - pos), text);
        if (end == s.size()) return total;
        sign = s[end] == '-' ? -1 : 1;
        pos = end + 1;
        if (pos == s.size()) throw ParseError("dangling operator in '" + std::string(text) + "'");
    }
    throw ParseError("empty rational expression");
}

RatInterval::RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("RatInterval: lo > hi");
}

bool RatInterval::contains_integer() const { return rat_ceil(lo) <= rat_floor(hi); }

Int RatInterval::integer_count() const {
    Int c = rat_floor(hi) - rat_ceil(lo) + 1;
    return c < 0 ? Int(0) : c;
}

RatInterval RatInterval::scaled(const Int& c) const {
    if (c >= 0) return {Rat(lo * c), Rat(hi * c)};
    return {Rat(hi * c), Rat(lo * c)};
}

bool intersect_interval(const RatInterval& a, const RatInterval& b, RatInterval& out) {
    Rat lo = a.lo > b.lo ? a.lo : b.lo;
    Rat hi = a.hi < b.hi ? a.hi : b.hi;
    if (lo > hi) return false;
    out = RatInterval(lo, hi);
    return true;
}

}  // namespace pyjama
