#include "pyjama/config.hpp"

#include <algorithm>

#include <json.hpp>

#include "pyjama/errors.hpp"

namespace pyjama {

using ordered_json = nlohmann::ordered_json;

UnitVector make_unit_vector(const QuadElem& c, const QuadElem& s) {
    QuadElem norm = c * c + s * s;
    if (!(norm == QuadElem(1)))
        throw ParseError("vector (" + c.to_string() + ", " + s.to_string() + ") is not a unit vector");
    int ss = s.sign();
    if (ss < 0 || (ss == 0 && c.sign() < 0)) return {-c, -s};
    return {c, s};
}

UnitVector rotate_vector(const UnitVector& a, const UnitVector& b) {
    return make_unit_vector(a.cos * b.cos - a.sin * b.sin, a.sin * b.cos + a.cos * b.sin);
}

Configuration make_configuration(std::string label,
                                 std::vector<std::pair<QuadElem, QuadElem>> raw) {
    Configuration cfg;
    cfg.label = std::move(label);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        UnitVector u;
        try {
            u = make_unit_vector(raw[i].first, raw[i].second);
        } catch (const ParseError& e) {
            throw ParseError("vector " + std::to_string(i) + ": " + e.what());
        }
        if (std::find(cfg.vectors.begin(), cfg.vectors.end(), u) == cfg.vectors.end())
            cfg.vectors.push_back(u);
    }
    if (cfg.vectors.empty()) throw ParseError("configuration '" + cfg.label + "' has no vectors");
    return cfg;
}

Configuration build_cube_roots() {
    Rat half(1, 2);
    QuadElem sqrt3_half = QuadElem::sqrt_term(half, 3);
    return make_configuration("cube_roots", {
                                                {QuadElem(1), QuadElem(0)},
                                                {QuadElem(Rat(-1, 2)), sqrt3_half},
                                                {QuadElem(Rat(-1, 2)), -sqrt3_half},
                                            });
}

Configuration build_section3() {
    UnitVector omega = make_unit_vector(QuadElem(Rat(-1, 2)), QuadElem::sqrt_term(Rat(1, 2), 3));
    UnitVector omega2 = {QuadElem(Rat(-1, 2)), -QuadElem::sqrt_term(Rat(1, 2), 3)};
    // sqrt(8)/3 normalized to (2/3)*sqrt(2).
    QuadElem s4 = QuadElem::sqrt_term(Rat(2, 3), 2);
    std::vector<std::pair<QuadElem, QuadElem>> raw;
    std::vector<std::pair<QuadElem, QuadElem>> bases = {
        {QuadElem(1), QuadElem(0)}, {QuadElem(Rat(1, 3)), s4}, {QuadElem(Rat(1, 3)), -s4}};
    // Each base angle followed by its rotations by 2pi/3 and 4pi/3, matching
    // the theta_1..theta_9 grouping.
    for (const auto& [c, s] : bases) {
        raw.push_back({c, s});
        raw.push_back({c * omega.cos - s * omega.sin, s * omega.cos + c * omega.sin});
        raw.push_back({c * omega2.cos - s * omega2.sin, s * omega2.cos + c * omega2.sin});
    }
    return make_configuration("section3", std::move(raw));
}

std::vector<Triple> primitive_triples(const Int& max_hypotenuse) {
    std::vector<Triple> out;
    for (Int s = 2; s * s + 1 <= max_hypotenuse; ++s) {
        for (Int t = 1; t < s; ++t) {
            if ((s - t) % 2 == 0 || boost::multiprecision::gcd(s, t) != 1) continue;
            Int c = s * s + t * t;
            if (c > max_hypotenuse) continue;
            Int a = s * s - t * t, b = 2 * s * t;
            if (a % 2 == 0) std::swap(a, b);
            out.push_back({a, b, c});
        }
    }
    std::sort(out.begin(), out.end(), [](const Triple& x, const Triple& y) {
        return x.c != y.c ? x.c < y.c : x.a < y.a;
    });
    return out;
}

Configuration build_pythagorean(const Int& max_hypotenuse, PythagoreanOptions opts) {
    if (max_hypotenuse < 1) throw ParseError("max_hypotenuse must be >= 1");
    std::vector<std::pair<QuadElem, QuadElem>> raw = {{QuadElem(1), QuadElem(0)},
                                                      {QuadElem(0), QuadElem(1)}};
    for (const Triple& t : primitive_triples(max_hypotenuse)) {
        Rat ac(t.a, t.c), bc(t.b, t.c);
        raw.push_back({QuadElem(ac), QuadElem(bc)});
        if (opts.include_negated) raw.push_back({QuadElem(-ac), QuadElem(bc)});
        if (opts.include_reflected) {
            raw.push_back({QuadElem(bc), QuadElem(ac)});
            if (opts.include_negated) raw.push_back({QuadElem(-bc), QuadElem(ac)});
        }
    }
    return make_configuration("pythagorean_" + max_hypotenuse.str(), std::move(raw));
}

Configuration rotate(const Configuration& cfg, const UnitVector& r) {
    std::vector<std::pair<QuadElem, QuadElem>> raw;
    for (const UnitVector& u : cfg.vectors) {
        UnitVector v = rotate_vector(u, r);
        raw.push_back({v.cos, v.sin});
    }
    return make_configuration(cfg.label, std::move(raw));
}

namespace {

Int json_int(const ordered_json& j, const char* what) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw ParseError(std::string("expected integer (number or string) for ") + what);
}

QuadElem parse_terms(const ordered_json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + ": expected an array of [num, den, radicand]");
    QuadElem total;
    for (const auto& term : arr) {
        if (!term.is_array() || term.size() != 3)
            throw ParseError(where + ": each term must be [num, den, radicand]");
        Int num = json_int(term[0], where.c_str());
        Int den = json_int(term[1], where.c_str());
        Int rad = json_int(term[2], where.c_str());
        if (den == 0) throw ParseError(where + ": zero denominator");
        total = total + QuadElem::sqrt_term(Rat(num, den), rad);
    }
    return total;
}

ordered_json emit_terms(const QuadElem& q) {
    auto emit_int = [](const Int& v) -> ordered_json {
        if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
            return static_cast<long long>(v);
        return v.str();
    };
    ordered_json arr = ordered_json::array();
    for (const auto& t : q.terms())
        arr.push_back({emit_int(numerator(t.coeff)), emit_int(denominator(t.coeff)),
                       emit_int(t.radicand)});
    return arr;
}

}  // namespace

Configuration parse_config(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config must be a JSON object");

    if (j.contains("builder")) {
        std::string b = j["builder"].get<std::string>();
        if (b == "cube_roots") return build_cube_roots();
        if (b == "section3") return build_section3();
        if (b == "pythagorean") {
            if (!j.contains("max_hypotenuse"))
                throw ParseError("pythagorean builder needs max_hypotenuse");
            PythagoreanOptions opts;
            if (j.contains("include_reflected")) opts.include_reflected = j["include_reflected"];
            if (j.contains("include_negated")) opts.include_negated = j["include_negated"];
            return build_pythagorean(json_int(j["max_hypotenuse"], "max_hypotenuse"), opts);
        }
        throw ParseError("unknown builder '" + b + "'");
    }

    if (!j.contains("vectors")) throw ParseError("config needs 'vectors' or 'builder'");
    std::string label = j.value("label", "config");
    std::vector<std::pair<QuadElem, QuadElem>> raw;
    int idx = 0;
    for (const auto& v : j["vectors"]) {
        std::string where = "vector " + std::to_string(idx);
        if (!v.is_object() || !v.contains("cos") || !v.contains("sin"))
            throw ParseError(where + ": expected {\"cos\": [...], \"sin\": [...]}");
        raw.push_back({parse_terms(v["cos"], where + " cos"), parse_terms(v["sin"], where + " sin")});
        ++idx;
    }
    return make_configuration(label, std::move(raw));
}

std::string serialize_config(const Configuration& cfg) {
    ordered_json j;
    j["label"] = cfg.label;
    j["vectors"] = ordered_json::array();
    for (const UnitVector& u : cfg.vectors)
        j["vectors"].push_back({{"cos", emit_terms(u.cos)}, {"sin", emit_terms(u.sin)}});
    return j.dump(2) + "\n";
}

}  // namespace pyjama
