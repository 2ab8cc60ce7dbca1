#include <algorithm>
#include <set>

#include <json.hpp>

#include "pyjama/cover.hpp"
#include "pyjama/errors.hpp"

// Certificate replay and serialization. The replay below deliberately avoids
// every search heuristic: it recomputes boxes from the tree alone, using
// interval arithmetic and integer range checks only.

namespace pyjama {

namespace {

using Box = std::vector<RatInterval>;
using ordered_json = nlohmann::ordered_json;

RatInterval replay_interval(const IntMat& rel, int i, const Box& box) {
    RatInterval sum(0, 0);
    for (int j = 0; j < rel.cols(); ++j)
        if (rel.at(i, j) != 0) sum = sum + box[j].scaled(rel.at(i, j));
    return sum;
}

// Mirrors the documented child-box semantics of KBranch nodes: one pass over
// the coordinates in ascending order, each tightened against the equality.
bool replay_project(const IntMat& rel, int i, const Int& k, Box& box) {
    for (int j = 0; j < rel.cols(); ++j) {
        const Int& m = rel.at(i, j);
        if (m == 0) continue;
        RatInterval rest(0, 0);
        for (int l = 0; l < rel.cols(); ++l)
            if (l != j && rel.at(i, l) != 0) rest = rest + box[l].scaled(rel.at(i, l));
        Rat a = (Rat(k) - rest.hi) / Rat(m), b = (Rat(k) - rest.lo) / Rat(m);
        if (a > b) std::swap(a, b);
        RatInterval clipped;
        if (!intersect_interval(box[j], RatInterval(a, b), clipped)) return false;
        box[j] = clipped;
    }
    return true;
}

bool replay(const CertNode& node, const IntMat& rel, const Box& box) {
    switch (node.kind) {
        case CertNode::Kind::Leaf: {
            if (node.index < 0 || node.index >= rel.rows()) return false;
            return !replay_interval(rel, node.index, box).contains_integer();
        }
        case CertNode::Kind::KBranch: {
            if (node.index < 0 || node.index >= rel.rows()) return false;
            RatInterval iv = replay_interval(rel, node.index, box);
            if (!iv.contains_integer()) return false;  // would be a leaf, not a branch
            Int first = iv.first_integer(), last = iv.last_integer();
            if (last - first > 100000) return false;
            std::set<Int> expected;
            for (Int k = first; k <= last; ++k) expected.insert(k);
            std::set<Int> got;
            for (const auto& [k, child] : node.k_children) got.insert(k);
            if (got != expected || got.size() != node.k_children.size()) return false;
            for (const auto& [k, child] : node.k_children) {
                if (!child) return false;
                Box sub = box;
                if (!replay_project(rel, node.index, k, sub)) return false;
                if (!replay(*child, rel, sub)) return false;
            }
            return true;
        }
        case CertNode::Kind::Bisect: {
            if (node.index < 0 || node.index >= rel.cols()) return false;
            if (!node.low || !node.high) return false;
            Rat mid = box[node.index].midpoint();
            Box lo = box, hi = box;
            lo[node.index] = RatInterval(box[node.index].lo, mid);
            hi[node.index] = RatInterval(mid, box[node.index].hi);
            return replay(*node.low, rel, lo) && replay(*node.high, rel, hi);
        }
    }
    return false;
}

}  // namespace

bool check_certificate(const EmptinessCertificate& cert, const IntMat& relations,
                       const Rat& eps) {
    if (!cert.root) return false;
    if (relations.rows() == 0) return false;
    if (eps <= 0 || eps >= Rat(1, 2)) return false;
    Box root(relations.cols(), RatInterval(eps, 1 - eps));
    return replay(*cert.root, relations, root);
}

namespace {

ordered_json emit_int(const Int& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

Int read_int(const ordered_json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw ParseError("expected integer in certificate");
}

ordered_json node_to_json(const CertNode& n) {
    ordered_json j;
    switch (n.kind) {
        case CertNode::Kind::Leaf:
            j["type"] = "leaf";
            j["relation"] = n.index;
            break;
        case CertNode::Kind::KBranch: {
            j["type"] = "k";
            j["relation"] = n.index;
            ordered_json kids = ordered_json::array();
            // canonical order: ascending k
            std::vector<const std::pair<Int, std::unique_ptr<CertNode>>*> sorted;
            for (const auto& kc : n.k_children) sorted.push_back(&kc);
            std::sort(sorted.begin(), sorted.end(),
                      [](auto* a, auto* b) { return a->first < b->first; });
            for (auto* kc : sorted)
                kids.push_back({{"k", emit_int(kc->first)}, {"child", node_to_json(*kc->second)}});
            j["children"] = std::move(kids);
            break;
        }
        case CertNode::Kind::Bisect:
            j["type"] = "bisect";
            j["coord"] = n.index;
            j["low"] = node_to_json(*n.low);
            j["high"] = node_to_json(*n.high);
            break;
    }
    return j;
}

std::unique_ptr<CertNode> node_from_json(const ordered_json& j) {
    auto n = std::make_unique<CertNode>();
    std::string type = j.at("type").get<std::string>();
    if (type == "leaf") {
        n->kind = CertNode::Kind::Leaf;
        n->index = j.at("relation").get<int>();
    } else if (type == "k") {
        n->kind = CertNode::Kind::KBranch;
        n->index = j.at("relation").get<int>();
        for (const auto& kc : j.at("children"))
            n->k_children.emplace_back(read_int(kc.at("k")), node_from_json(kc.at("child")));
    } else if (type == "bisect") {
        n->kind = CertNode::Kind::Bisect;
        n->index = j.at("coord").get<int>();
        n->low = node_from_json(j.at("low"));
        n->high = node_from_json(j.at("high"));
    } else {
        throw ParseError("unknown certificate node type '" + type + "'");
    }
    return n;
}

}  // namespace

std::string certificate_to_json(const EmptinessCertificate& cert) {
    ordered_json j;
    j["format"] = "pyjama-emptiness-certificate";
    j["epsilon"] = rat_to_string(cert.eps);
    j["n"] = cert.relations.cols();
    ordered_json rel = ordered_json::array();
    for (int i = 0; i < cert.relations.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int jx = 0; jx < cert.relations.cols(); ++jx)
            row.push_back(emit_int(cert.relations.at(i, jx)));
        rel.push_back(std::move(row));
    }
    j["relations"] = std::move(rel);
    j["tree"] = node_to_json(*cert.root);
    return j.dump(1) + "\n";
}

EmptinessCertificate certificate_from_json(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid certificate JSON: ") + e.what());
    }
    if (j.value("format", "") != "pyjama-emptiness-certificate")
        throw ParseError("not a pyjama emptiness certificate");
    EmptinessCertificate cert;
    cert.eps = parse_rat_expr(j.at("epsilon").get<std::string>());
    int n = j.at("n").get<int>();
    const auto& rel = j.at("relations");
    cert.relations = IntMat(static_cast<int>(rel.size()), n);
    for (int i = 0; i < cert.relations.rows(); ++i) {
        if (static_cast<int>(rel[i].size()) != n)
            throw ParseError("certificate relation row has wrong length");
        for (int jx = 0; jx < n; ++jx) cert.relations.at(i, jx) = read_int(rel[i][jx]);
    }
    cert.root = node_from_json(j.at("tree"));
    return cert;
}

}  // namespace pyjama
