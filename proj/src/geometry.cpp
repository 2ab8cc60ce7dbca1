#include "pyjama/geometry.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <unordered_set>

#include "pyjama/errors.hpp"

namespace pyjama {

namespace {

Rat cross(const RatPoint2& o, const RatPoint2& a, const RatPoint2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool lex_less(const RatPoint2& a, const RatPoint2& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
}

// Drop duplicate and collinear vertices, rotate to the smallest vertex.
// Returns false if fewer than 3 vertices survive.
bool clean_ring(std::vector<RatPoint2>& v) {
    std::vector<RatPoint2> out;
    for (const RatPoint2& p : v)
        if (out.empty() || !(out.back() == p)) out.push_back(p);
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    v = std::move(out);
    if (v.size() < 3) return false;

    std::vector<RatPoint2> slim;
    std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const RatPoint2& prev = slim.empty() ? v[(i + n - 1) % n] : slim.back();
        const RatPoint2& cur = v[i];
        const RatPoint2& next = v[(i + 1) % n];
        if (cross(prev, cur, next) != 0) slim.push_back(cur);
    }
    // The wrap-around vertex may still be collinear with its new neighbours.
    while (slim.size() >= 3 && cross(slim[slim.size() - 2], slim.back(), slim.front()) == 0)
        slim.pop_back();
    while (slim.size() >= 3 && cross(slim.back(), slim.front(), slim[1]) == 0)
        slim.erase(slim.begin());
    v = std::move(slim);
    if (v.size() < 3) return false;

    auto smallest = std::min_element(v.begin(), v.end(), lex_less);
    std::rotate(v.begin(), smallest, v.end());
    return true;
}

}  // namespace

std::optional<ConvexPoly> ConvexPoly::from_points(std::vector<RatPoint2> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return std::nullopt;
    std::vector<RatPoint2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const RatPoint2& p : pts) {  // lower hull
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper hull
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    ConvexPoly poly;
    poly.verts_ = std::move(hull);
    if (!clean_ring(poly.verts_)) return std::nullopt;
    return poly;
}

ConvexPoly ConvexPoly::rectangle(const Rat& x0, const Rat& y0, const Rat& x1, const Rat& y1) {
    ConvexPoly p;
    p.verts_ = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    return p;
}

Rat ConvexPoly::area() const {
    Rat twice(0);
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        const RatPoint2& a = verts_[i];
        const RatPoint2& b = verts_[(i + 1) % verts_.size()];
        twice += a.x * b.y - b.x * a.y;
    }
    return twice / 2;
}

std::optional<ConvexPoly> ConvexPoly::clipped(const Rat& a, const Rat& b, const Rat& c) const {
    std::vector<RatPoint2> out;
    std::size_t n = verts_.size();
    std::vector<Rat> side(n);
    for (std::size_t i = 0; i < n; ++i)
        side[i] = c - a * verts_[i].x - b * verts_[i].y;  // >= 0 means inside
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = (i + 1) % n;
        if (side[i] >= 0) out.push_back(verts_[i]);
        if ((side[i] > 0 && side[j] < 0) || (side[i] < 0 && side[j] > 0)) {
            Rat t = side[i] / (side[i] - side[j]);
            out.push_back({verts_[i].x + t * (verts_[j].x - verts_[i].x),
                           verts_[i].y + t * (verts_[j].y - verts_[i].y)});
        }
    }
    ConvexPoly poly;
    poly.verts_ = std::move(out);
    if (!clean_ring(poly.verts_)) return std::nullopt;
    return poly;
}

bool ConvexPoly::contains(const RatPoint2& p, bool strict) const {
    std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        Rat c = cross(verts_[i], verts_[(i + 1) % n], p);
        if (strict ? c <= 0 : c < 0) return false;
    }
    return true;
}

ConvexPoly ConvexPoly::translated(const Rat& dx, const Rat& dy) const {
    ConvexPoly p = *this;
    for (RatPoint2& v : p.verts_) {
        v.x += dx;
        v.y += dy;
    }
    clean_ring(p.verts_);  // re-anchor at the smallest vertex
    return p;
}

ConvexPoly ConvexPoly::negated() const {
    // Point reflection is a half-turn rotation: CCW order is preserved.
    ConvexPoly p;
    p.verts_ = verts_;
    for (RatPoint2& v : p.verts_) {
        v.x = -v.x;
        v.y = -v.y;
    }
    clean_ring(p.verts_);
    return p;
}

RatPoint2 ConvexPoly::vertex_average() const {
    Rat sx(0), sy(0);
    for (const RatPoint2& v : verts_) {
        sx += v.x;
        sy += v.y;
    }
    Rat n(static_cast<long long>(verts_.size()));
    return {sx / n, sy / n};
}

void ConvexPoly::bbox(Rat& x0, Rat& y0, Rat& x1, Rat& y1) const {
    x0 = x1 = verts_[0].x;
    y0 = y1 = verts_[0].y;
    for (const RatPoint2& v : verts_) {
        if (v.x < x0) x0 = v.x;
        if (v.x > x1) x1 = v.x;
        if (v.y < y0) y0 = v.y;
        if (v.y > y1) y1 = v.y;
    }
}

PolySet PolySet::unit_square() {
    PolySet s;
    s.pieces_.push_back(ConvexPoly::unit_square());
    return s;
}

PolySet PolySet::from_disjoint(std::vector<ConvexPoly> pieces) {
    PolySet s;
    s.pieces_ = std::move(pieces);
    return s;
}

Rat PolySet::area() const {
    Rat total(0);
    for (const ConvexPoly& p : pieces_) total += p.area();
    return total;
}

namespace {

void charge(Budget* b, std::uint64_t units) {
    if (b) b->charge(units);
}

// Band k+eps <= p*x + q*y + c <= k+1-eps clipped against one piece.
std::vector<ConvexPoly> piece_in_strip(const ConvexPoly& piece, const Int& p, const Int& q,
                                       const Rat& c, const Rat& eps, Budget* budget) {
    Rat lo, hi;
    {
        bool first = true;
        for (const RatPoint2& v : piece.vertices()) {
            Rat val = v.x * p + v.y * q + c;
            if (first || val < lo) lo = val;
            if (first || val > hi) hi = val;
            first = false;
        }
    }
    std::vector<ConvexPoly> out;
    Int k0 = rat_ceil(lo - 1 + eps), k1 = rat_floor(hi - eps);
    charge(budget, k1 >= k0 ? static_cast<std::uint64_t>(k1 - k0 + 1) : 1);
    for (Int k = k0; k <= k1; ++k) {
        // k + eps <= p x + q y + c <= k + 1 - eps
        auto lower = piece.clipped(Rat(-p), Rat(-q), Rat(c - k - eps));
        if (!lower) continue;
        auto band = lower->clipped(Rat(p), Rat(q), Rat(k + 1 - eps - c));
        if (band) out.push_back(std::move(*band));
    }
    return out;
}

}  // namespace

PolySet intersect_strip(const PolySet& s, const Int& p, const Int& q, const Rat& c,
                        const Rat& eps, Budget* budget) {
    if (eps >= Rat(1, 2) || eps < 0) throw DegenerateStrip("strip half-width must be in [0, 1/2)");
    if (p == 0 && q == 0) throw DegenerateStrip("strip direction (0, 0)");
    std::vector<ConvexPoly> out;
    for (const ConvexPoly& piece : s.pieces()) {
        auto bands = piece_in_strip(piece, p, q, c, eps, budget);
        out.insert(out.end(), std::make_move_iterator(bands.begin()),
                   std::make_move_iterator(bands.end()));
    }
    return PolySet::from_disjoint(std::move(out));
}

PolySet strip_region(const Int& p, const Int& q, const Rat& c, const Rat& eps) {
    return intersect_strip(PolySet::unit_square(), p, q, c, eps);
}

PolySet intersect(const PolySet& a, const PolySet& b, Exec exec, Budget* budget) {
    charge(budget, a.size() * b.size());
    std::vector<std::array<Rat, 4>> bbs(b.size());
    for (std::size_t j = 0; j < b.size(); ++j)
        b.pieces()[j].bbox(bbs[j][0], bbs[j][1], bbs[j][2], bbs[j][3]);
    std::vector<std::vector<ConvexPoly>> rows(a.size());
    parallel_for(exec, a.size(), [&](std::size_t i) {
        const ConvexPoly& pa = a.pieces()[i];
        Rat ax0, ay0, ax1, ay1;
        pa.bbox(ax0, ay0, ax1, ay1);
        for (std::size_t jb = 0; jb < b.size(); ++jb) {
            if (ax1 <= bbs[jb][0] || ax0 >= bbs[jb][2] || ay1 <= bbs[jb][1] ||
                ay0 >= bbs[jb][3])
                continue;
            const ConvexPoly& pb = b.pieces()[jb];
            std::optional<ConvexPoly> cur = pa;
            const auto& vb = pb.vertices();
            for (std::size_t e = 0; cur && e < vb.size(); ++e) {
                const RatPoint2& u = vb[e];
                const RatPoint2& v = vb[(e + 1) % vb.size()];
                // inside of CCW edge (u, v): ea*x + eb*y <= ec
                Rat ea = v.y - u.y, eb = u.x - v.x;
                Rat ec = ea * u.x + eb * u.y;
                cur = cur->clipped(ea, eb, ec);
            }
            if (cur) rows[i].push_back(std::move(*cur));
        }
    });
    std::vector<ConvexPoly> out;
    for (auto& r : rows)
        out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
    return PolySet::from_disjoint(std::move(out));
}

namespace {

// piece minus q, as disjoint convex fragments.
std::vector<ConvexPoly> subtract_convex(const ConvexPoly& piece, const ConvexPoly& q,
                                        Budget* budget) {
    std::vector<ConvexPoly> out;
    std::optional<ConvexPoly> rest = piece;
    const auto& vq = q.vertices();
    charge(budget, vq.size());
    for (std::size_t e = 0; rest && e < vq.size(); ++e) {
        const RatPoint2& u = vq[e];
        const RatPoint2& v = vq[(e + 1) % vq.size()];
        Rat ea = v.y - u.y, eb = u.x - v.x;  // inside of q's edge: ea*x + eb*y <= ec
        Rat ec = ea * u.x + eb * u.y;
        if (auto frag = rest->clipped(-ea, -eb, -ec)) out.push_back(std::move(*frag));
        rest = rest->clipped(ea, eb, ec);
    }
    return out;
}

}  // namespace

namespace {

// Disjoint union accumulator over [0,1]^2 with a coarse bucket grid so new
// pieces are only clipped against nearby ones.
class DisjointUnion {
  public:
    explicit DisjointUnion(Budget* budget) : budget_(budget) {}

    void add(const ConvexPoly& piece) {
        Rat x0, y0, x1, y1;
        piece.bbox(x0, y0, x1, y1);
        std::vector<int> candidates = lookup(x0, y0, x1, y1);
        std::vector<ConvexPoly> frags = {piece};
        for (int idx : candidates) {
            Rat hx0, hy0, hx1, hy1;
            pieces_[idx].bbox(hx0, hy0, hx1, hy1);
            std::vector<ConvexPoly> next;
            for (const ConvexPoly& f : frags) {
                Rat fx0, fy0, fx1, fy1;
                f.bbox(fx0, fy0, fx1, fy1);
                if (fx1 <= hx0 || fx0 >= hx1 || fy1 <= hy0 || fy0 >= hy1) {
                    next.push_back(f);
                    continue;
                }
                auto sub = subtract_convex(f, pieces_[idx], budget_);
                next.insert(next.end(), std::make_move_iterator(sub.begin()),
                            std::make_move_iterator(sub.end()));
            }
            frags = std::move(next);
            if (frags.empty()) return;
        }
        for (ConvexPoly& f : frags) insert(std::move(f));
    }

    const Rat& area() const { return area_; }
    std::vector<ConvexPoly> take() { return std::move(pieces_); }

  private:
    static constexpr int kGrid = 24;

    static int cell_of(const Rat& v) {
        Int c = rat_floor(Rat(v * kGrid));
        if (c < 0) c = 0;
        if (c >= kGrid) c = kGrid - 1;
        return static_cast<int>(c);
    }

    std::vector<int> lookup(const Rat& x0, const Rat& y0, const Rat& x1, const Rat& y1) {
        std::vector<int> out;
        ++stamp_;
        for (int cx = cell_of(x0); cx <= cell_of(x1); ++cx)
            for (int cy = cell_of(y0); cy <= cell_of(y1); ++cy)
                for (int idx : grid_[cx * kGrid + cy]) {
                    if (seen_.size() <= static_cast<std::size_t>(idx)) seen_.resize(idx + 1, 0);
                    if (seen_[idx] == stamp_) continue;
                    seen_[idx] = stamp_;
                    out.push_back(idx);
                }
        std::sort(out.begin(), out.end());
        return out;
    }

    void insert(ConvexPoly piece) {
        Rat x0, y0, x1, y1;
        piece.bbox(x0, y0, x1, y1);
        int idx = static_cast<int>(pieces_.size());
        for (int cx = cell_of(x0); cx <= cell_of(x1); ++cx)
            for (int cy = cell_of(y0); cy <= cell_of(y1); ++cy)
                grid_[cx * kGrid + cy].push_back(idx);
        area_ += piece.area();
        pieces_.push_back(std::move(piece));
    }

    Budget* budget_;
    std::vector<ConvexPoly> pieces_;
    std::vector<std::vector<int>> grid_{std::vector<std::vector<int>>(kGrid * kGrid)};
    std::vector<unsigned> seen_;
    unsigned stamp_ = 0;
    Rat area_{0};
};

}  // namespace

PolySet unite(const PolySet& a, const PolySet& b, Budget* budget) {
    DisjointUnion acc(budget);
    for (const ConvexPoly& p : a.pieces()) acc.add(p);
    for (const ConvexPoly& p : b.pieces()) acc.add(p);
    return PolySet::from_disjoint(acc.take());
}

PolySet complement_in_torus(const PolySet& a, Budget* budget) {
    std::vector<ConvexPoly> out = {ConvexPoly::unit_square()};
    for (const ConvexPoly& q : a.pieces()) {
        std::vector<ConvexPoly> next;
        for (const ConvexPoly& piece : out) {
            auto frags = subtract_convex(piece, q, budget);
            next.insert(next.end(), std::make_move_iterator(frags.begin()),
                        std::make_move_iterator(frags.end()));
        }
        out = std::move(next);
    }
    return PolySet::from_disjoint(std::move(out));
}

namespace {

// Edges as vectors, CCW, starting from the bottom-most (then left-most)
// vertex; absolute angular order over [0, 2pi) is monotone from there.
struct EdgeRing {
    RatPoint2 start;
    std::vector<RatPoint2> edges;
};

EdgeRing edge_ring(const ConvexPoly& p) {
    const auto& v = p.vertices();
    std::size_t n = v.size(), lo = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (v[i].y < v[lo].y || (v[i].y == v[lo].y && v[i].x < v[lo].x)) lo = i;
    EdgeRing r;
    r.start = v[lo];
    for (std::size_t i = 0; i < n; ++i) {
        const RatPoint2& u = v[(lo + i) % n];
        const RatPoint2& w = v[(lo + i + 1) % n];
        r.edges.push_back({w.x - u.x, w.y - u.y});
    }
    return r;
}

int angle_half(const RatPoint2& e) { return (e.y > 0 || (e.y == 0 && e.x > 0)) ? 0 : 1; }

// 0 = same direction, negative = a first, positive = b first.
int angle_cmp(const RatPoint2& a, const RatPoint2& b) {
    int ha = angle_half(a), hb = angle_half(b);
    if (ha != hb) return ha - hb;
    Rat c = a.x * b.y - a.y * b.x;
    return c > 0 ? -1 : (c < 0 ? 1 : 0);
}

}  // namespace

ConvexPoly minkowski_sum(const ConvexPoly& a, const ConvexPoly& b) {
    EdgeRing ra = edge_ring(a), rb = edge_ring(b);
    std::vector<RatPoint2> out;
    out.push_back({ra.start.x + rb.start.x, ra.start.y + rb.start.y});
    std::size_t i = 0, j = 0;
    while (i < ra.edges.size() || j < rb.edges.size()) {
        RatPoint2 step;
        if (j == rb.edges.size()) {
            step = ra.edges[i++];
        } else if (i == ra.edges.size()) {
            step = rb.edges[j++];
        } else {
            int c = angle_cmp(ra.edges[i], rb.edges[j]);
            if (c < 0) {
                step = ra.edges[i++];
            } else if (c > 0) {
                step = rb.edges[j++];
            } else {
                step = {ra.edges[i].x + rb.edges[j].x, ra.edges[i].y + rb.edges[j].y};
                ++i;
                ++j;
            }
        }
        const RatPoint2& cur = out.back();
        out.push_back({cur.x + step.x, cur.y + step.y});
    }
    out.pop_back();  // closes the ring
    auto hull = ConvexPoly::from_points(std::move(out));
    if (!hull) throw std::logic_error("Minkowski sum of nondegenerate polygons is degenerate");
    return *hull;
}

namespace {

// Translate a piece by every integer offset that meets [0,1]^2 and clip.
std::vector<ConvexPoly> torus_wrap(const ConvexPoly& piece) {
    Rat x0, y0, x1, y1;
    piece.bbox(x0, y0, x1, y1);
    std::vector<ConvexPoly> out;
    for (Int ox = rat_floor(-x1); ox <= rat_ceil(1 - x0); ++ox) {
        for (Int oy = rat_floor(-y1); oy <= rat_ceil(1 - y0); ++oy) {
            ConvexPoly t = piece.translated(Rat(ox), Rat(oy));
            auto c = t.clipped(Rat(-1), Rat(0), Rat(0));  // x >= 0
            if (c) c = c->clipped(Rat(1), Rat(0), Rat(1));  // x <= 1
            if (c) c = c->clipped(Rat(0), Rat(-1), Rat(0)); // y >= 0
            if (c) c = c->clipped(Rat(0), Rat(1), Rat(1));  // y <= 1
            if (c) out.push_back(std::move(*c));
        }
    }
    return out;
}

}  // namespace

namespace {

// Residual region under repeated convex subtraction, bucketed like
// DisjointUnion; dead slots are skipped lazily.
class ComplementAccum {
  public:
    explicit ComplementAccum(Budget* budget) : budget_(budget) {
        insert(ConvexPoly::unit_square());
    }

    void subtract(const ConvexPoly& q) {
        if (alive_ == 0) return;
        Rat x0, y0, x1, y1;
        q.bbox(x0, y0, x1, y1);
        std::vector<int> candidates;
        ++stamp_;
        for (int cx = cell_of(x0); cx <= cell_of(x1); ++cx)
            for (int cy = cell_of(y0); cy <= cell_of(y1); ++cy)
                for (int idx : grid_[cx * kGrid + cy]) {
                    if (!slots_[idx]) continue;
                    if (seen_.size() <= static_cast<std::size_t>(idx)) seen_.resize(idx + 1, 0);
                    if (seen_[idx] == stamp_) continue;
                    seen_[idx] = stamp_;
                    candidates.push_back(idx);
                }
        std::sort(candidates.begin(), candidates.end());
        for (int idx : candidates) {
            Rat px0, py0, px1, py1;
            slots_[idx]->bbox(px0, py0, px1, py1);
            if (px1 <= x0 || px0 >= x1 || py1 <= y0 || py0 >= y1) continue;
            ConvexPoly piece = std::move(*slots_[idx]);
            slots_[idx].reset();
            --alive_;
            for (ConvexPoly& frag : subtract_convex(piece, q, budget_)) insert(std::move(frag));
        }
    }

    bool empty() const { return alive_ == 0; }
    std::vector<ConvexPoly> take() {
        std::vector<ConvexPoly> out;
        for (auto& s : slots_)
            if (s) out.push_back(std::move(*s));
        return out;
    }

  private:
    static constexpr int kGrid = 24;
    static int cell_of(const Rat& v) {
        Int c = rat_floor(Rat(v * kGrid));
        if (c < 0) c = 0;
        if (c >= kGrid) c = kGrid - 1;
        return static_cast<int>(c);
    }
    void insert(ConvexPoly piece) {
        Rat x0, y0, x1, y1;
        piece.bbox(x0, y0, x1, y1);
        int idx = static_cast<int>(slots_.size());
        for (int cx = cell_of(x0); cx <= cell_of(x1); ++cx)
            for (int cy = cell_of(y0); cy <= cell_of(y1); ++cy)
                grid_[cx * kGrid + cy].push_back(idx);
        slots_.emplace_back(std::move(piece));
        ++alive_;
    }

    Budget* budget_;
    std::vector<std::optional<ConvexPoly>> slots_;
    std::vector<std::vector<int>> grid_{std::vector<std::vector<int>>(kGrid * kGrid)};
    std::vector<unsigned> seen_;
    unsigned stamp_ = 0;
    std::size_t alive_ = 0;
};

std::string piece_key(const ConvexPoly& p) {
    std::string key;
    for (const RatPoint2& v : p.vertices()) {
        key += rat_to_string(v.x);
        key += ',';
        key += rat_to_string(v.y);
        key += ';';
    }
    return key;
}

// Visit the torus-wrapped Minkowski pair sums of s in deterministic order,
// in parallel-generated blocks; stops when the visitor returns false. The
// difference set is centrally symmetric, so only unordered pairs are summed
// and the (j, i) contribution is emitted as the reflection of (i, j).
// Periodic inputs produce heavily duplicated wrapped sums; each distinct
// piece is visited once.
template <class Visit>
void for_each_difference_piece(const PolySet& s, Exec exec, Budget* budget, Visit&& visit) {
    std::size_t n = s.size();
    if (n == 0) return;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) pairs.push_back({i, j});
    charge(budget, pairs.size());
    std::unordered_set<std::string> seen;
    const std::size_t block = 256;
    std::vector<std::vector<ConvexPoly>> wrapped(block);
    for (std::size_t base = 0; base < pairs.size(); base += block) {
        std::size_t count = std::min(block, pairs.size() - base);
        parallel_for(exec, count, [&](std::size_t t) {
            auto [i, j] = pairs[base + t];
            ConvexPoly sum = minkowski_sum(s.pieces()[i], s.pieces()[j].negated());
            wrapped[t] = torus_wrap(sum);
            if (i != j)
                for (ConvexPoly piece : torus_wrap(sum.negated()))
                    wrapped[t].push_back(std::move(piece));
        });
        for (std::size_t t = 0; t < count; ++t)
            for (ConvexPoly& piece : wrapped[t]) {
                if (!seen.insert(piece_key(piece)).second) continue;
                if (!visit(piece)) return;
            }
    }
}

}  // namespace

PolySet difference_set(const PolySet& s, Exec exec, Budget* budget) {
    DisjointUnion acc(budget);
    bool full = false;
    for_each_difference_piece(s, exec, budget, [&](const ConvexPoly& piece) {
        acc.add(piece);
        // At full measure the union is the whole torus already.
        full = acc.area() == 1;
        return !full;
    });
    return PolySet::from_disjoint(acc.take());
}

PolySet difference_set_complement(const PolySet& s, Exec exec, Budget* budget) {
    if (s.empty()) return PolySet::unit_square();
    ComplementAccum comp(budget);
    for_each_difference_piece(s, exec, budget, [&](const ConvexPoly& piece) {
        comp.subtract(piece);
        return !comp.empty();
    });
    return PolySet::from_disjoint(comp.take());
}

bool ball_avoids_difference_set(const PolySet& s, const RatPoint2& c, const Rat& r) {
    Rat r2 = r * r;
    bool ok = true;
    for_each_difference_piece(s, Exec::Serial, nullptr, [&](const ConvexPoly& piece) {
        if (point_poly_dist_sq(c, piece) <= r2) {
            ok = false;
            return false;
        }
        return true;
    });
    return ok;
}

std::vector<ConvexPoly> arrangement_cells(const std::vector<BreakLine>& lines) {
    std::vector<ConvexPoly> cells = {ConvexPoly::unit_square()};
    for (const BreakLine& l : lines) {
        std::vector<ConvexPoly> next;
        next.reserve(cells.size());
        for (const ConvexPoly& cell : cells) {
            auto below = cell.clipped(Rat(l.p), Rat(l.q), l.rhs);
            auto above = cell.clipped(Rat(-l.p), Rat(-l.q), -l.rhs);
            if (below && above) {
                next.push_back(std::move(*below));
                next.push_back(std::move(*above));
            } else {
                next.push_back(cell);
            }
        }
        cells = std::move(next);
    }
    return cells;
}

Rat point_poly_dist_sq(const RatPoint2& p, const ConvexPoly& poly) {
    if (poly.contains(p)) return Rat(0);
    const auto& v = poly.vertices();
    Rat best(-1);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const RatPoint2& a = v[i];
        const RatPoint2& b = v[(i + 1) % v.size()];
        Rat dx = b.x - a.x, dy = b.y - a.y;
        Rat len2 = dx * dx + dy * dy;
        Rat t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
        if (t < 0) t = 0;
        if (t > 1) t = 1;
        Rat ex = a.x + t * dx - p.x, ey = a.y + t * dy - p.y;
        Rat d2 = ex * ex + ey * ey;
        if (best < 0 || d2 < best) best = d2;
    }
    return best;
}

bool ball_avoids(const PolySet& s, const RatPoint2& c, const Rat& r) {
    Rat r2 = r * r;
    for (const ConvexPoly& piece : s.pieces())
        if (point_poly_dist_sq(c, piece) <= r2) return false;
    return true;
}

std::optional<std::pair<RatPoint2, Rat>> inner_point_with_clearance(const PolySet& s) {
    if (s.empty()) return std::nullopt;
    const ConvexPoly* best = &s.pieces()[0];
    Rat best_area = best->area();
    for (const ConvexPoly& p : s.pieces()) {
        Rat a = p.area();
        if (a > best_area) {
            best_area = a;
            best = &p;
        }
    }
    RatPoint2 c = best->vertex_average();
    const auto& v = best->vertices();
    Rat clearance(-1);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const RatPoint2& a = v[i];
        const RatPoint2& b = v[(i + 1) % v.size()];
        Rat dx = b.x - a.x, dy = b.y - a.y;
        // cross(a, b, c) > 0 for interior c; dividing by |dx| + |dy| >= |b-a|
        // gives a rational lower bound on the Euclidean edge distance.
        Rat slack = dx * (c.y - a.y) - dy * (c.x - a.x);
        Rat bound = slack / (rat_abs(dx) + rat_abs(dy));
        if (clearance < 0 || bound < clearance) clearance = bound;
    }
    if (clearance <= 0) return std::nullopt;  // cannot happen for positive-area pieces
    return std::make_pair(c, Rat(clearance / 2));
}

}  // namespace pyjama
