#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pyjama/parallel.hpp"
#include "pyjama/rat.hpp"

namespace pyjama {

struct RatPoint2 {
    Rat x, y;
    friend bool operator==(const RatPoint2&, const RatPoint2&) = default;
};

// Strictly convex polygon, CCW vertices, nonempty interior. Vertex list is
// rotated so it starts at the lexicographically smallest vertex, which makes
// equal polygons compare equal.
class ConvexPoly {
  public:
    // Convex hull of the points; nullopt when the hull has zero area.
    static std::optional<ConvexPoly> from_points(std::vector<RatPoint2> pts);
    static ConvexPoly rectangle(const Rat& x0, const Rat& y0, const Rat& x1, const Rat& y1);
    static ConvexPoly unit_square() { return rectangle(0, 0, 1, 1); }

    const std::vector<RatPoint2>& vertices() const { return verts_; }
    Rat area() const;

    // Intersection with the halfplane a*x + b*y <= c.
    std::optional<ConvexPoly> clipped(const Rat& a, const Rat& b, const Rat& c) const;

    bool contains(const RatPoint2& p, bool strict = false) const;
    ConvexPoly translated(const Rat& dx, const Rat& dy) const;
    ConvexPoly negated() const;  // point reflection through the origin
    RatPoint2 vertex_average() const;
    void bbox(Rat& x0, Rat& y0, Rat& x1, Rat& y1) const;

    friend bool operator==(const ConvexPoly&, const ConvexPoly&) = default;

  private:
    std::vector<RatPoint2> verts_;
};

// Finite union of convex pieces inside [0,1]^2 with pairwise disjoint
// interiors; torus sets are stored unrolled and split at the square boundary.
class PolySet {
  public:
    PolySet() = default;
    static PolySet unit_square();
    // Caller guarantees disjoint interiors.
    static PolySet from_disjoint(std::vector<ConvexPoly> pieces);

    bool empty() const { return pieces_.empty(); }
    std::size_t size() const { return pieces_.size(); }
    const std::vector<ConvexPoly>& pieces() const { return pieces_; }
    Rat area() const;

  private:
    std::vector<ConvexPoly> pieces_;
};

// Closure of {z in [0,1)^2 : p*z1 + q*z2 + c mod 1 in (eps, 1-eps)}.
// Throws DegenerateStrip when eps >= 1/2.
PolySet strip_region(const Int& p, const Int& q, const Rat& c, const Rat& eps);

// s restricted to the same strip constraint; cheaper than building the full
// strip and intersecting because only bands meeting each piece are visited.
PolySet intersect_strip(const PolySet& s, const Int& p, const Int& q, const Rat& c,
                        const Rat& eps, Budget* budget = nullptr);

PolySet intersect(const PolySet& a, const PolySet& b, Exec exec = Exec::Serial,
                  Budget* budget = nullptr);
PolySet unite(const PolySet& a, const PolySet& b, Budget* budget = nullptr);
PolySet complement_in_torus(const PolySet& a, Budget* budget = nullptr);

ConvexPoly minkowski_sum(const ConvexPoly& a, const ConvexPoly& b);

// Torus-wrapped closure of {a - b : a, b in s}; centrally symmetric and
// contains 0 whenever s is nonempty.
PolySet difference_set(const PolySet& s, Exec exec = Exec::Serial, Budget* budget = nullptr);

// Complement of difference_set(s) without materializing the difference set:
// the torus square minus each Minkowski pair sum, streamed with an early
// exit once nothing is left. Equal as a set to
// complement_in_torus(difference_set(s)).
PolySet difference_set_complement(const PolySet& s, Exec exec = Exec::Serial,
                                  Budget* budget = nullptr);

// Exact check that the closed ball misses the torus-wrapped difference set,
// again streamed over the pair sums.
bool ball_avoids_difference_set(const PolySet& s, const RatPoint2& c, const Rat& r);

struct BreakLine {
    Int p, q;  // not both zero
    Rat rhs;   // p*z1 + q*z2 = rhs
};

// Subdivision of [0,1]^2 into convex cells whose interiors meet no line.
std::vector<ConvexPoly> arrangement_cells(const std::vector<BreakLine>& lines);

// A rational point plus a positive clearance radius whose closed ball lies in
// the set; nullopt when the set is empty.
std::optional<std::pair<RatPoint2, Rat>> inner_point_with_clearance(const PolySet& s);

// Exact squared Euclidean distance from a point to a convex piece.
Rat point_poly_dist_sq(const RatPoint2& p, const ConvexPoly& poly);

// True iff the closed ball around c of radius r misses every piece of s.
bool ball_avoids(const PolySet& s, const RatPoint2& c, const Rat& r);

}  // namespace pyjama
