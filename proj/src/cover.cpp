#include "pyjama/cover.hpp"

#include <algorithm>

#include "pyjama/errors.hpp"
#include "pyjama/geometry.hpp"

namespace pyjama {

namespace {

using Box = std::vector<RatInterval>;

RatInterval relation_interval(const IntMat& rel, int i, const Box& box) {
    RatInterval sum(0, 0);
    for (int j = 0; j < rel.cols(); ++j)
        if (rel.at(i, j) != 0) sum = sum + box[j].scaled(rel.at(i, j));
    return sum;
}

// Tighten the box with the single equality m_i . w = k, projecting onto each
// coordinate once in ascending order. Never empties the box: k lies in the
// relation interval, so a solution exists and survives every projection.
Box project_equality(const IntMat& rel, int i, const Int& k, Box box) {
    for (int j = 0; j < rel.cols(); ++j) {
        const Int& m = rel.at(i, j);
        if (m == 0) continue;
        RatInterval rest(0, 0);
        for (int l = 0; l < rel.cols(); ++l)
            if (l != j && rel.at(i, l) != 0) rest = rest + box[l].scaled(rel.at(i, l));
        Rat a = (Rat(k) - rest.hi) / Rat(m), b = (Rat(k) - rest.lo) / Rat(m);
        if (a > b) std::swap(a, b);
        RatInterval target(a, b), clipped;
        if (!intersect_interval(box[j], target, clipped))
            throw std::logic_error("equality projection emptied a coordinate");
        box[j] = clipped;
    }
    return box;
}

// Fourier-Motzkin feasibility for A z <= c; returns a rational point when the
// system is feasible, nullopt when infeasible, and gives up (unknown = true)
// past a size guard.
struct Ineq {
    std::vector<Rat> a;
    Rat c;
};

std::optional<std::vector<Rat>> fm_feasible(std::vector<Ineq> sys, int vars, bool& unknown) {
    if (vars == 0) {
        for (const Ineq& q : sys)
            if (q.c < 0) return std::nullopt;
        return std::vector<Rat>{};
    }
    std::vector<Ineq> zero, lower, upper;
    for (Ineq& q : sys) {
        const Rat& coef = q.a[vars - 1];
        if (coef == 0)
            zero.push_back(std::move(q));
        else if (coef > 0)
            upper.push_back(std::move(q));  // z <= (c - a' z') / coef
        else
            lower.push_back(std::move(q));
    }
    std::vector<Ineq> next = zero;
    if (lower.size() * upper.size() > 20000) {
        unknown = true;
        return std::nullopt;
    }
    for (const Ineq& lo : lower)
        for (const Ineq& up : upper) {
            // (-lo.a)/(-lo_coef) lower bound <= upper bound from up
            Rat lc = -lo.a[vars - 1], uc = up.a[vars - 1];
            Ineq combined;
            combined.a.resize(vars - 1);
            for (int j = 0; j < vars - 1; ++j) combined.a[j] = lo.a[j] * uc + up.a[j] * lc;
            combined.c = lo.c * uc + up.c * lc;
            next.push_back(std::move(combined));
        }
    for (Ineq& q : next) q.a.resize(vars - 1);
    auto tail = fm_feasible(std::move(next), vars - 1, unknown);
    if (!tail) return std::nullopt;
    // Back-substitute: feasible interval for the eliminated variable.
    bool has_lo = false, has_hi = false;
    Rat best_lo(0), best_hi(0);
    auto eval = [&](const Ineq& q) {
        Rat s = q.c;
        for (int j = 0; j < vars - 1; ++j) s -= q.a[j] * (*tail)[j];
        return s;
    };
    for (const Ineq& q : upper) {
        Rat bound = eval(q) / q.a[vars - 1];
        if (!has_hi || bound < best_hi) best_hi = bound;
        has_hi = true;
    }
    for (const Ineq& q : lower) {
        Rat bound = eval(q) / q.a[vars - 1];  // negative coef: >= bound
        if (!has_lo || bound > best_lo) best_lo = bound;
        has_lo = true;
    }
    Rat z;
    if (has_lo && has_hi)
        z = (best_lo + best_hi) / 2;
    else if (has_lo)
        z = best_lo;
    else if (has_hi)
        z = best_hi;
    else
        z = 0;
    tail->push_back(z);
    return tail;
}

struct SearchCtx {
    const IntMat& rel;
    Rat eps;
    std::uint64_t budget;
    ProveStats stats;
};

struct SearchOut {
    // exactly one is set
    std::unique_ptr<CertNode> proof;
    std::optional<std::vector<Rat>> witness;
    bool aborted = false;
};

// Try to solve {m_i . w = k_i for all i} inside the box; every relation has a
// single feasible integer here.
std::optional<std::vector<Rat>> solve_pinned(const SearchCtx& ctx, const Box& box,
                                             const std::vector<Int>& ks) {
    int n = ctx.rel.cols(), r = ctx.rel.rows();
    // Row-reduce [M | k] over Q.
    RatMat m(r, std::vector<Rat>(n + 1));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = Rat(ctx.rel.at(i, j));
        m[i][n] = Rat(ks[i]);
    }
    std::vector<int> pivot_col;
    int row = 0;
    for (int c = 0; c < n && row < r; ++c) {
        int p = -1;
        for (int i = row; i < r; ++i)
            if (m[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[row], m[p]);
        for (int i = 0; i < r; ++i) {
            if (i == row || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[row][c];
            for (int j = c; j <= n; ++j) m[i][j] -= f * m[row][j];
        }
        pivot_col.push_back(c);
        ++row;
    }
    for (int i = row; i < r; ++i)
        if (m[i][n] != 0) return std::nullopt;  // inconsistent

    // w = w0 + N z over the free columns.
    std::vector<int> free_cols;
    {
        std::vector<bool> is_pivot(n, false);
        for (int c : pivot_col) is_pivot[c] = true;
        for (int c = 0; c < n; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
    }
    int f = static_cast<int>(free_cols.size());
    std::vector<Rat> w0(n, Rat(0));
    RatMat N(n, std::vector<Rat>(f, Rat(0)));
    for (int t = 0; t < f; ++t) N[free_cols[t]][t] = 1;
    for (int i = 0; i < row; ++i) {
        int c = pivot_col[i];
        w0[c] = m[i][n] / m[i][c];
        for (int t = 0; t < f; ++t) N[c][t] = -m[i][free_cols[t]] / m[i][c];
    }

    // lo <= w0 + N z <= hi as 2n inequalities in z.
    std::vector<Ineq> sys;
    for (int j = 0; j < n; ++j) {
        Ineq up{std::vector<Rat>(f), box[j].hi - w0[j]};
        Ineq dn{std::vector<Rat>(f), w0[j] - box[j].lo};
        for (int t = 0; t < f; ++t) {
            up.a[t] = N[j][t];
            dn.a[t] = -N[j][t];
        }
        sys.push_back(std::move(up));
        sys.push_back(std::move(dn));
    }
    bool unknown = false;
    auto z = fm_feasible(std::move(sys), f, unknown);
    if (!z) return std::nullopt;
    std::vector<Rat> w(n);
    for (int j = 0; j < n; ++j) {
        w[j] = w0[j];
        for (int t = 0; t < f; ++t) w[j] += N[j][t] * (*z)[t];
    }
    // Exact audit before accepting.
    for (int j = 0; j < n; ++j)
        if (w[j] < box[j].lo || w[j] > box[j].hi) return std::nullopt;
    for (int i = 0; i < r; ++i) {
        Rat s(0);
        for (int j = 0; j < n; ++j) s += Rat(ctx.rel.at(i, j)) * w[j];
        if (denominator(s) != 1) return std::nullopt;
    }
    return w;
}

constexpr int kMaxFanout = 16;

SearchOut search(SearchCtx& ctx, Box box, int chain_credit) {
    SearchOut out;
    if (++ctx.stats.nodes > ctx.budget) {
        out.aborted = true;
        return out;
    }
    int r = ctx.rel.rows(), n = ctx.rel.cols();

    std::vector<RatInterval> iv(r);
    std::vector<Int> firsts(r), counts(r);
    for (int i = 0; i < r; ++i) {
        iv[i] = relation_interval(ctx.rel, i, box);
        firsts[i] = iv[i].first_integer();
        counts[i] = iv[i].integer_count();
        if (counts[i] == 0) {
            out.proof = std::make_unique<CertNode>();
            out.proof->kind = CertNode::Kind::Leaf;
            out.proof->index = i;
            return out;
        }
    }

    // Forced relations (single feasible k): propagate while it makes
    // progress, bounded by the chain credit so alternating projections
    // cannot stall the search.
    if (chain_credit > 0) {
        for (int i = 0; i < r; ++i) {
            if (counts[i] != 1) continue;
            Box tightened = project_equality(ctx.rel, i, firsts[i], box);
            if (tightened == box) continue;
            auto sub = search(ctx, std::move(tightened), chain_credit - 1);
            if (!sub.proof) return sub;  // witness or abort
            auto node = std::make_unique<CertNode>();
            node->kind = CertNode::Kind::KBranch;
            node->index = i;
            node->k_children.emplace_back(firsts[i], std::move(sub.proof));
            out.proof = std::move(node);
            return out;
        }
    }

    // All relations pinned to one integer: look for an exact witness.
    if (r > 0 && std::all_of(counts.begin(), counts.end(), [](const Int& c) { return c == 1; })) {
        if (auto w = solve_pinned(ctx, box, firsts)) {
            out.witness = std::move(w);
            return out;
        }
    }
    if (r == 0) {
        std::vector<Rat> w(n);
        for (int j = 0; j < n; ++j) w[j] = box[j].midpoint();
        out.witness = std::move(w);
        return out;
    }

    // Branch on the relation with the fewest feasible integers.
    int best = -1;
    for (int i = 0; i < r; ++i)
        if (counts[i] >= 2 && (best < 0 || counts[i] < counts[best])) best = i;

    if (best >= 0 && counts[best] <= kMaxFanout) {
        auto node = std::make_unique<CertNode>();
        node->kind = CertNode::Kind::KBranch;
        node->index = best;
        Int last = iv[best].last_integer();
        for (Int k = firsts[best]; k <= last; ++k) {
            auto sub = search(ctx, project_equality(ctx.rel, best, k, box), ctx.rel.rows());
            if (!sub.proof) return sub;
            node->k_children.emplace_back(k, std::move(sub.proof));
        }
        out.proof = std::move(node);
        return out;
    }

    // Bisect the widest coordinate.
    int wj = 0;
    for (int j = 1; j < n; ++j)
        if (box[j].width() > box[wj].width()) wj = j;
    Rat mid = box[wj].midpoint();
    auto node = std::make_unique<CertNode>();
    node->kind = CertNode::Kind::Bisect;
    node->index = wj;
    Box lo_box = box, hi_box = box;
    lo_box[wj] = RatInterval(box[wj].lo, mid);
    hi_box[wj] = RatInterval(mid, box[wj].hi);
    auto sub_lo = search(ctx, std::move(lo_box), ctx.rel.rows());
    if (!sub_lo.proof) return sub_lo;
    auto sub_hi = search(ctx, std::move(hi_box), ctx.rel.rows());
    if (!sub_hi.proof) return sub_hi;
    node->low = std::move(sub_lo.proof);
    node->high = std::move(sub_hi.proof);
    out.proof = std::move(node);
    return out;
}

}  // namespace

ProveResult prove_empty(const IntMat& relations, const Rat& eps, std::uint64_t node_budget) {
    if (eps <= 0 || eps >= Rat(1, 2))
        throw std::invalid_argument("prove_empty needs 0 < eps < 1/2");
    SearchCtx ctx{relations, eps, node_budget, {}};
    Box root(relations.cols(), RatInterval(eps, 1 - eps));
    SearchOut s = search(ctx, std::move(root), relations.rows());
    if (s.aborted) return UnknownResult{ctx.stats, "node budget exhausted"};
    if (s.witness) {
        Rat value = Rat(1, 2);
        for (const Rat& w : *s.witness) value = std::min(value, dist_to_int(w));
        return NonemptyResult{std::move(*s.witness), value, ctx.stats};
    }
    return EmptyResult{EmptinessCertificate{relations, eps, std::move(s.proof)}, ctx.stats};
}

// ---------- exact radius ----------

namespace {

// Affine branch of ||p z1 + q z2|| on a cell: value and slab index.
struct AffineDist {
    Rat a, b, c;  // f(z) = a z1 + b z2 + c on this cell
    Rat eval(const Rat& z1, const Rat& z2) const { return a * z1 + b * z2 + c; }
};

AffineDist affine_branch(const Int& p, const Int& q, const RatPoint2& interior) {
    Rat v = interior.x * p + interior.y * q;
    Int k = rat_floor(v * 2);
    if (k % 2 == 0) {  // v in [k/2, (k+1)/2], distance = v - k/2
        return {Rat(p), Rat(q), Rat(-k) / 2};
    }
    return {Rat(-p), Rat(-q), Rat(k + 1) / 2};
}

struct CellBest {
    Rat value{-1};
    RatPoint2 at{0, 0};
    void consider(const Rat& v, const RatPoint2& z) {
        if (v > value) {
            value = v;
            at = z;
        }
    }
};

// Max over the cell of min_j f_j: LP optimum sits at a cell vertex, a ridge
// (f_a = f_b) crossing an edge, or a ridge-ridge point.
CellBest cell_max_min(const ConvexPoly& cell, const std::vector<AffineDist>& f) {
    CellBest best;
    auto F = [&](const RatPoint2& z) {
        Rat v = f[0].eval(z.x, z.y);
        for (std::size_t j = 1; j < f.size(); ++j) v = std::min(v, f[j].eval(z.x, z.y));
        return v;
    };
    for (const RatPoint2& v : cell.vertices()) best.consider(F(v), v);

    std::size_t m = f.size();
    const auto& verts = cell.vertices();
    auto try_point = [&](const Rat& z1, const Rat& z2) {
        RatPoint2 p{z1, z2};
        if (cell.contains(p)) best.consider(F(p), p);
    };
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            // ridge f_a = f_b: (a1-a2) z1 + (b1-b2) z2 = c2-c1
            Rat ra = f[a].a - f[b].a, rb = f[a].b - f[b].b, rc = f[b].c - f[a].c;
            if (ra == 0 && rb == 0) continue;
            // ridge x edges
            for (std::size_t e = 0; e < verts.size(); ++e) {
                const RatPoint2& u = verts[e];
                const RatPoint2& v = verts[(e + 1) % verts.size()];
                Rat ea = v.y - u.y, eb = u.x - v.x;
                Rat ec = ea * u.x + eb * u.y;
                Rat det = ra * eb - rb * ea;
                if (det == 0) continue;
                try_point((rc * eb - rb * ec) / det, (ra * ec - rc * ea) / det);
            }
            // ridge x ridge
            for (std::size_t c2 = b + 1; c2 < m; ++c2) {
                Rat sa = f[a].a - f[c2].a, sb = f[a].b - f[c2].b, sc = f[c2].c - f[a].c;
                Rat det = ra * sb - rb * sa;
                if (det == 0) continue;
                try_point((rc * sb - rb * sc) / det, (ra * sc - rc * sa) / det);
            }
        }
    }
    return best;
}

RadiusResult chart_max_min_1d(const IntMat& B) {
    int n = B.rows();
    std::vector<Rat> cuts = {Rat(0), Rat(1)};
    for (int j = 0; j < n; ++j) {
        Int p = B.at(j, 0);
        if (p == 0) throw std::logic_error("zero chart row");
        Int bound = 2 * abs(p);
        for (Int k = -bound; k <= bound; ++k) {
            Rat z = Rat(k) / Rat(2 * p);
            if (z >= 0 && z <= 1) cuts.push_back(z);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    RadiusResult best{Rat(-1), {Rat(0)}};
    auto F = [&](const Rat& z) {
        Rat v = Rat(1, 2);
        for (int j = 0; j < n; ++j) v = std::min(v, dist_to_int(Rat(z * B.at(j, 0))));
        return v;
    };
    auto consider = [&](const Rat& z) {
        Rat v = F(z);
        if (v > best.value) best = {v, {z}};
    };
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        consider(cuts[s]);
        consider(cuts[s + 1]);
        // Per-segment affine branches; pairwise ridge crossings.
        Rat mid = (cuts[s] + cuts[s + 1]) / 2;
        std::vector<std::pair<Rat, Rat>> lin(n);  // f_j(z) = a z + c
        for (int j = 0; j < n; ++j) {
            AffineDist ad = affine_branch(B.at(j, 0), Int(0), {mid, Rat(0)});
            lin[j] = {ad.a, ad.c};
        }
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                Rat da = lin[a].first - lin[b].first;
                if (da == 0) continue;
                Rat z = (lin[b].second - lin[a].second) / da;
                if (z > cuts[s] && z < cuts[s + 1]) consider(z);
            }
    }
    return best;
}

}  // namespace

RadiusResult chart_max_min(const IntMat& B, Exec exec) {
    int n = B.rows(), d = B.cols();
    if (d < 1 || d > 2) throw UnsupportedDimension("chart_max_min handles d in {1, 2}");
    if (d == 1) return chart_max_min_1d(B);

    std::vector<BreakLine> lines;
    for (int j = 0; j < n; ++j) {
        Int p = B.at(j, 0), q = B.at(j, 1);
        if (p == 0 && q == 0) throw std::logic_error("zero chart row");
        Rat lo = Rat(std::min(Int(0), p) + std::min(Int(0), q));
        Rat hi = Rat(std::max(Int(0), p) + std::max(Int(0), q));
        for (Int k = rat_ceil(lo * 2); k <= rat_floor(hi * 2); ++k)
            lines.push_back({p, q, Rat(k) / 2});
    }
    std::vector<ConvexPoly> cells = arrangement_cells(lines);

    std::vector<CellBest> bests(cells.size());
    parallel_for(exec, cells.size(), [&](std::size_t c) {
        const ConvexPoly& cell = cells[c];
        RatPoint2 interior = cell.vertex_average();
        std::vector<AffineDist> f(n);
        for (int j = 0; j < n; ++j) f[j] = affine_branch(B.at(j, 0), B.at(j, 1), interior);
        bests[c] = cell_max_min(cell, f);
    });
    // Deterministic reduce in cell order.
    CellBest total;
    for (const CellBest& b : bests)
        if (b.value > total.value) total = b;
    return {total.value, {total.at.x, total.at.y}};
}

namespace {

// h = (1/2, ..., 1/2) lies in S iff every relation row has an even sum.
bool all_halves_in_subgroup(const IntMat& basis) {
    for (int i = 0; i < basis.rows(); ++i) {
        Int s = 0;
        for (int j = 0; j < basis.cols(); ++j) s += basis.at(i, j);
        if (s % 2 != 0) return false;
    }
    return true;
}

std::vector<Rat> halves_chart_point(const SubgroupParam& sp, int rank) {
    int n = sp.n(), d = sp.d();
    IntMat vinv = inverse_unimodular(sp.V);
    std::vector<Rat> z(d);
    for (int i = 0; i < d; ++i) {
        Rat s(0);
        for (int j = 0; j < n; ++j) s += Rat(vinv.at(rank + i, j)) / 2;
        z[i] = frac_part(s);
    }
    return z;
}

}  // namespace

RadiusResult covering_radius_exact(const Configuration& cfg, Exec exec) {
    RelationLattice rl = relation_lattice(cfg);
    if (rl.rank == 0)
        return {Rat(1, 2), std::vector<Rat>(rl.dim_d, Rat(1, 2))};

    SubgroupParam sp = subgroup_param(rl);
    if (all_halves_in_subgroup(rl.basis)) {
        std::vector<Rat> z = halves_chart_point(sp, rl.rank);
        // The chart image of the all-halves point must evaluate to 1/2 in
        // every coordinate; anything else is an internal error.
        for (int j = 0; j < sp.n(); ++j) {
            Rat v(0);
            for (int t = 0; t < sp.d(); ++t) v += Rat(sp.B.at(j, t)) * z[t];
            if (dist_to_int(v) != Rat(1, 2))
                throw std::logic_error("all-halves chart point failed its audit");
        }
        return {Rat(1, 2), z};
    }
    if (rl.dim_d > 2)
        throw UnsupportedDimension("exact covering radius needs d <= 2; use the enclosure");
    return chart_max_min(sp.B, exec);
}

Enclosure covering_radius_enclosure(const Configuration& cfg, const Rat& tol,
                                    std::uint64_t node_budget) {
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    RelationLattice rl = relation_lattice(cfg);
    if (rl.rank == 0) return {Rat(1, 2), Rat(1, 2)};
    if (all_halves_in_subgroup(rl.basis)) return {Rat(1, 2), Rat(1, 2)};

    Enclosure enc{Rat(0), Rat(1, 2)};
    while (enc.hi - enc.lo > tol) {
        Rat mid = (enc.lo + enc.hi) / 2;
        ProveResult r = prove_empty(rl.basis, mid, node_budget);
        if (std::holds_alternative<EmptyResult>(r)) {
            enc.hi = mid;
        } else if (auto* ne = std::get_if<NonemptyResult>(&r)) {
            enc.lo = std::max(enc.lo, ne->value);
        } else {
            break;  // budget ran out; the current enclosure stays valid
        }
    }
    return enc;
}

CoverVerdict is_covering(const Configuration& cfg, const Rat& eps, std::uint64_t node_budget) {
    if (eps <= 0 || eps >= Rat(1, 2))
        throw std::invalid_argument("is_covering needs 0 < eps < 1/2");
    RelationLattice rl = relation_lattice(cfg);

    if (rl.rank == 0 || rl.dim_d <= 2 || all_halves_in_subgroup(rl.basis)) {
        RadiusResult rr = covering_radius_exact(cfg);
        CoverVerdict v{CoverVerdict::Kind::CoversCertified, rr.value, std::nullopt, {}, {}, "", {}};
        if (eps >= rr.value) {
            v.note = "eps >= exact covering radius " + rat_to_string(rr.value);
        } else {
            v.kind = CoverVerdict::Kind::UncoveredWitness;
            v.witness_chart = rr.argmax;
            v.witness_value = rr.value;
            v.note = "exact covering radius " + rat_to_string(rr.value) + " exceeds eps";
        }
        return v;
    }

    SubgroupParam sp = subgroup_param(rl);
    ProveResult r = prove_empty(rl.basis, eps, node_budget);
    if (auto* em = std::get_if<EmptyResult>(&r)) {
        CoverVerdict v{CoverVerdict::Kind::CoversCertified, std::nullopt, std::move(em->cert),
                       {},
                       {},
                       "certified empty uncovered set",
                       em->stats};
        return v;
    }
    if (auto* ne = std::get_if<NonemptyResult>(&r)) {
        if (ne->value > eps) {
            // Map the witness through V^-1 onto the chart torus.
            IntMat vinv = inverse_unimodular(sp.V);
            std::vector<Rat> z(sp.d());
            for (int i = 0; i < sp.d(); ++i) {
                Rat s(0);
                for (int j = 0; j < sp.n(); ++j)
                    s += Rat(vinv.at(rl.rank + i, j)) * ne->witness[j];
                z[i] = frac_part(s);
            }
            return {CoverVerdict::Kind::UncoveredWitness, std::nullopt,        std::nullopt, z,
                    ne->value,                            "witness found",     ne->stats};
        }
        return {CoverVerdict::Kind::Unknown, std::nullopt, std::nullopt,
                {},                          std::nullopt, "witness sits on the cube boundary",
                ne->stats};
    }
    UnknownResult& u = std::get<UnknownResult>(r);
    return {CoverVerdict::Kind::Unknown, std::nullopt, std::nullopt, {}, std::nullopt, u.reason,
            u.stats};
}

}  // namespace pyjama
