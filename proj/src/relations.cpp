#include "pyjama/relations.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pyjama/errors.hpp"

namespace pyjama {

RelationLattice relation_lattice(const Configuration& cfg) {
    int n = cfg.size();
    // Two rational rows (x and y coordinates) per radicand appearing anywhere;
    // square roots of distinct squarefree integers are Q-independent, so
    // sum m_j u_j = 0 iff every per-radicand coordinate row annihilates m.
    std::set<Int> radicands;
    for (const UnitVector& u : cfg.vectors) {
        for (const auto& t : u.cos.terms()) radicands.insert(t.radicand);
        for (const auto& t : u.sin.terms()) radicands.insert(t.radicand);
    }
    RatMat C;
    for (const Int& rad : radicands) {
        std::vector<Rat> rx(n, Rat(0)), ry(n, Rat(0));
        for (int j = 0; j < n; ++j) {
            for (const auto& t : cfg.vectors[j].cos.terms())
                if (t.radicand == rad) rx[j] = t.coeff;
            for (const auto& t : cfg.vectors[j].sin.terms())
                if (t.radicand == rad) ry[j] = t.coeff;
        }
        C.push_back(std::move(rx));
        C.push_back(std::move(ry));
    }

    RelationLattice rl;
    rl.basis = int_kernel(C, n);
    rl.rank = rl.basis.rows();
    rl.dim_d = n - rl.rank;
    return rl;
}

namespace {

// Smallest (lexicographic) d-subset of rows with |det| = 1, if any.
std::optional<std::vector<int>> find_unimodular_chart(const IntMat& B) {
    int n = B.rows(), d = B.cols();
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    if (d == 0) return idx;
    long long combos = 0;
    for (;;) {
        IntMat block(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) block.at(i, j) = B.at(idx[i], j);
        Int det = determinant(block);
        if (det == 1 || det == -1) return idx;
        if (++combos > 2000000) return std::nullopt;
        // next combination
        int i = d - 1;
        while (i >= 0 && idx[i] == n - d + i) --i;
        if (i < 0) return std::nullopt;
        ++idx[i];
        for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

SubgroupParam subgroup_param(const RelationLattice& rl) {
    int n = rl.basis.cols() > 0 ? rl.basis.cols() : rl.rank + rl.dim_d;
    int d = rl.dim_d;
    SubgroupParam sp;
    if (rl.rank == 0) {
        sp.B = IntMat::identity(n);
        sp.V = IntMat::identity(n);
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        sp.chart = all;
        return sp;
    }

    SnfResult s = snf(rl.basis);
    if (s.rank() != rl.rank)
        throw SaturationViolated("relation basis rank does not match SNF rank");
    for (const Int& f : s.invariant_factors)
        if (f != 1)
            throw SaturationViolated("relation lattice is not saturated (invariant factor " +
                                     f.str() + ")");

    sp.V = s.V;
    sp.B = IntMat(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) sp.B.at(i, j) = s.V.at(i, rl.rank + j);

    if (auto chart = find_unimodular_chart(sp.B)) {
        // Renormalize so the chart block is the identity: projection of S
        // onto the chart coordinates becomes literally z.
        IntMat block(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) block.at(i, j) = sp.B.at((*chart)[i], j);
        sp.B = sp.B * inverse_unimodular(block);
        sp.chart = chart;
    } else if (d == 2) {
        // No coordinate chart exists; shorten the rows instead by Lagrange
        // reduction of the Gram form of B (a z-reparametrization).
        sp.B = sp.B * gauss_reduce_columns(sp.B);
    }
    if (sp.B.cols() > 0) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < d; ++j) sp.V.at(i, rl.rank + j) = sp.B.at(i, j);
    }
    return sp;
}

bool is_periodic(const Configuration& cfg) {
    if (cfg.size() < 2) return false;
    return relation_lattice(cfg).dim_d == 2;
}

std::optional<PeriodBasis> period_lattice(const Configuration& cfg) {
    RelationLattice rl = relation_lattice(cfg);
    if (rl.dim_d != 2 || cfg.size() < 2) return std::nullopt;
    int n = cfg.size();

    const UnitVector &u0 = cfg.vectors[0], &u1 = cfg.vectors[1];
    // q_j = rational coordinates of u_j in the basis (u0, u1); d = 2 makes
    // every coordinate rational.
    QuadElem det = u0.cos * u1.sin - u0.sin * u1.cos;
    QuadElem det_inv = det.inverse();
    RatMat Q(n, std::vector<Rat>(2));
    for (int j = 0; j < n; ++j) {
        const UnitVector& u = cfg.vectors[j];
        QuadElem q0 = (u.cos * u1.sin - u.sin * u1.cos) * det_inv;
        QuadElem q1 = (u0.cos * u.sin - u0.sin * u.cos) * det_inv;
        Q[j][0] = q0.as_rational();
        Q[j][1] = q1.as_rational();
    }

    // v is a period vector iff a := (<u0,v>, <u1,v>) is integral and Q a is
    // integral. Solve N a + delta b = 0 over Z and project onto a.
    Int delta = 1;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < 2; ++k) delta = boost::multiprecision::lcm(delta, denominator(Q[j][k]));
    RatMat sys(n, std::vector<Rat>(2 + n, Rat(0)));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < 2; ++k) sys[j][k] = Q[j][k] * Rat(delta);
        sys[j][2 + j] = Rat(delta);
    }
    IntMat ker = int_kernel(sys, 2 + n);
    IntMat proj(ker.rows(), 2);
    for (int i = 0; i < ker.rows(); ++i)
        for (int k = 0; k < 2; ++k) proj.at(i, k) = ker.at(i, k);
    IntMat K = row_hnf(proj);
    if (K.rows() != 2) throw SaturationViolated("period lattice rank != 2");

    // v = R^-1 a where R has rows u0, u1.
    QuadElem inv00 = u1.sin * det_inv, inv01 = -u0.sin * det_inv;
    QuadElem inv10 = -u1.cos * det_inv, inv11 = u0.cos * det_inv;
    auto to_vec = [&](const Int& a0, const Int& a1) -> std::array<QuadElem, 2> {
        return {inv00 * QuadElem(Rat(a0)) + inv01 * QuadElem(Rat(a1)),
                inv10 * QuadElem(Rat(a0)) + inv11 * QuadElem(Rat(a1))};
    };
    PeriodBasis pb{to_vec(K.at(0, 0), K.at(0, 1)), to_vec(K.at(1, 0), K.at(1, 1))};

    // Exact audit: every inner product must be an integer.
    for (const auto& v : {pb.v0, pb.v1})
        for (const UnitVector& u : cfg.vectors) {
            Rat ip = (u.cos * v[0] + u.sin * v[1]).as_rational();
            if (denominator(ip) != 1)
                throw SaturationViolated("period vector has non-integer inner product");
        }
    return pb;
}

std::optional<QuadClass> classify_quadratic(const Configuration& cfg) {
    // Mirror the paper's normalization: rotate so the first vector is (1, 0).
    UnitVector rot = conjugate(cfg.vectors[0]);
    Configuration r = rotate(cfg, rot);

    Int D = 0;
    for (const UnitVector& u : r.vectors) {
        if (!u.cos.is_rational()) return std::nullopt;
        if (u.sin.is_zero()) continue;
        if (u.sin.terms().size() != 1) return std::nullopt;
        Int rad = u.sin.terms()[0].radicand;
        if (D == 0)
            D = rad;
        else if (D != rad)
            return std::nullopt;
    }
    if (D == 0) D = 1;  // every sin vanished: all vectors along (1,0)

    QuadClass qc;
    qc.D = D;
    qc.Mprod = 1;
    qc.rotation = rot;
    for (const UnitVector& u : r.vectors) {
        Rat c = u.cos.as_rational();
        Rat s = u.sin.is_zero() ? Rat(0) : u.sin.terms()[0].coeff;
        Int nj = boost::multiprecision::lcm(denominator(c), denominator(s));
        QuadTriple t{numerator(c) * (nj / denominator(c)), numerator(s) * (nj / denominator(s)),
                     nj};
        Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(t.m), abs(t.k)), t.n);
        t.m /= g;
        t.k /= g;
        t.n /= g;
        if (t.m * t.m + D * t.k * t.k != t.n * t.n)
            throw InternalBoundViolation("quadratic triple does not satisfy m^2 + D k^2 = n^2");
        // The paper derives pairwise coprimality from gcd(m, k, n) = 1.
        if (boost::multiprecision::gcd(abs(t.m), t.n) != 1 ||
            boost::multiprecision::gcd(abs(t.k), t.n) != 1 ||
            (t.m != 0 && t.k != 0 && boost::multiprecision::gcd(abs(t.m), abs(t.k)) != 1))
            throw InternalBoundViolation("quadratic triple is not pairwise coprime");
        qc.Mprod *= t.n;
        qc.triples.push_back(t);
    }
    return qc;
}

}  // namespace pyjama
