#include "pyjama/witness.hpp"

#include <algorithm>

#include "pyjama/errors.hpp"

namespace pyjama {

Rat verify_point(const Configuration& cfg, const QuadElem& x, const QuadElem& y) {
    Rat best = Rat(1, 2);
    bool first = true;
    for (const UnitVector& u : cfg.vectors) {
        QuadElem ip = u.cos * x + u.sin * y;
        if (!ip.is_rational())
            throw IrrationalInnerProduct("inner product " + ip.to_string() +
                                         " is irrational; point quality cannot be certified");
        Rat d = dist_to_int(ip.as_rational());
        if (first || d < best) best = d;
        first = false;
    }
    return best;
}

namespace {

Int smallest_prime_factor(Int n) {
    for (Int i = 2; i * i <= n; ++i)
        if (n % i == 0) return i;
    return n;
}

// Smallest positive t with t*a == 1 (mod p).
Int mod_inverse(const Int& a, const Int& p) {
    Int r0 = p, r1 = ((a % p) + p) % p, s0 = 0, s1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw std::domain_error("value not invertible modulo p");
    return ((s0 % p) + p) % p;
}

}  // namespace

PeriodicWitness periodic_witness(const Configuration& cfg) {
    auto qc = classify_quadratic(cfg);
    if (!qc)
        throw NotPeriodicQuadratic(
            "configuration is not of periodic quadratic type after canonical rotation");

    PeriodicWitness w;
    w.qc = *qc;
    const Int& D = qc->D;
    const Int& M = qc->Mprod;
    QuadElem xr, yr;  // the point in the rotated frame (first vector at (1,0))

    if (D == 1) {
        w.kase = PeriodicWitness::Case::D1;
        w.bound = Rat(1, 2);
        xr = QuadElem(Rat(M, 2));
        yr = QuadElem(Rat(M, 2));
    } else {
        Int p = smallest_prime_factor(D);
        if (p == 2) {
            w.kase = PeriodicWitness::Case::EvenD;
            w.bound = Rat(1, 2);
            xr = QuadElem(Rat(M, 2));
            // 2M / sqrt(D), so that each sin contribution 2*M*k_j/n_j is an
            // integer; equals M*sqrt(2) when D = 2.
            yr = QuadElem::sqrt_term(Rat(2 * M, D), D);
        } else {
            w.kase = PeriodicWitness::Case::OddPrime;
            w.prime = p;
            w.bound = Rat(p - 1, 2 * p);
            Int t = mod_inverse(M, p);
            xr = QuadElem(Rat(t * M * (p - 1), 2 * p));
            yr = QuadElem::sqrt_term(Rat(M), D);
        }
    }

    // Back to the user's frame: the classifying rotation was by conj(u_0),
    // so multiply the point by u_0.
    const UnitVector& u0 = cfg.vectors[0];
    w.x = u0.cos * xr - u0.sin * yr;
    w.y = u0.sin * xr + u0.cos * yr;

    w.achieved = Rat(1, 2);
    bool first = true;
    for (const UnitVector& u : cfg.vectors) {
        QuadElem ip = u.cos * w.x + u.sin * w.y;
        if (!ip.is_rational())
            throw InternalBoundViolation("periodic witness produced an irrational inner product");
        Rat s = ip.as_rational();
        w.inner_products.push_back(s);
        Rat d = dist_to_int(s);
        if (first || d < w.achieved) w.achieved = d;
        first = false;
    }
    if (w.achieved < w.bound)
        throw InternalBoundViolation("periodic witness achieved " + rat_to_string(w.achieved) +
                                     " below its bound " + rat_to_string(w.bound));
    return w;
}

}  // namespace pyjama
