#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "laplim/diagonalize.hpp"
#include "laplim/numeric.hpp"
#include "laplim/polynomial.hpp"
#include "laplim/tree_model.hpp"

namespace laplim {

/// Fixed points of psi(t) = 2 - mu - 1/t: the roots of t^2 + (mu-2)t + 1.
/// theta attracts, theta' = 1/theta repels; theta < theta' < 0 for mu > 4.
template <class Real>
struct FixedPoints {
    Real theta;
    Real theta_prime;
    Real mu;
};

template <class Real>
FixedPoints<Real> fixed_points(const Real& mu) {
    if (!(mu > 4)) throw std::domain_error("fixed_points requires mu > 4");
    using std::sqrt;
    Real a = mu - 2;
    // theta adds two like-signed terms (no cancellation); theta' = 1/theta
    // keeps the product identity to a rounding.
    Real theta = (-a - sqrt(a * a - 4)) / 2;
    return {theta, 1 / theta, mu};
}

/// Fixed points of the drifted map (2 - mu + d) - 1/t.
template <class Real>
struct SigmaPoints {
    Real sigma;
    Real sigma_prime;
    Real mu;
    Real d;
};

template <class Real>
SigmaPoints<Real> sigma_points(const Real& mu, const Real& d) {
    using std::sqrt;
    using std::abs;
    Real a = 2 - mu + d;
    Real disc2 = a * a - 4;
    if (!(disc2 > 0)) throw std::domain_error("sigma_points requires (2-mu+d)^2 > 4");
    Real disc = sqrt(disc2);
    // take the like-signed branch first, pair it with its reciprocal
    if (a < 0) {
        Real sigma = (a - disc) / 2;
        return {sigma, 1 / sigma, mu, d};
    }
    Real sigma_prime = (a + disc) / 2;
    return {1 / sigma_prime, sigma_prime, mu, d};
}

/// j-th iterate (1-based; j=1 is `start`) of the drifted map from `start`,
/// in closed form: W_j = sigma + (sigma' - sigma) / (beta sigma^{2j-2} + 1)
/// with beta = (sigma' - sigma)/(start - sigma) - 1.
template <class Real>
Real closed_form_orbit(const Real& start, const Real& mu, const Real& d, long j) {
    SigmaPoints<Real> sp = sigma_points(mu, d);
    if (start == sp.sigma) return sp.sigma;
    Real gap = sp.sigma_prime - sp.sigma;
    Real beta = gap / (start - sp.sigma) - 1;
    // sigma^{2j-2} by repeated squaring; |sigma| > 1 so this may overflow a
    // double for huge j, in which case the limit sigma is returned.
    Real pw = RealOps<Real>::from_long(1, mu);
    Real base = sp.sigma * sp.sigma;
    long e = j - 1;
    while (e > 0) {
        if (e & 1) pw *= base;
        base *= base;
        e >>= 1;
        using std::isfinite;
        if (!isfinite(pw)) return sp.sigma;
    }
    return sp.sigma + gap / (beta * pw + 1);
}

template <class Real>
struct RadiusResult {
    Real value;
    Real lo, hi;     // final bracket
    int iterations;
    MatrixKind kind;
    Real tol;
    bool exact;      // probe landed on the eigenvalue (zero diagonal entry)
};

namespace detail {

template <class Real>
int count_above(const RootedTree& t, const Real& x, int* equal = nullptr) {
    Inertia in = diagonalize_tree(t, -x).inertia;
    if (equal) *equal = in.equal;
    return in.above;
}

} // namespace detail

/// Largest eigenvalue of the chosen matrix of a rooted tree by inertia-count
/// bisection.
template <class Real>
RadiusResult<Real> radius_of_tree(const RootedTree& t, MatrixKind kind, const Real& tol) {
    if (!(tol > 0)) throw std::domain_error("radius tolerance must be positive");
    const int n = t.size();
    Real zero = RealOps<Real>::from_long(0, tol);
    if (n == 1) return {zero, zero, zero, 0, kind, tol, true};

    int delta = 0, edge_sum = 0;
    long deg2 = 0;
    for (int v = 0; v < n; ++v) {
        delta = std::max(delta, t.degree[v]);
        deg2 += t.degree[v];
        if (t.parent[v] >= 0)
            edge_sum = std::max(edge_sum, t.degree[v] + t.degree[t.parent[v]]);
    }

    Real lo = zero, hi = zero;
    if (kind == MatrixKind::Adjacency) {
        using std::sqrt;
        Real avg = RealOps<Real>::from_long(deg2, tol) / n;
        Real sq = sqrt(RealOps<Real>::from_long(delta, tol));
        lo = (avg > sq ? avg : sq);
        hi = RealOps<Real>::from_long(delta, tol);
    } else {
        lo = RealOps<Real>::from_long(delta + 1, tol);
        hi = RealOps<Real>::from_long(edge_sum, tol);
    }

    int iterations = 0;
    int eq = 0;
    // The radius must sit in (lo, hi]; halve the lower end if a bound was
    // not strict for this tree (can happen for the adjacency bracket).
    while (detail::count_above(t, lo, &eq) == 0) {
        ++iterations;
        if (eq > 0) return {lo, lo, lo, iterations, kind, tol, true};
        lo = lo / 2;
        if (lo < tol) { lo = zero; break; }
    }
    const long max_iter = 3 * static_cast<long>(RealOps<Real>::precision(tol)) + 64;
    while (hi - lo > tol && iterations < max_iter) {
        ++iterations;
        Real mid = (lo + hi) / 2;
        if (mid <= lo || mid >= hi) break;  // backend resolution reached
        if (detail::count_above(t, mid, &eq) > 0) {
            lo = mid;
        } else {
            if (eq > 0) return {mid, mid, mid, iterations, kind, tol, true};
            hi = mid;
        }
    }
    return {(lo + hi) / 2, lo, hi, iterations, kind, tol, false};
}

template <class Real>
RadiusResult<Real> radius(const LinearTree& g, MatrixKind kind, const Real& tol) {
    return radius_of_tree(realize(g, kind), kind, tol);
}

template <class Real>
RadiusResult<Real> radius(const LinearTree& g, MatrixKind kind = MatrixKind::Laplacian) {
    Real model = RealOps<Real>::from_long(1, Real{});
    return radius(g, kind, RealOps<Real>::default_radius_tol(model));
}

inline RadiusResult<double> radius(const LinearTree& g, MatrixKind kind = MatrixKind::Laplacian,
                                   double tol = 1e-12) {
    return radius<double>(g, kind, tol);
}

/// Exact characteristic polynomial det(xI - M) of a tree matrix by the
/// two-stream leaf-peeling recurrence (kept / root-deleted per subtree).
/// Independent of the congruence diagonalization.
inline Polynomial char_polynomial(const RootedTree& t, MatrixKind kind) {
    const int n = t.size();
    std::vector<Polynomial> kept(n), del(n);
    Polynomial x = Polynomial::x();
    for (int v = 0; v < n; ++v) {
        long dv = (kind == MatrixKind::Adjacency) ? 0 : t.degree[v];
        Polynomial prod = Polynomial::constant(BigRat(1));
        for (int c : t.children[v]) prod = prod * kept[c];
        del[v] = prod;
        Polynomial pv = (x - Polynomial::constant(BigRat(dv))) * prod;
        for (int c : t.children[v]) {
            // (off-diagonal entry)^2 = 1 for all three kinds
            Polynomial rest = Polynomial::constant(BigRat(1));
            for (int c2 : t.children[v])
                if (c2 != c) rest = rest * kept[c2];
            pv = pv - del[c] * rest;
        }
        kept[v] = pv;
    }
    return kept[n - 1];
}

struct OracleResult {
    BigFloat value;
    Polynomial char_poly;
    RootInterval isolation;
};

/// Spectral radius by exact characteristic polynomial plus Sturm isolation.
/// Exact-arithmetic budget caps the tree at 64 vertices.
inline OracleResult oracle_radius(const RootedTree& t, MatrixKind kind,
                                  mpfr_prec_t prec = 128) {
    if (t.size() > 64) throw std::domain_error("oracle_radius supports at most 64 vertices");
    Polynomial p = char_polynomial(t, kind);
    auto [root, iv] = largest_real_root(p, prec);
    return {root, p, iv};
}

/// Eigenvalue counts of a tree matrix at an exact rational probe, from the
/// characteristic polynomial (with multiplicity).
inline Inertia oracle_counts(const RootedTree& t, MatrixKind kind, const BigRat& probe) {
    Polynomial p = char_polynomial(t, kind);
    RootCounts rc = root_counts(p, probe);
    return {rc.below, rc.equal, rc.above};
}

} // namespace laplim
