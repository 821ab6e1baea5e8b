#pragma once

#include <cmath>
#include <vector>

#include "laplim/errors.hpp"
#include "laplim/numeric.hpp"
#include "laplim/tree_model.hpp"

namespace laplim {

struct Inertia {
    int below = 0, equal = 0, above = 0;

    friend bool operator==(const Inertia& a, const Inertia& b) {
        return a.below == b.below && a.equal == b.equal && a.above == b.above;
    }
};

template <class Real>
struct DiagOutcome {
    std::vector<Real> diagonal;
    Inertia inertia;
    Real probe;
    MatrixKind kind;
};

/// Congruence diagonalization of M + xI for a tree matrix M, processing
/// vertices bottom-up. Total: a zero child value is absorbed by the
/// (-1/2, 2) exchange and the cut of the edge above.
///
/// Sign convention: to place eigenvalues of M relative to mu, call with
/// x = -mu; `inertia` then counts eigenvalues below / equal to / above mu.
template <class Real>
DiagOutcome<Real> diagonalize_tree(const RootedTree& t, const Real& x,
                                   MatrixKind kind = MatrixKind::Laplacian) {
    const int n = t.size();
    DiagOutcome<Real> out;
    out.probe = x;
    out.kind = kind;
    out.diagonal.reserve(n);
    for (int i = 0; i < n; ++i)
        out.diagonal.push_back(RealOps<Real>::from_long(t.diag[i], x) + x);
    std::vector<char> cut(n, 0);  // cut[v]: the edge from v up to its parent is gone
    for (int v = 0; v < n; ++v) {
        int zero_child = -1;
        for (int c : t.children[v]) {
            if (cut[c]) continue;
            if (out.diagonal[c] == 0) { zero_child = c; break; }
        }
        if (zero_child < 0) {
            for (int c : t.children[v]) {
                if (cut[c]) continue;
                out.diagonal[v] -= 1 / out.diagonal[c];
            }
        } else {
            out.diagonal[v] = RealOps<Real>::from_long(-1, x) / 2;
            out.diagonal[zero_child] = RealOps<Real>::from_long(2, x);
            cut[v] = 1;
        }
    }
    for (const Real& d : out.diagonal) {
        if (d < 0) ++out.inertia.below;
        else if (d > 0) ++out.inertia.above;
        else ++out.inertia.equal;
    }
    return out;
}

/// psi(t) = 2 - mu - 1/t, the Laplacian path map.
template <class Real>
struct PathKernel {
    Real mu;
    Real operator()(const Real& t) const { return 2 - mu - 1 / t; }
};

/// phi(t) = -lambda - 1/t, the adjacency analogue.
template <class Real>
struct AdjacencyKernel {
    Real lambda;
    Real operator()(const Real& t) const { return -lambda - 1 / t; }
};

namespace detail {
template <class Real>
void require_mu_above_4(const Real& mu, const char* what) {
    if (!(mu > 4))
        throw std::domain_error(std::string(what) + " requires mu > 4");
}
} // namespace detail

/// Diagonalization values along one attached path of q vertices, leaf first:
/// b1 = 1 - mu, b_{j+1} = psi(b_j). All negative and increasing toward theta
/// for mu > 4.
template <class Real>
std::vector<Real> path_values(int q, const Real& mu) {
    detail::require_mu_above_4(mu, "path_values");
    if (q < 1) throw std::domain_error("path_values requires q >= 1");
    std::vector<Real> b;
    b.reserve(q);
    b.push_back(1 - mu);
    PathKernel<Real> psi{mu};
    for (int j = 1; j < q; ++j) b.push_back(psi(b.back()));
    return b;
}

/// Net contribution of a starlike bundle to its back node:
/// delta(T, mu) = sum over paths of (1 - 1/b_last), 0 for the empty star.
template <class Real>
Real drift(const Starlike& t, const Real& mu) {
    detail::require_mu_above_4(mu, "drift");
    Real acc = RealOps<Real>::from_long(0, mu);
    for (int q : t.path_lengths()) {
        Real b = path_values(q, mu).back();
        acc += 1 - 1 / b;
    }
    return acc;
}

template <class Real>
struct PiTrace {
    Real mu;
    std::vector<Real> s_values;                // S_1..S_k
    std::vector<std::vector<Real>> path_tails; // per star: the b_last of each path
    std::vector<Real> drifts;                  // delta(T_j, mu) per star
    std::vector<int> sign_vector;              // -1 / 0 / +1 per S_j
};

/// The O(n) specialization of diagonalize_tree for linear trees at probe
/// x = -mu: collapses each star into its drift and walks the main path.
///
/// End bookkeeping: v_1 and v_k each lack one main-path neighbor, so S_1
/// starts from 1 - mu and S_k picks up an extra -1. A length-1 tree has
/// neither neighbor: S_1 = -mu + delta(T_1, mu), one below the k >= 2 start.
///
/// Throws GuardTripped when an intermediate |S_j| falls under the backend
/// guard; callers must then decide via diagonalize_tree.
template <class Real>
PiTrace<Real> pi_trace(const LinearTree& g, const Real& mu) {
    detail::require_mu_above_4(mu, "pi_trace");
    const int k = g.length();
    PiTrace<Real> tr;
    tr.mu = mu;
    PathKernel<Real> psi{mu};
    const Real guard = RealOps<Real>::recurrence_guard(mu);
    Real s = RealOps<Real>::from_long(0, mu);
    for (int j = 1; j <= k; ++j) {
        std::vector<Real> tails;
        Real d = RealOps<Real>::from_long(0, mu);
        for (int q : g.star(j).path_lengths()) {
            Real b = path_values(q, mu).back();
            d += 1 - 1 / b;
            tails.push_back(b);
        }
        if (j == 1) {
            s = (k == 1 ? -mu : 1 - mu) + d;
        } else {
            s = psi(s) + d;
            if (j == k) s -= 1;
        }
        tr.s_values.push_back(s);
        tr.path_tails.push_back(std::move(tails));
        tr.drifts.push_back(d);
        tr.sign_vector.push_back(s < 0 ? -1 : (s > 0 ? 1 : 0));
        using std::abs;
        if (j < k && abs(s) < guard) throw GuardTripped(j);
    }
    return tr;
}

enum class RadiusClass { RadiusBelowMu, RadiusEqualsMu, RadiusAboveMu };

inline const char* radius_class_name(RadiusClass c) {
    switch (c) {
        case RadiusClass::RadiusBelowMu: return "below";
        case RadiusClass::RadiusEqualsMu: return "equals";
        case RadiusClass::RadiusAboveMu: return "above";
    }
    return "?";
}

/// Locate rho_L(g) relative to mu from the sign pattern of the trace,
/// falling back to the generic algorithm when the guard trips.
template <class Real>
RadiusClass classify(const LinearTree& g, const Real& mu) {
    try {
        PiTrace<Real> tr = pi_trace(g, mu);
        for (int sg : tr.sign_vector)
            if (sg > 0) return RadiusClass::RadiusAboveMu;
        if (tr.sign_vector.back() == 0) return RadiusClass::RadiusEqualsMu;
        return RadiusClass::RadiusBelowMu;
    } catch (const GuardTripped&) {
        RootedTree t = realize(g, MatrixKind::Laplacian);
        Inertia in = diagonalize_tree(t, -mu).inertia;
        if (in.above > 0) return RadiusClass::RadiusAboveMu;
        if (in.equal > 0) return RadiusClass::RadiusEqualsMu;
        return RadiusClass::RadiusBelowMu;
    }
}

} // namespace laplim
