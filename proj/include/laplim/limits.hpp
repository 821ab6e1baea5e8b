#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "laplim/diagonalize.hpp"
#include "laplim/errors.hpp"
#include "laplim/polynomial.hpp"
#include "laplim/rational_function.hpp"
#include "laplim/shearer.hpp"
#include "laplim/spectral.hpp"
#include "laplim/tree_model.hpp"

namespace laplim {

enum class TailKind { ZeroTail, ConstantTail, PeriodicTail };
enum class ClosingRule { ShiftOfT, ExplicitList };

/// A star stream T_1, T_2, ... (finite prefix then a tail pattern) plus the
/// rule for the closing star C_k, describing the whole family
/// G_k = [T_1,...,T_{k-1}, C_k].
struct SequenceSpec {
    std::vector<Starlike> prefix;
    TailKind tail_kind = TailKind::ZeroTail;
    std::vector<Starlike> tail_stars;       // ConstantTail: one; PeriodicTail: the period
    ClosingRule closing = ClosingRule::ShiftOfT;
    std::vector<Starlike> closing_list;     // ExplicitList: C_k = closing_list[k-2], last repeats

    static SequenceSpec zero_tail(std::vector<Starlike> pre) {
        SequenceSpec s;
        s.prefix = std::move(pre);
        return s;
    }

    /// j-th star of the stream, 1-based.
    Starlike star_at(int j) const {
        if (j <= static_cast<int>(prefix.size())) return prefix[j - 1];
        switch (tail_kind) {
            case TailKind::ZeroTail: return Starlike::empty();
            case TailKind::ConstantTail: return tail_stars.at(0);
            case TailKind::PeriodicTail: {
                int i = (j - static_cast<int>(prefix.size()) - 1) %
                        static_cast<int>(tail_stars.size());
                return tail_stars[i];
            }
        }
        return Starlike::empty();
    }

    Starlike closing_at(int k) const {
        if (closing == ClosingRule::ShiftOfT) return star_at(k);
        if (closing_list.empty()) throw std::domain_error("explicit closing rule without stars");
        int i = std::min<int>(k - 2, static_cast<int>(closing_list.size()) - 1);
        return closing_list[std::max(i, 0)];
    }

    LinearTree realize_tree(int k) const {
        std::vector<Starlike> stars;
        stars.reserve(k);
        for (int j = 1; j < k; ++j) stars.push_back(star_at(j));
        stars.push_back(k == 1 ? star_at(1) : closing_at(k));
        return LinearTree(std::move(stars));
    }
};

/// The [1,k-1,k-1] spider family: empty stream closed by C_k = [1, k-1].
inline SequenceSpec one_k_k_family(int k_max) {
    SequenceSpec s;
    s.prefix = {Starlike::empty()};
    s.closing = ClosingRule::ExplicitList;
    for (int k = 2; k <= std::max(k_max, 2); ++k)
        s.closing_list.push_back(Starlike({1, k - 1}));
    return s;
}

struct LimitEstimate {
    double gamma = 0;        // rho of the deepest tree computed
    double cauchy_gap = 0;   // rho(G_kmax) - rho(G_{kmax-1}); the estimate is
                             // never claimed closer to the limit than this
    std::vector<double> radii;
};

/// Radii along the family up to k_max. Throws MonotonicityError if the
/// sequence decreases by more than bisection noise: the spec then fails the
/// subgraph condition and is not a generalized Shearer sequence.
inline LimitEstimate estimate_limit(const SequenceSpec& spec, int k_max, double tol = 1e-9) {
    if (k_max < 2) throw std::domain_error("estimate_limit requires k_max >= 2");
    LimitEstimate est;
    est.radii.reserve(k_max);
    for (int k = 1; k <= k_max; ++k) {
        double r = radius(spec.realize_tree(k), MatrixKind::Laplacian, tol).value;
        if (!est.radii.empty() && r < est.radii.back() - 3 * tol)
            throw MonotonicityError(
                "radius decreased at k=" + std::to_string(k) +
                    ": not a generalized Shearer sequence",
                k);
        est.radii.push_back(r);
    }
    est.gamma = est.radii.back();
    est.cauchy_gap = std::max(est.radii.back() - est.radii[est.radii.size() - 2], tol);
    return est;
}

/// Replace everything after the first k0 stream stars with [0]^infinity.
inline SequenceSpec truncate(const SequenceSpec& spec, int k0) {
    if (k0 < 1 || k0 > static_cast<int>(spec.prefix.size()))
        throw std::domain_error("truncate requires 1 <= k0 <= prefix length");
    SequenceSpec out;
    out.prefix.assign(spec.prefix.begin(), spec.prefix.begin() + k0);
    return out;
}

namespace detail {

/// b_q as a rational function of mu along one attached path.
inline RationalFunction sym_path_tail(int q) {
    RationalFunction mu = RationalFunction::x();
    RationalFunction b = RationalFunction::constant(BigRat(1)) - mu;
    RationalFunction two_minus = RationalFunction::constant(BigRat(2)) - mu;
    for (int j = 1; j < q; ++j) b = two_minus - b.reciprocal();
    return b;
}

inline RationalFunction sym_drift(const Starlike& star) {
    RationalFunction acc;
    RationalFunction one = RationalFunction::constant(BigRat(1));
    for (int q : star.path_lengths()) acc = acc + one - sym_path_tail(q).reciprocal();
    return acc;
}

/// Interior S_m as a rational function of mu over the given star prefix.
inline RationalFunction sym_interior_S(const std::vector<Starlike>& prefix) {
    RationalFunction mu = RationalFunction::x();
    RationalFunction s = RationalFunction::constant(BigRat(1)) - mu + sym_drift(prefix.at(0));
    RationalFunction two_minus = RationalFunction::constant(BigRat(2)) - mu;
    for (std::size_t j = 1; j < prefix.size(); ++j)
        s = two_minus - s.reciprocal() + sym_drift(prefix[j]);
    return s;
}

} // namespace detail

struct AlgebraicLimit {
    Polynomial defining;            // integer-primitive witness, roots at 0 removed
    BigFloat selected_root;
    RootInterval isolation{};
    double numeric_check = 0;       // finite-k estimate the root was matched against
    double numeric_gap = 0;
    std::vector<BigFloat> candidate_roots;  // every real root of the witness
    bool degenerate = false;        // pure-path boundary: limit 4, no admissible root
    std::string note;
};

struct AlgebraicOptions {
    int k_max = 200;        // horizon for the numeric cross-check
    double tol = 1e-9;
    mpfr_prec_t prec = 256;
};

/// Exact limit equation of a zero-tail spec: S_{k0}(mu) = P/Q built
/// symbolically, then P^2 - (2-mu) P Q + Q^2 = 0. Both fixed-point branches
/// are roots of this squared form; the numeric estimate picks the real one.
inline AlgebraicLimit algebraic_limit(const SequenceSpec& spec,
                                      const AlgebraicOptions& opts = {}) {
    if (spec.tail_kind != TailKind::ZeroTail || spec.closing != ClosingRule::ShiftOfT)
        throw std::domain_error("algebraic_limit requires a zero tail with shift closing");
    if (spec.prefix.size() > 64)
        throw std::domain_error("algebraic_limit caps the prefix at 64 stars");

    RationalFunction s = detail::sym_interior_S(spec.prefix);
    const Polynomial& p = s.num();
    const Polynomial& q = s.den();
    Polynomial two_minus_mu = Polynomial::from_ints({2, -1});
    Polynomial d = p * p - two_minus_mu * (p * q) + q * q;

    AlgebraicLimit out;
    out.defining = d.without_zero_roots().normalized_primitive();

    LimitEstimate est = estimate_limit(spec, opts.k_max, opts.tol);
    out.numeric_check = est.gamma;
    out.numeric_gap = est.cauchy_gap;

    if (out.defining.degree() < 1) {
        out.degenerate = true;
        out.note = "no admissible root: pure-path boundary, radii converge to 4";
        return out;
    }

    auto intervals = isolate_real_roots(out.defining);
    Polynomial sf = square_free_part(out.defining);
    double window = std::max(10 * opts.tol, 4 * est.cauchy_gap);
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        out.candidate_roots.push_back(refine_root_bf(sf, intervals[i], opts.prec));
        double dist = std::abs(out.candidate_roots.back().to_double() - est.gamma);
        if (dist <= window && (!best || dist < std::abs(out.candidate_roots[*best].to_double() -
                                                        est.gamma)))
            best = i;
    }
    if (!best) {
        if (out.defining.degree() >= 1 && est.gamma < 4 + opts.tol * 10) {
            out.degenerate = true;
            out.note = "no admissible root: pure-path boundary, radii converge to 4";
            return out;
        }
        throw InconsistencyError("no real root of the limit equation matches the numeric "
                                 "estimate " + std::to_string(est.gamma));
    }
    out.selected_root = out.candidate_roots[*best];
    out.isolation = intervals[*best];
    return out;
}

/// Limit equation for a constant tail: with drift d(mu) from the tail star
/// and e(mu) = delta(closing) - delta(tail) - 1, the limit solves
/// (sigma + e) (S_entry - sigma^-1) = 0. Each squared factor is formed as a
/// polynomial, and candidate roots are kept only when the unsquared branch
/// equation holds at high precision.
inline AlgebraicLimit constant_tail_limit(const std::vector<Starlike>& prefix,
                                          const Starlike& tail_star,
                                          const Starlike& closing_star,
                                          double window_lo, double window_hi,
                                          const AlgebraicOptions& opts = {}) {
    RationalFunction d = detail::sym_drift(tail_star);
    RationalFunction mu = RationalFunction::x();
    RationalFunction a = RationalFunction::constant(BigRat(2)) - mu + d;
    RationalFunction e = detail::sym_drift(closing_star) - d -
                         RationalFunction::constant(BigRat(1));
    RationalFunction s_entry = prefix.empty()
                                   ? RationalFunction::constant(BigRat(1)) - mu + d
                                   : detail::sym_interior_S(prefix);
    RationalFunction one = RationalFunction::constant(BigRat(1));

    // factor 1: sigma = -e  (fixed-point equation t^2 - A t + 1 = 0)
    RationalFunction f1 = e * e + a * e + one;
    // factor 2: S_entry = sigma'
    RationalFunction f2 = s_entry * s_entry - s_entry * a + one;

    AlgebraicLimit out;
    BigFloat residual_tol = BigFloat::pow2(-static_cast<long>(opts.prec) / 2, opts.prec);

    auto consider = [&](const Polynomial& raw, bool branch_sigma_plus_e) {
        Polynomial witness = raw.without_zero_roots().normalized_primitive();
        if (witness.degree() < 1) return;
        Polynomial sf = square_free_part(witness);
        for (const auto& iv : isolate_real_roots(witness)) {
            BigFloat root = refine_root_bf(sf, iv, opts.prec);
            double rd = root.to_double();
            if (rd < window_lo || rd > window_hi) continue;
            // reject squaring artifacts: the unsquared branch must hold
            BigFloat dv = detail::sym_drift(tail_star).eval(root);
            BigFloat av = 2 - root + dv;
            BigFloat disc2 = av * av - 4;
            if (!(disc2 > 0)) continue;
            BigFloat sg = (av - sqrt(disc2)) / 2;
            BigFloat resid = branch_sigma_plus_e
                                 ? abs(sg + e.eval(root))
                                 : abs(s_entry.eval(root) - 1 / sg);
            if (resid > residual_tol * 1024) continue;
            if (!out.candidate_roots.empty() && root <= out.selected_root) {
                out.candidate_roots.push_back(root);
                continue;
            }
            out.candidate_roots.push_back(root);
            out.selected_root = root;
            out.isolation = iv;
            out.defining = witness;
        }
    };
    consider(f1.num(), true);
    consider(f2.num(), false);

    if (out.candidate_roots.empty())
        throw InconsistencyError("constant_tail_limit: no branch root in the window");
    return out;
}

struct DominatedReport {
    bool pass = true;
    int violation_index = 0;   // first failing star (0 when pass)
    std::string reason;
};

/// Finite-horizon evidence that the spec's sequence is dominated by mu:
/// every interior S_j stays under theta^-1 and every drift sits in
/// [width, mu), including the closing star's.
template <class Real>
DominatedReport dominated_check(const SequenceSpec& spec, const Real& mu, int k) {
    DominatedReport rep;
    FixedPoints<Real> fp = fixed_points(mu);
    Real s = RealOps<Real>::from_long(0, mu);
    for (int j = 1; j <= k; ++j) {
        Starlike star = spec.star_at(j);
        Real d = drift(star, mu);
        if (!star.is_empty() && !(d < mu) ) {
            rep = {false, j, "drift of star " + star.str() + " not below mu"};
            return rep;
        }
        if (!star.is_empty() && d < star.width()) {
            rep = {false, j, "drift below star width"};
            return rep;
        }
        s = (j == 1) ? (1 - mu + d) : (2 - mu - 1 / s + d);
        if (!(s < fp.theta_prime)) {
            rep = {false, j, "S_" + std::to_string(j) + " not below theta^-1"};
            return rep;
        }
    }
    Real dc = drift(spec.closing_at(std::max(k, 2)), mu);
    if (!(dc < mu)) rep = {false, k, "closing-star drift not below mu"};
    return rep;
}

enum class DriftOrdering { ReplacementLarger, ReplacementSmaller, Equal };

struct DriftProbeReport {
    double rho_before = 0, rho_after = 0;
    double delta_before = 0, delta_after = 0;  // drifts at mu = rho_before
    DriftOrdering ordering = DriftOrdering::Equal;
    bool radius_reflects_ordering = true;
};

/// Swap star j0 for `replacement` and compare radii at horizon k. The drift
/// comparison happens at mu = rho(G_k) of the unmodified tree; a strictly
/// larger drift there forces rho_hat >= rho.
inline DriftProbeReport drift_monotonicity_probe(const SequenceSpec& spec, int j0,
                                                 const Starlike& replacement,
                                                 double /*mu*/, int k) {
    if (j0 < 1 || j0 > k) throw std::domain_error("drift probe index out of range");
    LinearTree before = spec.realize_tree(k);
    std::vector<Starlike> stars = before.stars();
    stars[j0 - 1] = replacement;
    LinearTree after{stars};

    DriftProbeReport rep;
    rep.rho_before = radius(before, MatrixKind::Laplacian, 1e-11).value;
    rep.rho_after = radius(after, MatrixKind::Laplacian, 1e-11).value;
    double probe_mu = std::max(rep.rho_before, 4.000001);
    rep.delta_before = drift(before.star(j0), probe_mu);
    rep.delta_after = drift(replacement, probe_mu);
    if (rep.delta_after > rep.delta_before) rep.ordering = DriftOrdering::ReplacementLarger;
    else if (rep.delta_after < rep.delta_before) rep.ordering = DriftOrdering::ReplacementSmaller;
    if (rep.ordering == DriftOrdering::ReplacementLarger)
        rep.radius_reflects_ordering = rep.rho_after >= rep.rho_before - 1e-9;
    else if (rep.ordering == DriftOrdering::Equal)
        rep.radius_reflects_ordering = std::abs(rep.rho_after - rep.rho_before) <= 1e-9;
    return rep;
}

struct ReferenceConstants {
    BigFloat guo_omega;
    BigFloat guo_limit;       // 2 + omega + 1/omega = 4.38+
    BigFloat hoffman_tau;     // golden mean
    BigFloat hoffman_limit;   // sqrt(2 + sqrt(5)) = 2.05+
    std::vector<BigFloat> guo_alpha;          // alpha_0 = 4, alpha_1, ...
    std::vector<BigFloat> hoffman_alpha_bar;  // alpha-bar_1 = 2, ...
};

namespace detail {

/// Unique positive root by sign bisection (the defining polynomials have one
/// coefficient sign change, so exactly one positive root).
inline BigFloat positive_root(const Polynomial& p, mpfr_prec_t prec) {
    BigFloat lo(0.25, prec), hi(1L, prec);
    while (!(p.eval(hi) > 0)) hi *= 2;
    for (long i = 0; i < static_cast<long>(prec) + 8; ++i) {
        BigFloat mid = (lo + hi) / 2;
        if (mid == lo || mid == hi) break;
        BigFloat v = p.eval(mid);
        if (v.is_zero()) return mid;
        if (v < 0) lo = mid;
        else hi = mid;
    }
    return (lo + hi) / 2;
}

} // namespace detail

/// The classical ladder constants bounding the open territory: the
/// Laplacian-side alpha_n (limit 2 + omega + omega^-1) and the
/// adjacency-side alpha-bar_n (limit sqrt(2+sqrt(5))).
inline ReferenceConstants reference_constants(int n_max, mpfr_prec_t prec = 256) {
    if (n_max < 1) throw std::domain_error("reference_constants requires n_max >= 1");
    ReferenceConstants rc;
    BigFloat t = 3 * sqrt(BigFloat(33, prec));
    rc.guo_omega = (cbrt(19 + t) + cbrt(19 - t) + 1) / 3;
    rc.guo_limit = 2 + rc.guo_omega + 1 / rc.guo_omega;
    rc.hoffman_tau = (1 + sqrt(BigFloat(5, prec))) / 2;
    rc.hoffman_limit = sqrt(2 + sqrt(BigFloat(5, prec)));

    rc.guo_alpha.push_back(BigFloat(4L, prec));
    for (int n = 1; n <= n_max; ++n) {
        // y^(2n+2) - (1 + y^2 + ... + y^(2n-2)) (y+1)^2  via y = sqrt(x)
        std::vector<BigRat> c(2 * n + 3, BigRat(0));
        c[2 * n + 2] = 1;
        for (int i = 0; i < n; ++i) {
            c[2 * i] -= 1;
            c[2 * i + 1] -= 2;
            c[2 * i + 2] -= 1;
        }
        BigFloat y = detail::positive_root(Polynomial(std::move(c)), prec);
        rc.guo_alpha.push_back(2 + y + 1 / y);
    }
    for (int n = 1; n <= n_max; ++n) {
        std::vector<BigRat> c(n + 2, BigRat(0));
        c[n + 1] = 1;
        for (int i = 0; i < n; ++i) c[i] -= 1;
        BigFloat beta = detail::positive_root(Polynomial(std::move(c)), prec);
        BigFloat sq = sqrt(beta);
        rc.hoffman_alpha_bar.push_back(sq + 1 / sq);
    }
    return rc;
}

} // namespace laplim
