#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "laplim/diagonalize.hpp"
#include "laplim/errors.hpp"
#include "laplim/limits.hpp"
#include "laplim/numeric.hpp"
#include "laplim/spectral.hpp"

namespace laplim {

/// b_j along one attached path together with its first two derivatives in
/// epsilon at epsilon = 0 (mu_eps = mu - eps):
///   b'_j = 1 + b'_{j-1} / b_{j-1}^2,                      b'_1 = 1
///   b''_j = -2 (b'_{j-1})^2 / b_{j-1}^3 + b''_{j-1} / b_{j-1}^2,  b''_1 = 0
template <class Real>
struct PathDerivatives {
    std::vector<Real> b, b1, b2;  // index j-1
};

template <class Real>
PathDerivatives<Real> path_derivatives(int q, const Real& mu) {
    if (!(mu > 4)) throw std::domain_error("path_derivatives requires mu > 4");
    if (q < 1) throw std::domain_error("path_derivatives requires q >= 1");
    if constexpr (!RealOps<Real>::is_big) {
        if (q > 64)
            throw std::domain_error("path_derivatives needs the big-float backend for q > 64");
    }
    PathDerivatives<Real> out;
    out.b.push_back(1 - mu);
    out.b1.push_back(RealOps<Real>::from_long(1, mu));
    out.b2.push_back(RealOps<Real>::from_long(0, mu));
    for (int j = 2; j <= q; ++j) {
        Real bp = out.b.back();
        Real b1p = out.b1.back();
        Real b2p = out.b2.back();
        Real sq = bp * bp;
        out.b.push_back(2 - mu - 1 / bp);
        out.b1.push_back(1 + b1p / sq);
        out.b2.push_back(-2 * (b1p * b1p) / (sq * bp) + b2p / sq);
    }
    // interval check: the closed-form bounds must hold, else the backend has
    // lost the recurrence
    FixedPoints<Real> fp = fixed_points(mu);
    Real cap = 1 / (1 - 1 / (fp.theta * fp.theta));
    Real slack = RealOps<Real>::epsilon(mu) * 64;
    for (const Real& v : out.b1)
        if (v < 1 - slack || v > cap * (1 + slack))
            throw PrecisionCapReached("path_derivatives: b' bound violated; raise precision");
    for (const Real& v : out.b2)
        if (v < -slack)
            throw PrecisionCapReached("path_derivatives: b'' went negative; raise precision");
    return out;
}

/// delta'(T, mu) = sum over paths of b'_q / b_q^2; zero for the empty star.
template <class Real>
struct DriftDerivative {
    Real value;
    std::vector<Real> per_path;
};

template <class Real>
DriftDerivative<Real> drift_derivative(const Starlike& t, const Real& mu) {
    if (!(mu > 4)) throw std::domain_error("drift_derivative requires mu > 4");
    DriftDerivative<Real> out{RealOps<Real>::from_long(0, mu), {}};
    for (int q : t.path_lengths()) {
        PathDerivatives<Real> pd = path_derivatives(q, mu);
        Real term = pd.b1.back() / (pd.b.back() * pd.b.back());
        out.per_path.push_back(term);
        out.value += term;
    }
    return out;
}

enum class Verdict { ConvergesToMu, StalledBelow };

/// Streams of the linearized root bounds along a spec at a target mu:
///   A_j = 1 + delta'(T_j),  B_j = 1/S_j^2,  X_j = A_j + B_{j-1} X_{j-1}
///   alpha_j = -S_j / X_j  (the root of the tangent line of g_j at 0).
/// Entries 1..k are the interior stream; the index-k values with the closing
/// star's drift and the -1 end term are kept separately.
struct Certificate {
    BigFloat mu;
    int k = 0;
    std::vector<BigFloat> S, A, B, X, alpha;   // interior stream, index j-1
    BigFloat S_closing, X_closing, alpha_closing;
    Verdict verdict = Verdict::ConvergesToMu;
    BigFloat verdict_evidence;   // final alpha (converging) or plateau value (stalled)
    unsigned precision_bits = 0;
};

struct CertificateOptions {
    mpfr_prec_t start_prec = 256;
    mpfr_prec_t max_prec = 8192;
    bool escalate = true;
};

namespace detail {

inline Certificate alpha_certificate_at(const SequenceSpec& spec, const BigFloat& mu_in, int k,
                                        mpfr_prec_t prec, bool& underflow) {
    BigFloat mu = mu_in.round_to(prec);
    Certificate cert;
    cert.mu = mu;
    cert.k = k;
    cert.precision_bits = static_cast<unsigned>(prec);
    BigFloat tiny = BigFloat::pow2(-static_cast<long>(prec) / 4, prec);

    BigFloat s(0L, prec), x(0L, prec);
    for (int j = 1; j <= k; ++j) {
        Starlike star = spec.star_at(j);
        BigFloat d = drift(star, mu);
        BigFloat a = 1 + drift_derivative(star, mu).value;
        if (j == 1) {
            s = 1 - mu + d;
            x = a;
        } else {
            BigFloat b_prev = 1 / (s * s);
            cert.B.push_back(b_prev);
            s = 2 - mu - 1 / s + d;
            x = a + b_prev * x;
        }
        cert.S.push_back(s);
        cert.A.push_back(a);
        cert.alpha.push_back(-s / x);
        cert.X.push_back(x);
        if (abs(cert.alpha.back()) < tiny) underflow = true;
        if (!(s < 0))
            throw InconsistencyError(
                "alpha_certificate: S_" + std::to_string(j) +
                " is not negative; the spec is not dominated by mu");
    }
    // closing values at index k (C_k drift, -1 end term)
    if (k >= 2) {
        Starlike closing = spec.closing_at(k);
        BigFloat d = drift(closing, mu);
        BigFloat a = 1 + drift_derivative(closing, mu).value;
        const BigFloat& s_prev = cert.S[k - 2];
        cert.S_closing = -1 + (2 - mu - 1 / s_prev) + d;
        cert.X_closing = a + cert.X[k - 2] / (s_prev * s_prev);
        cert.alpha_closing = -cert.S_closing / cert.X_closing;
    } else {
        cert.S_closing = cert.S[0];
        cert.X_closing = cert.X[0];
        cert.alpha_closing = cert.alpha[0];
    }
    return cert;
}

inline void classify_certificate(Certificate& cert) {
    const auto& a = cert.alpha;
    int k = static_cast<int>(a.size());
    int lag = std::max(k / 10, 1);
    if (k >= 2) {
        BigFloat rel = abs(a[k - 1] - a[k - 1 - lag]);
        if (!a[k - 1].is_zero() && rel < abs(a[k - 1]) * 1e-9) {
            cert.verdict = Verdict::StalledBelow;
            cert.verdict_evidence = a[k - 1];
            return;
        }
    }
    cert.verdict = Verdict::ConvergesToMu;
    cert.verdict_evidence = a[k - 1];
}

} // namespace detail

/// Compute the certificate streams, doubling the working precision while any
/// alpha_j underflows the backend's resolution (cap per options).
inline Certificate alpha_certificate(const SequenceSpec& spec, const BigFloat& mu, int k,
                                     const CertificateOptions& opts = {}) {
    if (k < 1) throw std::domain_error("alpha_certificate requires k >= 1");
    mpfr_prec_t prec = std::max(opts.start_prec, static_cast<mpfr_prec_t>(64));
    for (;;) {
        bool underflow = false;
        Certificate cert = detail::alpha_certificate_at(spec, mu, k, prec, underflow);
        if (!underflow || !opts.escalate) {
            detail::classify_certificate(cert);
            return cert;
        }
        if (prec >= opts.max_prec)
            throw PrecisionCapReached("alpha_certificate: precision cap " +
                                      std::to_string(opts.max_prec) +
                                      " reached with underflowing alpha");
        prec *= 2;
    }
}

/// Full S_j(eps) recurrence at mu_eps = mu - eps (paths, drifts and the main
/// recurrence all re-evaluated). `closing` selects the end-adjusted g_k.
/// `valid` (when requested) reports whether every earlier stream value
/// stayed negative: g_j is only the diagonalization value while it does.
inline BigFloat g_eval(const SequenceSpec& spec, const BigFloat& mu, int j, const BigFloat& eps,
                       bool closing, bool* valid = nullptr) {
    BigFloat mu_eps = mu - eps;
    BigFloat s(0L, mu.prec());
    if (valid) *valid = true;
    for (int i = 1; i <= j; ++i) {
        Starlike star = (closing && i == j) ? spec.closing_at(j) : spec.star_at(i);
        BigFloat d = drift(star, mu_eps);
        if (i == 1) s = 1 - mu_eps + d;
        else s = 2 - mu_eps - 1 / s + d;
        if (closing && i == j && j >= 2) s -= 1;
        if (valid && i < j && !(s < 0)) *valid = false;
    }
    return s;
}

/// Roots eps_j of g_j(eps) = 0 on (0, mu - 4) for the requested indices.
///
/// g_j increases with slope >= 1 on its domain [0, eps_{j-1}), blowing up at
/// the far end where g_{j-1} crosses zero. Bisection therefore classifies a
/// probe as "high" when either some earlier stream value has gone
/// nonnegative (past the pole) or g_j itself is nonnegative. Budget: 200
/// halvings. Indices whose root lies past mu - 4 (where the backend's
/// mu_eps > 4 domain ends) are skipped.
inline std::vector<std::pair<int, BigFloat>> epsilon_sequence(
    const SequenceSpec& spec, const BigFloat& mu, int k, const std::vector<int>& j_list,
    mpfr_prec_t prec = 256) {
    std::vector<std::pair<int, BigFloat>> out;
    BigFloat mu_p = mu.round_to(prec);
    BigFloat margin = BigFloat::pow2(-static_cast<long>(prec) / 2, prec);
    for (int j : j_list) {
        if (j < 1 || j > k) throw std::domain_error("epsilon index out of range");
        bool closing = (j == k && k >= 2);
        bool valid0 = true;
        BigFloat g0 = g_eval(spec, mu_p, j, BigFloat(0L, prec), closing, &valid0);
        if (!valid0 || !(g0 < 0))
            throw InconsistencyError("epsilon_sequence: the stream is nonnegative at eps=0 "
                                     "by index " + std::to_string(j) +
                                     "; the spec is not dominated by mu");
        BigFloat hi = mu_p - 4 - margin;
        if (!(hi > 0)) continue;
        bool valid_top = true;
        BigFloat gtop = g_eval(spec, mu_p, j, hi, closing, &valid_top);
        if (valid_top && gtop < 0) continue;  // root beyond the mu_eps > 4 domain
        BigFloat lo(0L, prec);
        for (int it = 0; it < 200; ++it) {
            BigFloat mid = (lo + hi) / 2;
            if (mid == lo || mid == hi) break;
            bool valid = true;
            BigFloat v = g_eval(spec, mu_p, j, mid, closing, &valid);
            if (valid && v.is_zero()) { lo = hi = mid; break; }
            if (valid && v < 0) lo = mid;
            else hi = mid;
        }
        out.emplace_back(j, (lo + hi) / 2);
    }
    return out;
}

struct XGrowthReport {
    std::vector<BigFloat> X;             // recurrence values (interior stream)
    std::vector<BigFloat> X_closed_sum;  // independent evaluation of the explicit sum
    bool divergence_evidence = false;
    BigFloat sup_estimate;               // largest X seen (the bound when not divergent)
    BigFloat growth_ratio;               // X_k / X_{k-lag}
};

/// X_j by the recurrence, cross-checked against the closed sum
/// X_j = sum_m A_m prod_{n=m}^{j-1} B_n. Divergence is reported as evidence
/// only: X exceeding `threshold`, or sustained growth over the last tenth of
/// the run.
inline XGrowthReport x_growth(const SequenceSpec& spec, const BigFloat& mu, int k,
                              mpfr_prec_t prec = 256, double threshold = 1e12) {
    Certificate cert = alpha_certificate(spec, mu, k, {prec, prec, false});
    XGrowthReport rep;
    rep.X = cert.X;
    // closed sum, evaluated backward so each prefix product is reused
    rep.X_closed_sum.assign(cert.X.size(), BigFloat(0L, prec));
    for (int j = 1; j <= k; ++j) {
        BigFloat sum(0L, prec), prod(1L, prec);
        for (int m = j; m >= 1; --m) {
            sum += cert.A[m - 1] * prod;
            if (m >= 2) prod *= cert.B[m - 2];
        }
        rep.X_closed_sum[j - 1] = sum;
    }
    rep.sup_estimate = rep.X[0];
    for (const auto& x : rep.X)
        if (x > rep.sup_estimate) rep.sup_estimate = x;
    int lag = std::max(k / 10, 1);
    rep.growth_ratio = (k >= 2) ? rep.X[k - 1] / rep.X[k - 1 - lag] : BigFloat(1L, prec);
    rep.divergence_evidence =
        rep.X[k - 1] > BigFloat(threshold, prec) || rep.growth_ratio > 1 + 1e-6;
    return rep;
}

} // namespace laplim
