#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "laplim/diagonalize.hpp"
#include "laplim/polynomial.hpp"
#include "laplim/rng.hpp"
#include "laplim/spectral.hpp"
#include "laplim/tree_model.hpp"

namespace laplim {

/// 2 + omega + 1/omega, the lower end of the open territory for Laplacian
/// limit points (omega from the cubic radical expression).
inline BigFloat guo_limit_constant(mpfr_prec_t prec = 256) {
    BigFloat t = 3 * sqrt(BigFloat(33, prec));
    BigFloat omega = (cbrt(19 + t) + cbrt(19 - t) + 1) / 3;
    return 2 + omega + 1 / omega;
}

/// sqrt(2 + sqrt(5)), the adjacency-side threshold.
inline BigFloat adjacency_threshold_constant(mpfr_prec_t prec = 256) {
    return sqrt(2 + sqrt(BigFloat(5, prec)));
}

enum class ShearerMode { AdjacencyClassic, LaplacianClassic, GeneralizedRandom };

inline const char* shearer_mode_name(ShearerMode m) {
    switch (m) {
        case ShearerMode::AdjacencyClassic: return "adjacency-classic";
        case ShearerMode::LaplacianClassic: return "laplacian-classic";
        case ShearerMode::GeneralizedRandom: return "generalized-random";
    }
    return "?";
}

enum class StarSelection { MaximizeDrift, UniformRandom, CustomWeights };

struct GeneratorPolicy {
    int max_width = 6;
    int max_height = 2;
    StarSelection selection = StarSelection::MaximizeDrift;
    std::uint64_t rng_seed = 0;
    std::vector<double> weights;  // CustomWeights: parallel to enumerate_stars()
};

template <class Real>
struct ShearerRun {
    ShearerMode mode = ShearerMode::LaplacianClassic;
    Real target{};                      // mu, or lambda in adjacency mode
    bool experimental = false;          // target below the construction's proven domain
    std::vector<Starlike> stars;        // chosen T_j (closing star included at the end)
    std::vector<int> caterpillar;       // r_j for the classic modes
    std::vector<Real> s_trace;          // S_j (R_j in adjacency mode)
    std::vector<Real> radii;            // rho(G_j) for j = first_k..length
    int first_k = 2;

    LinearTree tree() const { return LinearTree(stars); }
};

namespace detail {

/// Floor with a precision sentinel: flags arguments within 2^-40 of an
/// integer, where rounding could have crossed the boundary.
inline long checked_floor(const BigFloat& arg, bool& boundary) {
    static const BigFloat kMargin = BigFloat::pow2(-40, 64);
    BigFloat f = floor(arg);
    BigFloat frac = arg - f;
    if (frac < kMargin || frac > 1 - kMargin) boundary = true;
    return f.to_long();
}

struct ClassicInts {
    std::vector<long> interior_r;   // r_1..r_{k-1}
    std::vector<long> final_r;      // end-rule choice when closing at length j (index j-2)
    bool boundary = false;
};

/// Integer choices of the Laplacian construction, evaluated at `prec` bits.
inline ClassicInts classic_laplacian_ints(const BigFloat& mu, int k, mpfr_prec_t prec) {
    ClassicInts out;
    BigFloat m = mu.round_to(prec);
    BigFloat a = m - 2;
    BigFloat thp = (-a + sqrt(a * a - 4)) / 2;
    BigFloat c = (m - 1) / m;
    BigFloat unit = m / (m - 1);
    BigFloat s(0L, prec);
    for (int j = 1; j < k; ++j) {
        BigFloat base = (j == 1) ? (1 - m) : (2 - m - 1 / s);
        long rj = checked_floor(c * (thp - base), out.boundary);
        out.interior_r.push_back(rj);
        s = base + rj * unit;
        if (j + 1 >= 2) {
            BigFloat end_base = 2 - m - 1 / s;
            long rf = checked_floor(c * (thp + 1 - end_base), out.boundary);
            out.final_r.push_back(rf);
        }
    }
    return out;
}

inline ClassicInts classic_adjacency_ints(const BigFloat& lambda, int k, mpfr_prec_t prec) {
    ClassicInts out;
    BigFloat l = lambda.round_to(prec);
    BigFloat thp = (-l + sqrt(l * l - 4)) / 2;
    BigFloat s(0L, prec);
    for (int j = 1; j <= k; ++j) {
        BigFloat base = (j == 1) ? -l : (-l - 1 / s);
        long rj = checked_floor(l * (thp - base), out.boundary);
        out.interior_r.push_back(rj);
        s = base + rj / l;
    }
    return out;
}

template <class Real>
BigFloat to_bigfloat_exact(const Real& v, mpfr_prec_t prec) {
    if constexpr (RealOps<Real>::is_big) return v.round_to(prec);
    else return BigFloat(v, prec);
}

/// Retry the integer generation at doubled precision while a floor argument
/// sits on an integer boundary. Ties that persist to the cap are accepted
/// as computed.
template <class Gen>
ClassicInts with_floor_escalation(Gen gen, mpfr_prec_t start) {
    mpfr_prec_t prec = start;
    for (;;) {
        ClassicInts ints = gen(prec);
        if (!ints.boundary || prec >= 8192) return ints;
        prec *= 2;
    }
}

} // namespace detail

/// The caterpillar construction for a Laplacian target: maximal leaf counts
/// keeping every S_j at or below theta', with the "+1" variant floor at the
/// closing star only.
template <class Real>
ShearerRun<Real> classic_laplacian(const Real& mu, int k) {
    if (!(mu > 4)) throw std::domain_error("classic_laplacian requires mu > 4");
    if (k < 2) throw std::domain_error("classic_laplacian requires k >= 2");
    mpfr_prec_t base_prec = std::max<mpfr_prec_t>(256, RealOps<Real>::precision(mu));
    BigFloat mu_bf = detail::to_bigfloat_exact(mu, base_prec);
    detail::ClassicInts ints = detail::with_floor_escalation(
        [&](mpfr_prec_t p) { return detail::classic_laplacian_ints(mu_bf, k, p); }, base_prec);

    ShearerRun<Real> run;
    run.mode = ShearerMode::LaplacianClassic;
    run.target = mu;
    run.experimental = mu_bf < guo_limit_constant() - BigFloat::pow2(-40, 64);
    run.first_k = 2;
    for (long r : ints.interior_r) run.caterpillar.push_back(static_cast<int>(r));
    run.caterpillar.push_back(static_cast<int>(ints.final_r[k - 2]));
    for (int r : run.caterpillar) run.stars.emplace_back(std::vector<int>(r, 1));

    // trace in the caller's backend
    Real unit = mu / (mu - 1);
    Real s = RealOps<Real>::from_long(0, mu);
    for (int j = 1; j <= k; ++j) {
        Real base = (j == 1) ? (1 - mu) : (2 - mu - 1 / s);
        if (j == k) base -= 1;
        s = base + run.caterpillar[j - 1] * unit;
        run.s_trace.push_back(s);
    }
    // radii of the construction closed at every length
    Real tol = RealOps<Real>::default_radius_tol(mu);
    for (int j = 2; j <= k; ++j) {
        std::vector<int> r(run.caterpillar.begin(), run.caterpillar.begin() + (j - 1));
        r.push_back(static_cast<int>(ints.final_r[j - 2]));
        run.radii.push_back(radius(from_caterpillar(r), MatrixKind::Laplacian, tol).value);
    }
    return run;
}

/// The original caterpillar construction for an adjacency target; no end
/// correction (the adjacency diagonal is zero everywhere).
template <class Real>
ShearerRun<Real> classic_adjacency(const Real& lambda, int k) {
    mpfr_prec_t base_prec = std::max<mpfr_prec_t>(256, RealOps<Real>::precision(lambda));
    BigFloat lam_bf = detail::to_bigfloat_exact(lambda, base_prec);
    if (lam_bf < adjacency_threshold_constant() - BigFloat::pow2(-40, 64))
        throw std::domain_error("classic_adjacency requires lambda >= sqrt(2+sqrt(5))");
    if (k < 2) throw std::domain_error("classic_adjacency requires k >= 2");
    detail::ClassicInts ints = detail::with_floor_escalation(
        [&](mpfr_prec_t p) { return detail::classic_adjacency_ints(lam_bf, k, p); }, base_prec);

    ShearerRun<Real> run;
    run.mode = ShearerMode::AdjacencyClassic;
    run.target = lambda;
    run.first_k = 2;
    for (long r : ints.interior_r) run.caterpillar.push_back(static_cast<int>(r));
    for (int r : run.caterpillar) run.stars.emplace_back(std::vector<int>(r, 1));

    Real s = RealOps<Real>::from_long(0, lambda);
    for (int j = 1; j <= k; ++j) {
        Real base = (j == 1) ? -lambda : (-lambda - 1 / s);
        s = base + run.caterpillar[j - 1] / lambda;
        run.s_trace.push_back(s);
    }
    Real tol = RealOps<Real>::default_radius_tol(lambda);
    for (int j = 2; j <= k; ++j) {
        std::vector<int> r(run.caterpillar.begin(), run.caterpillar.begin() + j);
        run.radii.push_back(radius(from_caterpillar(r), MatrixKind::Adjacency, tol).value);
    }
    return run;
}

/// All stars with width <= max_width and height <= max_height, the empty star
/// first, then ordered by (width, height, path-length tuple).
inline std::vector<Starlike> enumerate_stars(int max_width, int max_height) {
    std::vector<Starlike> out;
    out.push_back(Starlike::empty());
    std::vector<int> cur;
    auto rec = [&](auto&& self, int lo) -> void {
        if (!cur.empty()) out.emplace_back(cur);
        if (static_cast<int>(cur.size()) == max_width) return;
        for (int q = lo; q <= max_height; ++q) {
            cur.push_back(q);
            self(self, q);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    std::stable_sort(out.begin(), out.end(), [](const Starlike& a, const Starlike& b) {
        if (a.width() != b.width()) return a.width() < b.width();
        if (a.height() != b.height()) return a.height() < b.height();
        return a.path_lengths() < b.path_lengths();
    });
    return out;
}

/// Grow a linear-tree sequence toward mu: at each step admit any star whose
/// drift keeps the running value strictly under theta^-1, and close with
/// C_k = T_k. The empty star is always admissible, so the process never
/// stalls.
template <class Real>
ShearerRun<Real> generalized_random(const Real& mu, int k, const GeneratorPolicy& policy) {
    if (!(mu > 4)) throw std::domain_error("generalized_random requires mu > 4");
    if (k < 1) throw std::domain_error("generalized_random requires k >= 1");
    if (policy.max_width < 0) throw std::domain_error("max_width must be nonnegative");

    std::vector<Starlike> candidates = enumerate_stars(policy.max_width, policy.max_height);
    if (policy.selection == StarSelection::CustomWeights &&
        policy.weights.size() != candidates.size())
        throw std::domain_error("weights must match the enumerated star set (size " +
                                std::to_string(candidates.size()) + ")");
    std::vector<Real> drifts;
    drifts.reserve(candidates.size());
    for (const auto& st : candidates) drifts.push_back(drift(st, mu));

    FixedPoints<Real> fp = fixed_points(mu);
    const Real& thp = fp.theta_prime;

    ShearerRun<Real> run;
    run.mode = ShearerMode::GeneralizedRandom;
    run.target = mu;
    run.experimental = detail::to_bigfloat_exact(mu, 256) <
                       guo_limit_constant() - BigFloat::pow2(-40, 64);
    run.first_k = 1;

    Real s = RealOps<Real>::from_long(0, mu);
    for (int j = 1; j <= k; ++j) {
        Real base = (j == 1) ? (1 - mu) : (2 - mu - 1 / s);
        std::vector<std::size_t> admissible;
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (base + drifts[i] < thp) admissible.push_back(i);
        std::size_t pick = admissible.front();  // the empty star
        switch (policy.selection) {
            case StarSelection::MaximizeDrift:
                for (std::size_t i : admissible)
                    if (drifts[i] > drifts[pick]) pick = i;
                break;
            case StarSelection::UniformRandom: {
                SplitMix64 stream = rng_stream(policy.rng_seed, static_cast<std::uint64_t>(j));
                pick = admissible[stream.next_below(admissible.size())];
                break;
            }
            case StarSelection::CustomWeights: {
                SplitMix64 stream = rng_stream(policy.rng_seed, static_cast<std::uint64_t>(j));
                double total = 0;
                for (std::size_t i : admissible) total += policy.weights[i];
                double u = stream.next_unit() * total;
                for (std::size_t i : admissible) {
                    u -= policy.weights[i];
                    pick = i;
                    if (u <= 0) break;
                }
                break;
            }
        }
        run.stars.push_back(candidates[pick]);
        s = base + drifts[pick];
        run.s_trace.push_back(s);
    }
    Real tol = RealOps<Real>::default_radius_tol(mu);
    for (int j = 1; j <= k; ++j) {
        LinearTree g(std::vector<Starlike>(run.stars.begin(), run.stars.begin() + j));
        run.radii.push_back(radius(g, MatrixKind::Laplacian, tol).value);
    }
    return run;
}

/// The interval on which the caterpillar construction freezes: endpoints are
/// the largest roots of x^2-5x-2 and 2x^4-14x^3+19x^2-10x-1.
struct NastyInterval {
    Polynomial lower_poly;
    Polynomial upper_poly;
    BigFloat mu_star;
    BigFloat mu_star_upper;
};

inline NastyInterval nasty_interval(mpfr_prec_t prec = 256) {
    NastyInterval ni;
    ni.lower_poly = Polynomial::from_ints({-2, -5, 1});
    ni.upper_poly = Polynomial::from_ints({-1, -10, 19, -14, 2});
    ni.mu_star = largest_real_root(ni.lower_poly, prec).first;
    ni.mu_star_upper = largest_real_root(ni.upper_poly, prec).first;
    return ni;
}

/// Inside [mu*, mu*_upper] the classic construction must produce
/// [3,1,...,1,2] at every length; check it at length k.
template <class Real>
bool verify_nasty(const Real& mu, int k) {
    if (k < 3) throw std::domain_error("verify_nasty requires k >= 3");
    static const BigFloat slack = BigFloat::pow2(-46, 64);
    NastyInterval ni = nasty_interval();
    BigFloat mu_bf = detail::to_bigfloat_exact(mu, 256);
    if (mu_bf < ni.mu_star - slack || mu_bf > ni.mu_star_upper + slack)
        throw std::domain_error("verify_nasty requires mu in [mu*, mu*_upper]");
    ShearerRun<Real> run = classic_laplacian(mu, k);
    if (run.caterpillar.front() != 3 || run.caterpillar.back() != 2) return false;
    for (int j = 1; j + 1 < k; ++j)
        if (run.caterpillar[j] != 1) return false;
    return true;
}

} // namespace laplim
