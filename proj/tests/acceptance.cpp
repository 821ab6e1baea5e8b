// Acceptance suite: every numbered criterion runs at its stated tolerance
// and reports one PASS/FAIL line.

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "laplim/experiments.hpp"
#include "laplim/expr.hpp"
#include "laplim/limits.hpp"
#include "laplim/rational.hpp"
#include "laplim/shearer.hpp"
#include "laplim/spectral.hpp"
#include "laplim/variational.hpp"
#include "test_util.hpp"

using namespace laplim;

TEST_SUITE_BEGIN("acceptance");

namespace {

struct Criterion {
    int id;
    std::string label;
    bool ok = true;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            std::printf("    failed: %s\n", what.c_str());
        }
        CHECK_MESSAGE(cond, label, ": ", what);
    }

    ~Criterion() {
        std::printf("[criterion %2d] %s - %s\n", id, ok ? "PASS" : "FAIL", label.c_str());
        std::fflush(stdout);
    }
};

/// rho printed as a truncated decimal with a trailing '+': printed <= rho <
/// printed + one unit in the last printed place.
bool matches_printed(double rho, const std::string& printed) {
    double v = std::stod(printed);
    auto dot = printed.find('.');
    int decimals = dot == std::string::npos ? 0 : static_cast<int>(printed.size() - dot - 1);
    double unit = std::pow(10.0, -decimals);
    return rho >= v - 1e-12 && rho < v + unit;
}

} // namespace

TEST_CASE("1: classic generator reproduction") {
    Criterion c{1, "classic run at 5.4, k=11: caterpillar and trace values"};
    auto run = classic_laplacian(5.4, 11);
    c.require(run.caterpillar == std::vector<int>{3, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2},
              "r = [3,1,1,1,1,1,1,1,1,1,2]");
    c.require(std::abs(run.s_trace[0] - (-0.718181818)) < 1e-8, "S_1 = -0.718181818 (1e-8)");
    c.require(std::abs(run.s_trace[9] - (-1.503801894)) < 1e-8, "S_10 = -1.503801894 (1e-8)");
}

TEST_CASE("2: nasty-interval constants") {
    Criterion c{2, "mu* and mu*_upper as exact polynomial roots"};
    auto ni = nasty_interval(256);
    BigFloat exact = (5 + sqrt(BigFloat(33, 256))) / 2;
    c.require(abs(ni.mu_star - exact) < BigFloat(1e-12, 256), "mu* = (5+sqrt(33))/2 (1e-12)");
    c.require(ni.mu_star_upper.str(5).substr(0, 6) == "5.4207", "mu*_upper starts 5.4207");
    c.require(abs(ni.upper_poly.eval(ni.mu_star_upper)) < BigFloat(1e-20, 256),
              "residual of 2x^4-14x^3+19x^2-10x-1 below 1e-20 at 256 bits");
}

TEST_CASE("3: nasty-interval invariance") {
    Criterion c{3, "20 targets inside the interval all freeze to [3,1,...,1,2] at k=50"};
    auto ni = nasty_interval();
    double lo = ni.mu_star.to_double() + 1e-6, hi = ni.mu_star_upper.to_double() - 1e-6;
    for (int i = 0; i < 20; ++i) {
        double mu = lo + (hi - lo) * i / 19.0;
        c.require(verify_nasty(mu, 50), "frozen at mu = " + std::to_string(mu));
    }
}

TEST_CASE("4: recorded radii tables") {
    Criterion c{4, "printed radii of the two recorded runs"};
    SequenceSpec rec = fixtures::recorded_run_54();
    auto est = estimate_limit(rec, 5, 1e-10);
    c.require(std::abs(est.radii[0] - 2.0) < 1e-9, "rho(G_1) = 2");
    const char* printed1[] = {"4.302775", "5.236067", "5.3817984", "5.397488988"};
    for (int k = 2; k <= 5; ++k)
        c.require(matches_printed(est.radii[k - 1], printed1[k - 2]),
                  std::string("first run rho(G_") + std::to_string(k) + ") = " +
                      printed1[k - 2] + "+");

    GeneratorPolicy policy;
    policy.max_height = 2;
    policy.max_width = 8;
    policy.selection = StarSelection::MaximizeDrift;
    auto run = generalized_random(5.4, 100, policy);
    const char* printed2[] = {"4.4142", "5.2360", "5.3105", "5.3325", "5.3423"};
    for (int k = 1; k <= 5; ++k)
        c.require(matches_printed(run.radii[k - 1], printed2[k - 1]),
                  std::string("max-drift rho(G_") + std::to_string(k) + ") = " +
                      printed2[k - 1] + "+");
    c.require(matches_printed(run.radii[99], "5.3554"), "max-drift rho(G_100) = 5.3554+");
}

TEST_CASE("5: non-monotone pair is flagged") {
    Criterion c{5, "radius drop of the recorded counterexample family"};
    double r2 = radius(parse_linear_tree("[[1,1],[1,1,1,1]]"), MatrixKind::Laplacian, 1e-10).value;
    double r3 = radius(parse_linear_tree("[[1,1],[1,1],[0]]"), MatrixKind::Laplacian, 1e-10).value;
    c.require(std::abs(r2 - 6.141336) < 5e-7, "rho([[1,1],[1,1,1,1]]) = 6.141336 (6 decimals)");
    c.require(std::abs(r3 - 5.261802) < 5e-7, "rho([[1,1],[1,1],[0]]) = 5.261802 (6 decimals)");
    SequenceSpec bad;
    bad.prefix = {Starlike({1, 1}), Starlike({1, 1}), Starlike({1, 1})};
    bad.closing = ClosingRule::ExplicitList;
    bad.closing_list = {Starlike({1, 1, 1, 1}), Starlike::empty()};
    bool flagged = false;
    try {
        estimate_limit(bad, 4);
    } catch (const MonotonicityError&) {
        flagged = true;
    }
    c.require(flagged, "estimate_limit raises the monotonicity violation");
}

TEST_CASE("6: spider family") {
    Criterion c{6, "[[0]^8,[1,8]] radius and the cubic-root family limit"};
    double r9 = radius(one_k_k_family(9).realize_tree(9), MatrixKind::Laplacian, 1e-10).value;
    c.require(std::abs(r9 - 4.3829331) < 5e-8, "rho = 4.3829331 (7 digits)");
    BigFloat eps = largest_real_root(Polynomial::from_ints({-4, -4, 0, 1}), 128).first;
    auto est = estimate_limit(one_k_k_family(60), 60, 1e-10);
    c.require(std::abs(est.gamma - (2 + eps.to_double())) < 1e-6,
              "limit = 2 + root(x^3-4x-4) within 1e-6 at k <= 60");
}

TEST_CASE("7: frozen-family convergence") {
    Criterion c{7, "rho of the depth-200 frozen caterpillar vs mu*"};
    std::vector<int> r{3};
    r.insert(r.end(), 198, 1);
    r.push_back(2);
    double rho = radius(from_caterpillar(r), MatrixKind::Laplacian, 1e-10).value;
    c.require(std::abs(rho - nasty_interval().mu_star.to_double()) < 1e-6,
              "|rho(G_200) - mu*| < 1e-6");
}

TEST_CASE("8: deep certificate at the exact endpoint") {
    Criterion c{8, "alpha stream at mu = (5+sqrt(33))/2 down to 1e-63"};
    auto t0 = std::chrono::steady_clock::now();
    BigFloat mus = parse_real_expr("(5+sqrt(33))/2", 1024);
    Certificate cert = alpha_certificate(fixtures::lemma34(), mus, 190);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(cert.precision_bits >= 512, "backend escalated to >= 512 bits");
    auto rel = [&](int j, double want) {
        return std::abs(cert.alpha[j - 1].to_double() - want) / want;
    };
    c.require(rel(1, 0.5930703308) < 1e-8, "alpha_1 (rel 1e-8)");
    c.require(rel(10, 3.726377e-4) < 1e-5, "alpha_10 (rel 1e-5)");
    c.require(rel(100, 1.33485599e-33) < 1e-6, "alpha_100 (rel 1e-6)");
    c.require(rel(190, 4.78412668e-63) < 1e-6, "alpha_190 (rel 1e-6)");
    c.require(secs < 10.0, "runtime under 10 s");
}

TEST_CASE("9: stall plateau digits") {
    Criterion c{9, "alpha plateau at 5.4 to 15 significant digits"};
    Certificate cert = alpha_certificate(fixtures::lemma34(), BigFloat(5.4, 256), 100);
    BigFloat plateau = BigFloat::parse("0.807268557543452357547180905158", 256);
    // one unit in the 15th significant digit
    BigFloat tol = plateau * 1e-14;
    c.require(abs(cert.alpha[49] - plateau) < tol, "alpha_50 within one 15th-digit unit");
    c.require(abs(cert.alpha[99] - plateau) < tol, "alpha_100 within one 15th-digit unit");
    c.require(cert.verdict == Verdict::StalledBelow, "verdict is stalled-below");
}

TEST_CASE("10: genetic-search spec check") {
    Criterion c{10, "29-term recorded stream: alpha_29 and the closing radius"};
    SequenceSpec spec = fixtures::genetic29();
    Certificate cert = alpha_certificate(spec, BigFloat(5.4, 256), 29);
    double a29 = cert.alpha[28].to_double();
    c.require(std::abs(a29 - 1.005914e-4) / 1.005914e-4 < 1e-4, "alpha_29 (rel 1e-4)");
    // the recorded radius closes the 29-term stream with its shift star
    BigFloat rho = radius(spec.realize_tree(30), MatrixKind::Laplacian,
                          BigFloat::pow2(-80, 256)).value;
    c.require(abs(rho - BigFloat::parse("5.399999999963451", 256)) < BigFloat(1e-12, 256),
              "rho = 5.399999999963451 (1e-12)");
}

TEST_CASE("11: oracle equivalence, property-based") {
    Criterion c{11, "congruence counts and bisection radii vs the exact oracle"};
    SplitMix64 rng(20250810);
    int mismatches = 0;
    for (int trial = 0; trial < 500; ++trial) {
        int n = 2 + static_cast<int>(rng.next_below(11));
        MatrixKind kind = (trial % 3 == 0) ? MatrixKind::Adjacency : MatrixKind::Laplacian;
        RootedTree t = testutil::random_rooted_tree(n, rng, kind);
        Polynomial cp = char_polynomial(t, kind);
        for (int p = 0; p < 50; ++p) {
            BigRat probe = make_rat(static_cast<long>(rng.next_below(8 * n)) - 2 * n,
                                    1 + static_cast<long>(rng.next_below(4)));
            Inertia got = diagonalize_tree<BigRat>(t, -probe).inertia;
            RootCounts want = root_counts(cp, probe);
            if (got.below != want.below || got.equal != want.equal || got.above != want.above)
                ++mismatches;
        }
    }
    c.require(mismatches == 0, "500 trees x 50 probes: zero inertia mismatches");

    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
        LinearTree g = testutil::random_linear_tree_capped(rng, 40);
        double fast = radius(g, MatrixKind::Laplacian, 1e-12).value;
        double slow = oracle_radius(realize(g, MatrixKind::Laplacian),
                                    MatrixKind::Laplacian).value.to_double();
        worst = std::max(worst, std::abs(fast - slow));
    }
    c.require(worst < 1e-9, "200 linear trees <= 40 vertices: radius within 1e-9 of oracle "
                            "(worst " + std::to_string(worst) + ")");
}

TEST_CASE("12: structural invariants, property-based") {
    Criterion c{12, "dominated-run invariants over random targets"};
    SplitMix64 rng(424242);
    int spot_checked = 0;
    bool all_s = true, all_drift = true, all_alpha = true, all_eps = true;
    for (int trial = 0; trial < 1000; ++trial) {
        double mu = 4.4 + rng.next_unit() * 3.6;
        GeneratorPolicy policy;
        policy.max_width = 3;
        policy.max_height = 2;
        policy.selection = StarSelection::UniformRandom;
        policy.rng_seed = rng.next();
        int k = 4 + static_cast<int>(rng.next_below(12));
        auto run = generalized_random(mu, k, policy);
        double thp = fixed_points(mu).theta_prime;
        for (int j = 0; j < k; ++j) {
            if (!(run.s_trace[j] < thp)) all_s = false;
            if (!run.stars[j].is_empty() &&
                !(drift(run.stars[j], mu) > run.stars[j].width()))
                all_drift = false;
        }
        SequenceSpec spec = SequenceSpec::zero_tail(run.stars);
        BigFloat mub(mu, 256);
        Certificate cert = alpha_certificate(spec, mub, k, {256, 256, false});
        for (int j = 0; j < k; ++j)
            if (!within_ulps(cert.alpha[j] * cert.X[j], -cert.S[j], 10)) all_alpha = false;
        if (spot_checked < 50 && trial % 20 == 0) {
            int j = 1 + static_cast<int>(rng.next_below(k - 1));
            auto eps = epsilon_sequence(spec, mub, k, {j}, 256);
            for (auto& [ji, e] : eps) {
                ++spot_checked;
                if (!(e < cert.alpha[ji - 1])) all_eps = false;
            }
        }
    }
    c.require(all_s, "every S_j < theta^-1");
    c.require(all_drift, "drift exceeds width on nonempty stars");
    c.require(all_alpha, "alpha_j X_j = -S_j to 10 ulps");
    c.require(all_eps, "eps_j < alpha_j on " + std::to_string(spot_checked) +
                           " spot-checked pairs");
    c.require(spot_checked >= 45, "enough epsilon spot checks ran");

    bool b_bounds = true;
    for (int trial = 0; trial < 500; ++trial) {
        double mu = 4.4 + rng.next_unit() * 3.6;
        int q = 1 + static_cast<int>(rng.next_below(60));
        auto pd = path_derivatives(q, mu);
        double theta = fixed_points(mu).theta;
        double cap = 1 / (1 - 1 / (theta * theta));
        for (double v : pd.b1)
            if (v < 1.0 || v > cap * (1 + 1e-12)) b_bounds = false;
        for (double v : pd.b2)
            if (v < -1e-15) b_bounds = false;
    }
    c.require(b_bounds, "b' in [1, 1/(1-theta^-2)] and b'' >= 0");
}

TEST_CASE("13: reference constants") {
    Criterion c{13, "classical ladders and their limits"};
    ReferenceConstants rc = reference_constants(60);
    c.require(rc.guo_alpha[0] == BigFloat(4L, 256), "alpha_0 = 4 exactly");
    bool increasing = true;
    for (std::size_t i = 1; i < rc.guo_alpha.size(); ++i)
        if (!(rc.guo_alpha[i] > rc.guo_alpha[i - 1])) increasing = false;
    c.require(increasing, "alpha_n strictly increasing for n <= 60");
    c.require(abs(rc.guo_alpha[60] - rc.guo_limit) < BigFloat(1e-6, 256),
              "alpha_60 within 1e-6 of 2 + omega + omega^-1");
    c.require(abs(rc.hoffman_limit - sqrt(2 + sqrt(BigFloat(5, 256)))) < BigFloat(1e-12, 256),
              "hoffman limit = sqrt(2+sqrt(5)) (1e-12)");
}

TEST_CASE("14: bounded-width sampling experiment") {
    Criterion c{14, "3000 samples at depth 100: range and gap envelope"};
    auto t0 = std::chrono::steady_clock::now();
    auto records = sample_f1(3000, 100, 14, 2);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    F1Summary s = f1_summary(records);
    c.require(secs < 300.0, "completed in under 5 minutes (" + std::to_string(secs) + " s)");
    c.require(s.min_radius > 5.0, "all radii above 5");
    c.require(s.max_radius < 5.4208, "all radii below 5.4208");
    c.require(s.min_gap <= 1e-6, "sorted-neighbor min gap <= 1e-6 (" +
                                     std::to_string(s.min_gap) + ")");
    c.require(s.max_gap >= 1e-3, "sorted-neighbor max gap >= 1e-3 (" +
                                     std::to_string(s.max_gap) + ")");
}

TEST_SUITE_END();
