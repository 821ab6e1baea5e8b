#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "laplim/rational.hpp"
#include "laplim/variational.hpp"
#include "test_util.hpp"

using namespace laplim;

TEST_SUITE_BEGIN("variational");

namespace {

/// Exact-rational replica of the certificate streams: S, A, B and X both by
/// recurrence and by the explicit sum. Field operations only, so every value
/// is exact; this is the independent oracle for the float streams.
struct RationalStreams {
    std::vector<BigRat> S, A, B, X, X_sum;
};

BigRat rat_drift(const Starlike& st, const BigRat& mu) {
    BigRat acc(0);
    for (int q : st.path_lengths()) {
        BigRat b = 1 - mu;
        for (int j = 1; j < q; ++j) b = 2 - mu - BigRat(1) / b;
        acc += 1 - BigRat(1) / b;
    }
    return acc;
}

BigRat rat_drift_derivative(const Starlike& st, const BigRat& mu) {
    BigRat acc(0);
    for (int q : st.path_lengths()) {
        BigRat b = 1 - mu, b1 = 1;
        for (int j = 1; j < q; ++j) {
            b1 = 1 + b1 / (b * b);
            b = 2 - mu - BigRat(1) / b;
        }
        acc += b1 / (b * b);
    }
    return acc;
}

RationalStreams rational_streams(const SequenceSpec& spec, const BigRat& mu, int k) {
    RationalStreams rs;
    for (int j = 1; j <= k; ++j) {
        Starlike st = spec.star_at(j);
        BigRat d = rat_drift(st, mu);
        BigRat a = 1 + rat_drift_derivative(st, mu);
        if (j == 1) {
            rs.S.push_back(1 - mu + d);
            rs.X.push_back(a);
        } else {
            rs.B.push_back(BigRat(1) / (rs.S.back() * rs.S.back()));
            rs.S.push_back(2 - mu - BigRat(1) / rs.S.back() + d);
            rs.X.push_back(a + rs.B.back() * rs.X[j - 2]);
        }
        rs.A.push_back(a);
    }
    for (int j = 1; j <= k; ++j) {
        BigRat sum(0), prod(1);
        for (int m = j; m >= 1; --m) {
            sum += rs.A[m - 1] * prod;
            if (m >= 2) prod *= rs.B[m - 2];
        }
        rs.X_sum.push_back(sum);
    }
    return rs;
}

} // namespace

TEST_CASE("path derivatives: base cases and exact second step") {
    auto pd1 = path_derivatives(1, 7.2);
    CHECK(pd1.b1[0] == 1.0);
    CHECK(pd1.b2[0] == 0.0);

    auto pd2 = path_derivatives(2, 5.4);
    CHECK(pd2.b1[1] == doctest::Approx(1 + 1 / (4.4 * 4.4)).epsilon(1e-15));
    // exact-rational oracle for the pair (b_2, b'_2, b''_2)
    BigRat mu = rat_from_double(5.4);
    BigRat b1 = 1 - mu;
    BigRat b2 = 2 - mu - BigRat(1) / b1;
    BigRat b1d = 1 + BigRat(1) / (b1 * b1);
    BigRat b2dd = BigRat(-2) / (b1 * b1 * b1);
    CHECK(pd2.b[1] == doctest::Approx(b2.get_d()).epsilon(1e-15));
    CHECK(pd2.b1[1] == doctest::Approx(b1d.get_d()).epsilon(1e-15));
    CHECK(pd2.b2[1] == doctest::Approx(b2dd.get_d()).epsilon(1e-15));
}

TEST_CASE("path derivative bounds over random grids") {
    SplitMix64 rng(71);
    for (int trial = 0; trial < 80; ++trial) {
        double mu = 4.4 + rng.next_unit() * 3.6;
        int q = 1 + static_cast<int>(rng.next_below(60));
        auto pd = path_derivatives(q, mu);
        double theta = fixed_points(mu).theta;
        double cap = 1 / (1 - 1 / (theta * theta));
        for (double v : pd.b1) {
            CHECK(v >= 1.0);
            CHECK(v <= cap * (1 + 1e-12));
        }
        for (double v : pd.b2) CHECK(v >= -1e-15);
    }
    // deep runs need the big backend
    CHECK_THROWS_AS(path_derivatives(200, 5.4), std::domain_error);
    auto deep = path_derivatives(200, BigFloat(5.4, 256));
    BigFloat theta = fixed_points(BigFloat(5.4, 256)).theta;
    BigFloat cap = 1 / (1 - 1 / (theta * theta));
    CHECK(deep.b1.back() <= cap);
}

TEST_CASE("drift derivative") {
    CHECK(drift_derivative(Starlike::empty(), 6.1).value == 0.0);
    for (double mu : {4.5, 5.4, 8.0}) {
        CHECK(drift_derivative(Starlike({1}), mu).value ==
              doctest::Approx(1 / ((mu - 1) * (mu - 1))).epsilon(1e-14));
    }
    SplitMix64 rng(73);
    for (int trial = 0; trial < 60; ++trial) {
        Starlike st = testutil::random_star(rng, 5, 4);
        double mu = 4.4 + rng.next_unit() * 4;
        double theta = fixed_points(mu).theta;
        double dd = drift_derivative(st, mu).value;
        CHECK(dd >= 0.0);
        CHECK(dd <= st.width() / (theta * theta - 1) + 1e-12);
    }
}

TEST_CASE("certificate reproduces the recorded alpha stream at mu*") {
    BigFloat mus = (5 + sqrt(BigFloat(33, 512))) / 2;
    Certificate cert = alpha_certificate(fixtures::lemma34(), mus, 190);
    CHECK(cert.precision_bits >= 512);
    CHECK(std::abs(cert.alpha[0].to_double() - 0.5930703308) < 0.5930703308 * 1e-8);
    CHECK(std::abs(cert.alpha[9].to_double() - 3.726377e-4) < 3.726377e-4 * 1e-5);
    CHECK(std::abs(cert.alpha[99].to_double() - 1.33485599e-33) < 1.33485599e-33 * 1e-6);
    CHECK(std::abs(cert.alpha[189].to_double() - 4.78412668e-63) < 4.78412668e-63 * 1e-6);
    CHECK(cert.verdict == Verdict::ConvergesToMu);
}

TEST_CASE("certificate stalls above the family's true limit") {
    Certificate cert = alpha_certificate(fixtures::lemma34(), BigFloat(5.4, 256), 100);
    BigFloat plateau = BigFloat::parse("0.807268557543452357547180905158", 256);
    CHECK(abs(cert.alpha[49] - plateau) < plateau * 5e-15);
    CHECK(abs(cert.alpha[99] - plateau) < plateau * 5e-15);
    CHECK(cert.verdict == Verdict::StalledBelow);
}

TEST_CASE("genetic-search stream certificate at 5.4") {
    Certificate cert = alpha_certificate(fixtures::genetic29(), BigFloat(5.4, 256), 29);
    CHECK(std::abs(cert.alpha[28].to_double() - 1.005914e-4) < 1.005914e-4 * 1e-4);
    CHECK(cert.verdict == Verdict::ConvergesToMu);
}

TEST_CASE("float streams match the exact-rational oracle") {
    BigRat mu = rat_from_double(5.4);
    SequenceSpec spec = fixtures::genetic29();
    RationalStreams rs = rational_streams(spec, mu, 25);
    // the two X routes agree exactly in the rationals
    for (int j = 0; j < 25; ++j) CHECK(rs.X[j] == rs.X_sum[j]);
    // alpha X = -S holds exactly by construction; check against the floats.
    // The stream map amplifies rounding by 1/S_j^2 per step, so the float
    // run drifts from the exact one by ~2^30 ulps over 25 steps; demanding
    // agreement to 2^-275 at 320 bits still rules out any real defect.
    Certificate cert = alpha_certificate(spec, BigFloat(5.4, 320), 25, {320, 320, false});
    for (int j = 0; j < 25; ++j) {
        CHECK(within_ulps(cert.S[j], to_bigfloat(rs.S[j], 320), 1L << 45));
        CHECK(within_ulps(cert.X[j], to_bigfloat(rs.X[j], 320), 1L << 45));
        CHECK(within_ulps(cert.alpha[j] * cert.X[j], -cert.S[j], 10));
    }
}

TEST_CASE("tangent-recurrence route gives the same alphas") {
    // alpha_j = -S_j / (beta_j - 1/(S_{j-1} alpha_{j-1})) telescopes to -S/X
    BigFloat mu(5.4, 320);
    Certificate cert = alpha_certificate(fixtures::recorded_run_54(), mu, 40, {320, 320, false});
    BigFloat alpha = cert.alpha[0];
    for (int j = 2; j <= 40; ++j) {
        BigFloat beta = cert.A[j - 1];
        alpha = -cert.S[j - 1] / (beta - 1 / (cert.S[j - 2] * alpha));
        CHECK(within_ulps(alpha, cert.alpha[j - 1], 256));
    }
}

TEST_CASE("epsilon roots: existence, bounds, decrease") {
    BigFloat mus = (5 + sqrt(BigFloat(33, 256))) / 2;
    SequenceSpec spec = fixtures::lemma34();
    Certificate cert = alpha_certificate(spec, mus, 51, {256, 8192, true});
    auto eps = epsilon_sequence(spec, mus, 51, {1, 2, 10, 50}, cert.precision_bits);
    REQUIRE(eps.size() == 4);
    // eps_j < alpha_j, strictly decreasing, trending to zero
    for (auto& [j, e] : eps) {
        CHECK(e > 0);
        CHECK(e < cert.alpha[j - 1]);
    }
    CHECK(eps[1].second < eps[0].second);
    CHECK(eps[2].second < eps[1].second);
    CHECK(eps[3].second < eps[2].second);
    CHECK(eps[3].second < BigFloat(1e-10, 256));

    // convexity witness: g_j(alpha_j) >= 0
    for (int j : {1, 2, 10, 50}) {
        BigFloat g = g_eval(spec, mus, j, cert.alpha[j - 1], false);
        CHECK(g >= -BigFloat::pow2(-200, 256));
    }
}

TEST_CASE("epsilon rejects non-dominated targets") {
    // at mu = 5.36 < mu*, the frozen family's radii exceed mu eventually:
    // g_j(0) >= 0 for some j
    SequenceSpec spec = fixtures::lemma34();
    BigFloat mu(5.36, 256);
    CHECK_THROWS_AS(epsilon_sequence(spec, mu, 60, {60}), InconsistencyError);
}

TEST_CASE("X growth: explicit expansion and divergence evidence") {
    BigFloat mus = (5 + sqrt(BigFloat(33, 256))) / 2;
    SequenceSpec spec = fixtures::lemma34();
    auto rep = x_growth(spec, mus, 60, 256);
    // X_1 = A_1 and the explicit 4-term expansion
    Certificate cert = alpha_certificate(spec, mus, 60, {256, 256, false});
    CHECK(rep.X[0] == cert.A[0]);
    BigFloat x4 = cert.A[3] + cert.A[2] * cert.B[2] + cert.A[1] * cert.B[1] * cert.B[2] +
                  cert.A[0] * cert.B[0] * cert.B[1] * cert.B[2];
    CHECK(within_ulps(rep.X[3], x4, 16));
    for (std::size_t j = 0; j < rep.X.size(); ++j)
        CHECK(within_ulps(rep.X[j], rep.X_closed_sum[j], 10));
    CHECK(rep.divergence_evidence);

    // at 5.4 the same family's X stream is bounded: an early transient,
    // then settling near A/(1 - B) ~ 1.87
    auto stall = x_growth(spec, BigFloat(5.4, 256), 120, 256);
    CHECK_FALSE(stall.divergence_evidence);
    CHECK(stall.sup_estimate < BigFloat(10L, 256));
    CHECK(stall.X[119].to_double() == doctest::Approx(1.8716).epsilon(1e-3));
    // identity alpha = -S/X at the plateau
    Certificate c54 = alpha_certificate(spec, BigFloat(5.4, 256), 120, {256, 256, false});
    CHECK(within_ulps(c54.alpha[119], -c54.S[119] / stall.X[119], 16));
}

TEST_CASE("precision cap surfaces as an error when escalation is exhausted") {
    BigFloat mus = (5 + sqrt(BigFloat(33, 256))) / 2;
    CHECK_THROWS_AS(
        alpha_certificate(fixtures::lemma34(), mus, 190, {256, 256, true}),
        PrecisionCapReached);
}

TEST_SUITE_END();
