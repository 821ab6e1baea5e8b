#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "laplim/bigfloat.hpp"
#include "laplim/rational.hpp"

namespace laplim {

/// Dense univariate polynomial with exact rational coefficients.
/// Invariant: `c_` is empty (the zero polynomial) or its last entry is nonzero.
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { trim(); }

    /// From integer coefficients, lowest degree first.
    static Polynomial from_ints(std::initializer_list<long> coeffs) {
        std::vector<BigRat> c;
        for (long v : coeffs) c.emplace_back(v);
        return Polynomial(std::move(c));
    }

    static Polynomial constant(const BigRat& v) { return Polynomial({v}); }

    static Polynomial monomial(int deg, const BigRat& coeff = BigRat(1)) {
        std::vector<BigRat> c(deg + 1, BigRat(0));
        c[deg] = coeff;
        return Polynomial(std::move(c));
    }

    /// The variable itself.
    static Polynomial x() { return monomial(1); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const BigRat& leading() const { return c_.back(); }

    BigRat coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return BigRat(0);
        return c_[i];
    }

    const std::vector<BigRat>& coeffs() const { return c_; }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<BigRat> c(std::max(a.c_.size(), b.c_.size()), BigRat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return Polynomial(std::move(c));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<BigRat> c(std::max(a.c_.size(), b.c_.size()), BigRat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return Polynomial(std::move(c));
    }

    Polynomial operator-() const {
        std::vector<BigRat> c(c_);
        for (auto& v : c) v = -v;
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<BigRat> c(a.c_.size() + b.c_.size() - 1, BigRat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(const Polynomial& a, const BigRat& s) {
        if (s == 0) return Polynomial();
        std::vector<BigRat> c(a.c_);
        for (auto& v : c) v *= s;
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const BigRat& s, const Polynomial& a) { return a * s; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<BigRat> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * BigRat(static_cast<long>(i));
        return Polynomial(std::move(c));
    }

    BigRat eval(const BigRat& x) const {
        BigRat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    BigFloat eval(const BigFloat& x) const {
        BigFloat acc(0L, x.prec());
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + to_bigfloat(*it, x.prec());
        return acc;
    }

    double eval(double x) const {
        double acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
        return acc;
    }

    int sign_at(const BigRat& x) const { return sgn(eval(x)); }

    /// Quotient and remainder of exact division over the rationals.
    std::pair<Polynomial, Polynomial> divrem(const Polynomial& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        Polynomial r = *this;
        std::vector<BigRat> q(std::max<int>(degree() - d.degree() + 1, 0), BigRat(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            BigRat f = r.leading() / d.leading();
            int shift = r.degree() - d.degree();
            q[shift] = f;
            std::vector<BigRat> rc(r.c_);
            for (std::size_t i = 0; i < d.c_.size(); ++i) rc[i + shift] -= f * d.c_[i];
            rc.pop_back();
            r = Polynomial(std::move(rc));
        }
        return {Polynomial(std::move(q)), r};
    }

    /// Make the polynomial monic (unit leading coefficient).
    Polynomial monic() const {
        if (is_zero()) return *this;
        return *this * (BigRat(1) / leading());
    }

    /// Integer-coefficient primitive representative with positive leading
    /// coefficient (same roots). Used for display and serialization.
    std::vector<BigInt> primitive_int_coeffs() const {
        if (is_zero()) return {BigInt(0)};
        BigInt l(1);
        for (const auto& q : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
        std::vector<BigInt> out(c_.size());
        BigInt g(0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            out[i] = c_[i].get_num() * (l / c_[i].get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
        }
        if (g == 0) g = 1;
        if (out.back() < 0) g = -g;
        for (auto& v : out) v /= g;
        return out;
    }

    /// Same roots, integer primitive coefficients, positive leading term.
    Polynomial normalized_primitive() const {
        auto ints = primitive_int_coeffs();
        std::vector<BigRat> c(ints.size());
        for (std::size_t i = 0; i < ints.size(); ++i) c[i] = BigRat(ints[i]);
        return Polynomial(std::move(c));
    }

    /// Integer primitive representative divided by a *positive* constant
    /// only, so every coefficient keeps its sign.
    Polynomial primitive_same_sign() const {
        if (is_zero()) return *this;
        Polynomial p = normalized_primitive();
        if (sgn(leading()) != sgn(p.leading())) return -p;
        return p;
    }

    /// Divide out any x^m factor (drops roots at zero).
    Polynomial without_zero_roots() const {
        if (is_zero()) return *this;
        std::size_t m = 0;
        while (m < c_.size() && c_[m] == 0) ++m;
        return Polynomial(std::vector<BigRat>(c_.begin() + m, c_.end()));
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        auto ints = primitive_int_coeffs();
        std::string out;
        for (int i = static_cast<int>(ints.size()) - 1; i >= 0; --i) {
            if (ints[i] == 0) continue;
            BigInt a = ints[i];
            if (!out.empty()) {
                out += (a < 0) ? " - " : " + ";
                if (a < 0) a = -a;
            } else if (a < 0) {
                out += "-";
                a = -a;
            }
            if (a != 1 || i == 0) out += a.get_str();
            if (i >= 1) {
                if (a != 1) out += "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<BigRat> c_;
};

namespace poly_detail {

/// Pseudo-remainder scaled by a positive power of |lead(b)|: integer
/// coefficients stay integer and the sign agrees with the true remainder's.
inline Polynomial positive_prem(const Polynomial& a, const Polynomial& b) {
    int d = a.degree() - b.degree() + 1;
    if (d % 2 == 1 && b.leading() < 0) ++d;  // keep the multiplier positive
    BigRat scale(1);
    for (int i = 0; i < d; ++i) scale *= b.leading();
    return (a * scale).divrem(b).second;
}

} // namespace poly_detail

/// Polynomial gcd by a primitive pseudo-remainder sequence (integer
/// arithmetic throughout; no rational coefficient blowup). Result is
/// integer-primitive with positive leading coefficient.
inline Polynomial poly_gcd(Polynomial a, Polynomial b) {
    a = a.normalized_primitive();
    b = b.normalized_primitive();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        Polynomial r = poly_detail::positive_prem(a, b).normalized_primitive();
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Square-free part: same distinct roots, all simple.
inline Polynomial square_free_part(const Polynomial& p) {
    if (p.degree() <= 1) return p;
    Polynomial g = poly_gcd(p, p.derivative());
    if (g.degree() <= 0) return p;
    return p.divrem(g).first;
}

/// Yun's algorithm: p = prod f_i^i with the f_i square-free and coprime.
/// Returns (factor, multiplicity) pairs for the nonconstant factors.
inline std::vector<std::pair<Polynomial, int>> square_free_decomposition(const Polynomial& p) {
    std::vector<std::pair<Polynomial, int>> out;
    if (p.degree() <= 0) return out;
    Polynomial a = poly_gcd(p, p.derivative());
    if (a.degree() == 0) {
        out.emplace_back(p.monic(), 1);
        return out;
    }
    Polynomial b = p.divrem(a).first;
    Polynomial c = p.derivative().divrem(a).first;
    Polynomial d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        Polynomial f = poly_gcd(b, d);
        if (f.degree() > 0) out.emplace_back(f.monic(), i);
        b = b.divrem(f).first;
        c = d.divrem(f).first;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

/// Sturm chain of a polynomial; counts distinct real roots by sign
/// variations. Built as a primitive pseudo-remainder sequence: each element
/// is a positive multiple of the classical chain's, so variation counts
/// match.
class SturmChain {
public:
    explicit SturmChain(const Polynomial& p) {
        seq_.push_back(p.normalized_primitive());
        if (p.degree() >= 1) {
            seq_.push_back(seq_[0].derivative().primitive_same_sign());
            while (seq_.back().degree() >= 1) {
                Polynomial r =
                    poly_detail::positive_prem(seq_[seq_.size() - 2], seq_.back());
                if (r.is_zero()) break;
                seq_.push_back((-r).primitive_same_sign());
            }
        }
    }

    int variations_at(const BigRat& x) const {
        int v = 0, prev = 0;
        for (const auto& s : seq_) {
            int sg = s.sign_at(x);
            if (sg == 0) continue;
            if (prev != 0 && sg != prev) ++v;
            prev = sg;
        }
        return v;
    }

    int variations_at_neg_inf() const { return variations_limit(-1); }
    int variations_at_pos_inf() const { return variations_limit(+1); }

    /// Number of distinct real roots in (a, b], assuming p(a) != 0.
    int count_in(const BigRat& a, const BigRat& b) const {
        return variations_at(a) - variations_at(b);
    }

private:
    int variations_limit(int dir) const {
        int v = 0, prev = 0;
        for (const auto& s : seq_) {
            if (s.is_zero()) continue;
            int sg = sgn(s.leading());
            if (dir < 0 && (s.degree() % 2 == 1)) sg = -sg;
            if (prev != 0 && sg != prev) ++v;
            prev = sg;
        }
        return v;
    }

    std::vector<Polynomial> seq_;
};

/// Bound with all real roots inside (-B, B).
inline BigRat cauchy_root_bound(const Polynomial& p) {
    BigRat m(0);
    for (int i = 0; i < p.degree(); ++i) {
        BigRat a = abs(p.coeff(i) / p.leading());
        if (a > m) m = a;
    }
    return m + 1;
}

struct RootInterval {
    BigRat lo, hi;  // open-below/closed-above bracket holding exactly one distinct root
};

/// Isolating intervals for every distinct real root, ascending.
/// Interval endpoints are never roots themselves.
inline std::vector<RootInterval> isolate_real_roots(const Polynomial& p_in) {
    std::vector<RootInterval> out;
    Polynomial p = square_free_part(p_in);
    if (p.degree() < 1) return out;
    SturmChain chain(p);
    BigRat bound = cauchy_root_bound(p);
    struct Span { BigRat lo, hi; int count; };
    std::vector<Span> stack;
    int total = chain.count_in(-bound, bound);
    if (total > 0) stack.push_back({-bound, bound, total});
    while (!stack.empty()) {
        Span s = stack.back();
        stack.pop_back();
        if (s.count == 1) {
            out.push_back({s.lo, s.hi});
            continue;
        }
        BigRat mid = (s.lo + s.hi) / 2;
        while (p.sign_at(mid) == 0) mid = (s.lo + mid) / 2;  // nudge off a root
        int left = chain.count_in(s.lo, mid);
        if (left > 0) stack.push_back({s.lo, mid, left});
        if (s.count - left > 0) stack.push_back({mid, s.hi, s.count - left});
    }
    std::sort(out.begin(), out.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

/// Shrink an isolating interval by rational bisection until its width drops
/// below `width`, then return it. Requires a sign change across the bracket.
inline RootInterval refine_root(const Polynomial& sf, RootInterval iv, const BigRat& width) {
    int slo = sf.sign_at(iv.lo);
    while (iv.hi - iv.lo > width) {
        BigRat mid = (iv.lo + iv.hi) / 2;
        int sm = sf.sign_at(mid);
        if (sm == 0) {
            // exact rational root
            iv.lo = mid;
            iv.hi = mid;
            return iv;
        }
        if (sm == slo) iv.lo = mid;
        else iv.hi = mid;
    }
    return iv;
}

/// Refine to a BigFloat of the requested precision.
inline BigFloat refine_root_bf(const Polynomial& sf, RootInterval iv, mpfr_prec_t prec) {
    // First tighten rationally to 2^-24, then switch to float bisection.
    iv = refine_root(sf, iv, BigRat(1, 1 << 24));
    BigFloat lo = to_bigfloat(iv.lo, prec), hi = to_bigfloat(iv.hi, prec);
    if (iv.lo == iv.hi) return lo;
    int slo = sf.sign_at(iv.lo);
    for (long i = 0; i < static_cast<long>(prec) + 8; ++i) {
        BigFloat mid = (lo + hi) / 2;
        if (mid == lo || mid == hi) break;
        BigFloat v = sf.eval(mid);
        int sm = v.sign();
        if (sm == 0) return mid;
        if (sm == slo) lo = mid;
        else hi = mid;
    }
    return (lo + hi) / 2;
}

/// Largest real root of p at the requested precision, with its isolating
/// interval. Throws if p has no real root.
inline std::pair<BigFloat, RootInterval> largest_real_root(const Polynomial& p, mpfr_prec_t prec) {
    auto ivs = isolate_real_roots(p);
    if (ivs.empty()) throw std::domain_error("polynomial has no real root");
    Polynomial sf = square_free_part(p);
    return {refine_root_bf(sf, ivs.back(), prec), ivs.back()};
}

/// Eigenvalue-style counts (with multiplicity) of p's real roots relative to
/// a probe: (#roots < x, #roots == x, #roots > x).
struct RootCounts {
    int below = 0, equal = 0, above = 0;
};

inline RootCounts root_counts(const Polynomial& p, const BigRat& x) {
    RootCounts rc;
    for (const auto& [f, mult] : square_free_decomposition(p)) {
        SturmChain chain(f);
        BigRat bound = cauchy_root_bound(f);
        BigRat lo = -bound, hi = bound;
        if (x <= lo || x >= hi) {
            int all = chain.count_in(lo, hi);
            if (x <= lo) rc.above += mult * all;
            else rc.below += mult * all;
            continue;
        }
        int eq = (f.sign_at(x) == 0) ? 1 : 0;
        int le = chain.count_in(lo, x);  // roots in (lo, x]
        rc.equal += mult * eq;
        rc.below += mult * (le - eq);
        rc.above += mult * chain.count_in(x, hi);
    }
    return rc;
}

} // namespace laplim
