#pragma once

#include <stdexcept>
#include <utility>

#include "laplim/polynomial.hpp"

namespace laplim {

/// Ratio of two polynomials over the rationals, kept reduced (gcd = 1,
/// denominator with positive integer-primitive leading coefficient).
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Polynomial::constant(BigRat(1))) {}

    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        reduce();
    }

    explicit RationalFunction(const Polynomial& p)
        : num_(p), den_(Polynomial::constant(BigRat(1))) {}

    static RationalFunction constant(const BigRat& v) {
        return RationalFunction(Polynomial::constant(v));
    }

    /// The variable itself.
    static RationalFunction x() { return RationalFunction(Polynomial::x()); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("rational function division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction operator-() const { return RationalFunction(-num_, den_); }

    RationalFunction reciprocal() const {
        if (is_zero()) throw std::domain_error("reciprocal of zero");
        return RationalFunction(den_, num_);
    }

    BigRat eval(const BigRat& x) const {
        BigRat d = den_.eval(x);
        if (d == 0) throw std::domain_error("rational function pole");
        return num_.eval(x) / d;
    }

    BigFloat eval(const BigFloat& x) const { return num_.eval(x) / den_.eval(x); }

    double eval(double x) const { return num_.eval(x) / den_.eval(x); }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = Polynomial::constant(BigRat(1));
            return;
        }
        Polynomial g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.divrem(g).first;
            den_ = den_.divrem(g).first;
        }
        // normalize so the denominator is integer-primitive with positive lead
        Polynomial dn = den_.normalized_primitive();
        BigRat scale = den_.leading() / dn.leading();
        num_ = num_ * (BigRat(1) / scale);
        den_ = dn;
    }

    Polynomial num_, den_;
};

} // namespace laplim
