#pragma once

#include <mpfr.h>

#include <concepts>
#include <cstdio>
#include <string>
#include <utility>

namespace laplim {

/// Arbitrary-precision binary float with value semantics, backed by MPFR.
/// Each value carries its own mantissa precision; binary operations round to
/// the wider of the two operands. Default precision is 256 bits.
class BigFloat {
public:
    static constexpr mpfr_prec_t kDefaultPrec = 256;

    BigFloat() { mpfr_init2(v_, kDefaultPrec); mpfr_set_zero(v_, 1); }

    explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }

    BigFloat(double x, mpfr_prec_t prec = kDefaultPrec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }

    template <std::integral I>
    BigFloat(I x, mpfr_prec_t prec = kDefaultPrec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, static_cast<long>(x), MPFR_RNDN);
    }

    /// Parse a decimal literal at the given precision.
    static BigFloat parse(const std::string& text, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN);
        return r;
    }

    /// 2^e, exact.
    static BigFloat pow2(long e, mpfr_prec_t prec = kDefaultPrec) {
        BigFloat r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }

    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }

    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    /// Round a copy of the value to a new precision.
    BigFloat round_to(mpfr_prec_t prec) const {
        BigFloat r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_finite() const { return mpfr_number_p(v_); }

    /// Scientific-notation decimal string; `digits` 0 means every digit the
    /// mantissa can carry.
    std::string str(int digits = 0) const {
        if (digits <= 0) digits = static_cast<int>(prec() * 0.30103) + 2;
        char* out = nullptr;
        mpfr_asprintf(&out, "%.*R*e", digits - 1, MPFR_RNDN, v_);
        std::string s(out);
        mpfr_free_str(out);
        return s;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    // -- arithmetic ---------------------------------------------------------

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    BigFloat& operator+=(const BigFloat& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }

    template <std::integral I> friend BigFloat operator+(const BigFloat& a, I b) {
        BigFloat r(a.prec()); mpfr_add_si(r.v_, a.v_, static_cast<long>(b), MPFR_RNDN); return r;
    }
    template <std::integral I> friend BigFloat operator+(I a, const BigFloat& b) { return b + a; }
    template <std::integral I> friend BigFloat operator-(const BigFloat& a, I b) {
        BigFloat r(a.prec()); mpfr_sub_si(r.v_, a.v_, static_cast<long>(b), MPFR_RNDN); return r;
    }
    template <std::integral I> friend BigFloat operator-(I a, const BigFloat& b) {
        BigFloat r(b.prec()); mpfr_si_sub(r.v_, static_cast<long>(a), b.v_, MPFR_RNDN); return r;
    }
    template <std::integral I> friend BigFloat operator*(const BigFloat& a, I b) {
        BigFloat r(a.prec()); mpfr_mul_si(r.v_, a.v_, static_cast<long>(b), MPFR_RNDN); return r;
    }
    template <std::integral I> friend BigFloat operator*(I a, const BigFloat& b) { return b * a; }
    template <std::integral I> friend BigFloat operator/(const BigFloat& a, I b) {
        BigFloat r(a.prec()); mpfr_div_si(r.v_, a.v_, static_cast<long>(b), MPFR_RNDN); return r;
    }
    template <std::integral I> friend BigFloat operator/(I a, const BigFloat& b) {
        BigFloat r(b.prec()); mpfr_si_div(r.v_, static_cast<long>(a), b.v_, MPFR_RNDN); return r;
    }

    friend BigFloat operator+(const BigFloat& a, double b) {
        BigFloat r(a.prec()); mpfr_add_d(r.v_, a.v_, b, MPFR_RNDN); return r;
    }
    friend BigFloat operator+(double a, const BigFloat& b) { return b + a; }
    friend BigFloat operator-(const BigFloat& a, double b) {
        BigFloat r(a.prec()); mpfr_sub_d(r.v_, a.v_, b, MPFR_RNDN); return r;
    }
    friend BigFloat operator-(double a, const BigFloat& b) {
        BigFloat r(b.prec()); mpfr_d_sub(r.v_, a, b.v_, MPFR_RNDN); return r;
    }
    friend BigFloat operator*(const BigFloat& a, double b) {
        BigFloat r(a.prec()); mpfr_mul_d(r.v_, a.v_, b, MPFR_RNDN); return r;
    }
    friend BigFloat operator*(double a, const BigFloat& b) { return b * a; }
    friend BigFloat operator/(const BigFloat& a, double b) {
        BigFloat r(a.prec()); mpfr_div_d(r.v_, a.v_, b, MPFR_RNDN); return r;
    }
    friend BigFloat operator/(double a, const BigFloat& b) {
        BigFloat r(b.prec()); mpfr_d_div(r.v_, a, b.v_, MPFR_RNDN); return r;
    }

    // -- comparison ---------------------------------------------------------

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    template <std::integral I> friend bool operator==(const BigFloat& a, I b) { return mpfr_cmp_si(a.v_, static_cast<long>(b)) == 0; }
    template <std::integral I> friend bool operator!=(const BigFloat& a, I b) { return mpfr_cmp_si(a.v_, static_cast<long>(b)) != 0; }
    template <std::integral I> friend bool operator<(const BigFloat& a, I b) { return mpfr_cmp_si(a.v_, static_cast<long>(b)) < 0; }
    template <std::integral I> friend bool operator>(const BigFloat& a, I b) { return mpfr_cmp_si(a.v_, static_cast<long>(b)) > 0; }
    template <std::integral I> friend bool operator<=(const BigFloat& a, I b) { return mpfr_cmp_si(a.v_, static_cast<long>(b)) <= 0; }
    template <std::integral I> friend bool operator>=(const BigFloat& a, I b) { return mpfr_cmp_si(a.v_, static_cast<long>(b)) >= 0; }
    template <std::integral I> friend bool operator<(I a, const BigFloat& b) { return b > a; }
    template <std::integral I> friend bool operator>(I a, const BigFloat& b) { return b < a; }
    template <std::integral I> friend bool operator<=(I a, const BigFloat& b) { return b >= a; }
    template <std::integral I> friend bool operator>=(I a, const BigFloat& b) { return b <= a; }

    friend bool operator<(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
    friend bool operator>(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
    friend bool operator<=(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
    friend bool operator>=(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }
    friend bool operator<(double a, const BigFloat& b) { return b > a; }
    friend bool operator>(double a, const BigFloat& b) { return b < a; }
    friend bool operator<=(double a, const BigFloat& b) { return b >= a; }
    friend bool operator>=(double a, const BigFloat& b) { return b <= a; }

    // -- elementary functions -----------------------------------------------

    friend BigFloat abs(const BigFloat& a) {
        BigFloat r(a.prec()); mpfr_abs(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend BigFloat sqrt(const BigFloat& a) {
        BigFloat r(a.prec()); mpfr_sqrt(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend BigFloat cbrt(const BigFloat& a) {
        BigFloat r(a.prec()); mpfr_cbrt(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend BigFloat floor(const BigFloat& a) {
        BigFloat r(a.prec()); mpfr_floor(r.v_, a.v_); return r;
    }
    friend BigFloat round(const BigFloat& a) {
        BigFloat r(a.prec()); mpfr_round(r.v_, a.v_); return r;
    }
    friend bool isfinite(const BigFloat& a) { return a.is_finite(); }

private:
    static mpfr_prec_t join(const BigFloat& a, const BigFloat& b) {
        return a.prec() > b.prec() ? a.prec() : b.prec();
    }

    mpfr_t v_;
};

} // namespace laplim
