#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "laplim/bigfloat.hpp"

namespace laplim {

/// Backend shims so the recurrence code can be written once against a generic
/// `Real` (either `double` or `BigFloat`). `model` arguments only supply the
/// target precision.
template <class Real>
struct RealOps;

template <>
struct RealOps<double> {
    static constexpr bool is_big = false;

    static double from_long(long v, const double&) { return static_cast<double>(v); }
    static mpfr_prec_t precision(const double&) { return 53; }

    /// Machine epsilon for the backend.
    static double epsilon(const double&) { return 0x1.0p-52; }

    /// |S_j| below this trips the fallback to the generic diagonalization.
    static double recurrence_guard(const double&) { return 0x1.0p-40; }

    /// Default bisection width for spectral-radius brackets.
    static double default_radius_tol(const double&) { return 1e-12; }

    static double to_double(double v) { return v; }

    static std::string str(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
};

template <>
struct RealOps<BigFloat> {
    static constexpr bool is_big = true;

    static BigFloat from_long(long v, const BigFloat& model) { return BigFloat(v, model.prec()); }
    static mpfr_prec_t precision(const BigFloat& model) { return model.prec(); }

    static BigFloat epsilon(const BigFloat& model) {
        return BigFloat::pow2(1 - static_cast<long>(model.prec()), model.prec());
    }

    static BigFloat recurrence_guard(const BigFloat& model) {
        return BigFloat::pow2(-static_cast<long>(model.prec()) / 2, model.prec());
    }

    static BigFloat default_radius_tol(const BigFloat& model) {
        return BigFloat::pow2(-static_cast<long>(model.prec()) + 16, model.prec());
    }

    static double to_double(const BigFloat& v) { return v.to_double(); }

    static std::string str(const BigFloat& v) { return v.str(); }
};

/// |a - b| <= ulps units in the last place of the wider operand.
inline bool within_ulps(const BigFloat& a, const BigFloat& b, long ulps) {
    BigFloat diff = abs(a - b);
    BigFloat scale = abs(a) > abs(b) ? abs(a) : abs(b);
    if (scale.is_zero()) return diff.is_zero();
    mpfr_prec_t p = a.prec() > b.prec() ? a.prec() : b.prec();
    return diff <= scale * (ulps * BigFloat::pow2(-static_cast<long>(p), p));
}

inline bool within_ulps(double a, double b, long ulps) {
    double diff = std::abs(a - b);
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return diff == 0.0;
    return diff <= scale * (static_cast<double>(ulps) * 0x1.0p-53);
}

} // namespace laplim
