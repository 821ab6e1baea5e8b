#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

#include "laplim/bigfloat.hpp"
#include "laplim/numeric.hpp"

namespace laplim {

using BigRat = mpq_class;
using BigInt = mpz_class;

/// Exact-rational backend: valid wherever the computation stays inside field
/// operations (notably the congruence diagonalization at a rational probe).
template <>
struct RealOps<mpq_class> {
    static constexpr bool is_big = false;

    static mpq_class from_long(long v, const mpq_class&) { return mpq_class(v); }
    static mpfr_prec_t precision(const mpq_class&) { return 0; }
    static mpq_class epsilon(const mpq_class&) { return mpq_class(0); }
    static mpq_class recurrence_guard(const mpq_class&) { return mpq_class(0); }
    static double to_double(const mpq_class& v) { return v.get_d(); }
    static std::string str(const mpq_class& v) { return v.get_str(); }
};

inline BigFloat to_bigfloat(const BigRat& q, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

inline double to_double(const BigRat& q) { return q.get_d(); }

/// Exact rational from a double (doubles are dyadic rationals).
inline BigRat rat_from_double(double x) { return BigRat(x); }

/// num/den in lowest terms (mpq_class does not canonicalize on its own).
inline BigRat make_rat(long num, long den) {
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

inline std::string rat_str(const BigRat& q) { return q.get_str(); }

} // namespace laplim
