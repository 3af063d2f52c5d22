// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include <string>

#include "tauli/errors.hpp"

namespace tauli {

/// Working real type: arbitrary-precision MPFR float.  Every freshly
/// constructed value picks up the current default precision, so public
/// entry points set it through PrecisionScope before computing.
/// Expression templates are off so the type composes with generic code.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Exact rational, used for shifts and pole bookkeeping.
using Rational = mpq_class;

/// Working decimal precision for an evaluation.
struct Precision {
    unsigned digits = 50;

    Precision() = default;
    explicit Precision(unsigned d) : digits(d) {
        if (d < 30) throw DomainError("precision must be at least 30 digits");
    }
};

/// RAII guard: sets the thread's default MPFR precision in decimal digits,
/// restores the previous value on exit.  Nesting is fine.
class PrecisionScope {
  public:
    explicit PrecisionScope(unsigned digits)
        : saved_(Real::default_precision()) {
        Real::default_precision(digits);
    }
    explicit PrecisionScope(Precision p) : PrecisionScope(p.digits) {}
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

  private:
    unsigned saved_;
};

inline unsigned current_digits() {
    return static_cast<unsigned>(Real::default_precision());
}

inline Real real_pi() { return boost::math::constants::pi<Real>(); }

inline Real to_real(const Rational& q) {
    return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

/// 10^{-k} at the current working precision.
inline Real pow10(long k) {
    return boost::multiprecision::pow(Real(10), k);
}

/// Rounds x into a fresh value at the current default precision.  Values
/// parsed at other precisions must pass through this before entering a
/// multi-threaded region: mixed-precision operands make the arithmetic
/// operators adjust the (global) default precision mid-flight, which races
/// across threads and breaks bit-determinism.
inline Real round_to_current(const Real& x) {
    Real r;
    mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

/// Round-trippable decimal rendering with the given significant digits.
inline std::string to_decimal(const Real& x, unsigned digits) {
    return x.str(digits, std::ios_base::scientific);
}

/// Parses a decimal or rational ("p/q") token into an exact rational.
inline Rational parse_rational(const std::string& tok) {
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
        mpz_class num(tok.substr(0, slash)), den(tok.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + tok + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    // decimal: sign, digits, optional fraction
    std::string s = tok;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    auto dot = s.find('.');
    std::string digits = s;
    long frac_len = 0;
    if (dot != std::string::npos) {
        digits = s.substr(0, dot) + s.substr(dot + 1);
        frac_len = static_cast<long>(s.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("invalid numeric token '" + tok + "'");
    mpz_class num(digits, 10); // base fixed: leading zeros are not octal
    mpz_class den = 1;
    for (long i = 0; i < frac_len; ++i) den *= 10;
    Rational q(neg ? -num : num, den);
    q.canonicalize();
    return q;
}

} // namespace tauli
