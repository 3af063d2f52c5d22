// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles, kept independent of the library's evaluation paths.
#pragma once

#include <cstdint>
#include <utility>

#include "tauli/real.hpp"

namespace tauli::oracle {

/// Rigorous enclosure of zeta_H(s, x) = sum_{m>=0} (x+m)^{-s} for real
/// s > 1, x > 0 by direct summation of M terms plus a tail sandwich.  The
/// integrand is completely monotone, so each Euler-Maclaurin correction
/// brackets the remainder by the first omitted term:
///   tail = I + f/2 - f'/12 + f'''/720 + theta * f^(5)/30240, theta in [0,1].
inline std::pair<Real, Real> hurwitz_bracket(const Real& s, const Real& x, long m_terms) {
    Real partial(0);
    for (long m = m_terms - 1; m >= 0; --m)
        partial += pow(x + Real(m), -s);
    const Real y = x + Real(m_terms);
    const Real f = pow(y, -s);
    const Real integral = pow(y, 1 - s) / (s - 1);
    const Real fp = -s * pow(y, -s - 1);
    const Real fppp = -s * (s + 1) * (s + 2) * pow(y, -s - 3);
    const Real f5 = -s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * pow(y, -s - 5);
    Real base = partial + integral + f / 2 - fp / 12 + fppp / 720;
    // first omitted term is -f^(5)/30240 with f^(5) < 0, so the remainder
    // is in [0, |f^(5)|/30240] and the true value in [base, base - f5/30240]
    return {base, base - f5 / 30240};
}

/// psi^{(k)}(x) enclosure from the Hurwitz bracket.
inline std::pair<Real, Real> polygamma_bracket(unsigned k, const Real& x, long m_terms) {
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), k);
    Real scale = Real(fact.get_str());
    auto [lo, hi] = hurwitz_bracket(Real(k + 1), x, m_terms);
    if (k % 2 == 1) return {scale * lo, scale * hi};
    return {-scale * hi, -scale * lo};
}

/// Associated Laguerre L^1_n by the three-term recurrence
///   (k+1) L^1_{k+1}(x) = (2k+2-x) L^1_k(x) - (k+1) L^1_{k-1}(x),
/// an independent route to the explicit sum.
inline Real laguerre1_recurrence(unsigned n, const Real& x) {
    Real lm1(1);          // L^1_0
    if (n == 0) return lm1;
    Real l = Real(2) - x; // L^1_1
    for (unsigned k = 1; k < n; ++k) {
        Real lp = ((Real(2 * k + 2) - x) * l - Real(k + 1) * lm1) / Real(k + 1);
        lm1 = l;
        l = lp;
    }
    return l;
}

} // namespace tauli::oracle
