// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include "tauli/bernoulli.hpp"
#include "tauli/cnum.hpp"
#include "tauli/errors.hpp"
#include "tauli/real.hpp"

namespace tauli::em {

inline double to_dbl(const Real& x) { return x.convert_to<double>(); }
inline double to_dbl(long double x) { return static_cast<double>(x); }

/// Euler-Maclaurin coefficients B_{2r}/(2r)! in the requested real type.
/// Snapshots are immutable and shared.
template <class R>
std::shared_ptr<const std::vector<R>> em_coeffs_snapshot(std::size_t count, unsigned digits);

template <>
inline std::shared_ptr<const std::vector<Real>> em_coeffs_snapshot<Real>(std::size_t count,
                                                                         unsigned digits) {
    return em_coefficients(count, digits);
}

template <>
inline std::shared_ptr<const std::vector<long double>>
em_coeffs_snapshot<long double>(std::size_t count, unsigned) {
    static std::shared_ptr<const std::vector<long double>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (!cache || cache->size() < count) {
        PrecisionScope scope(40);
        auto grown = cache ? std::make_shared<std::vector<long double>>(*cache)
                           : std::make_shared<std::vector<long double>>();
        while (grown->size() < count)
            grown->push_back(detail::em_coefficient(grown->size() + 1).convert_to<long double>());
        cache = grown;
    }
    return cache;
}

/// Truncation controls; zero means automatic selection from the precision
/// target.  Exposed so tests can pin the cutoff and Bernoulli depth.
struct EmOptions {
    long cutoff_n = 0; // number of directly summed terms
    long depth_v = 0;  // number of Bernoulli tail terms (0 = adaptive)
};

template <class R>
struct EmEval {
    CNum<R> value;       // zeta_H(s, a)
    CNum<R> deriv;       // d/ds zeta_H(s, a) when requested
    R rem_bound{};       // bound on |remainder| of value
    R rem_bound_deriv{}; // estimate of |remainder| of deriv
    long used_n = 0;
    long used_v = 0;
};

/// Hurwitz zeta by direct sum plus Euler-Maclaurin tail:
///
///   zeta_H(s,a) = sum_{m<N} (a+m)^-s + X^{1-s}/(s-1) + X^-s/2
///               + sum_{r>=1} B_{2r}/(2r)! (s)_{2r-1} X^{1-s-2r},   X = a+N.
///
/// The remainder after v tail terms is bounded by the first omitted term
/// times |s+2v+1|/(Re s+2v+1).  The Bernoulli depth adapts until that bound
/// drops below 10^-(digits+5) relative to the accumulated magnitude; if the
/// tail terms start diverging first, the cutoff N is raised and the whole
/// evaluation is redone.  Valid for s != 1 and a > 0.
template <class R>
EmEval<R> hurwitz_em(const CNum<R>& s, const R& a, unsigned digits, bool want_deriv,
                     EmOptions opt = {}) {
    using std::log;
    using std::pow;

    const R one(1), half = R(1) / R(2);
    const R ten(10);
    if (abs(s - one) < pow(ten, -R(static_cast<long>(digits))))
        throw DomainError("hurwitz_em: s too close to the pole at 1");
    if (!(a > R(0))) throw DomainError("hurwitz_em: a must be positive");

    const double im = std::fabs(to_dbl(s.im));
    long n = opt.cutoff_n;
    if (n <= 0) n = static_cast<long>(10 + 0.62 * (digits + 8) + 0.55 * im);

    const R eps = pow(ten, -R(static_cast<long>(digits) + 5));

    for (int attempt = 0;; ++attempt, n = n + n / 2 + 16) {
        // direct sum
        CNum<R> main, main_d;
        for (long m = 0; m < n; ++m) {
            R x = a + R(m);
            R lx = log(x);
            CNum<R> p = exp(CNum<R>(-s.re * lx, -s.im * lx));
            main += p;
            if (want_deriv) main_d += p * (-lx);
        }
        const R x_n = a + R(n);
        const R lxn = log(x_n);
        const CNum<R> sm1 = s - one;
        const CNum<R> x_pow_1ms = exp(CNum<R>((one - s.re) * lxn, -s.im * lxn));
        const CNum<R> x_pow_ms = x_pow_1ms / x_n;

        CNum<R> val = main + x_pow_1ms / sm1 + x_pow_ms * half;
        CNum<R> der;
        if (want_deriv)
            der = main_d - x_pow_1ms * lxn / sm1 - x_pow_1ms / (sm1 * sm1)
                - x_pow_ms * lxn * half;

        const long v_fixed = opt.depth_v;
        const long v_cap = (v_fixed > 0) ? v_fixed : 2 * n + 64;
        auto coeffs = em_coeffs_snapshot<R>(static_cast<std::size_t>(v_cap) + 1, digits + 10);
        const auto& c = *coeffs;

        CNum<R> poch = s;          // (s)_{2r-1} at r = 1
        CNum<R> poch_d(one);       // d/ds (s)_{2r-1}
        CNum<R> x_fac = x_pow_1ms / (x_n * x_n); // X^{1-s-2r} at r = 1
        const R inv_x2 = one / (x_n * x_n);
        const R scale = abs(val) + one;
        R prev_mag(0);
        CNum<R> tail, tail_d;
        for (long r = 1; r <= v_cap; ++r) {
            const R& cr = c[static_cast<std::size_t>(r - 1)];
            CNum<R> term = cr * poch * x_fac;
            CNum<R> term_d = want_deriv ? cr * x_fac * (poch_d - poch * lxn) : CNum<R>();
            R mag = abs(term) + (want_deriv ? abs(term_d) : R(0));
            if (v_fixed == 0 && r > 1 && mag > prev_mag) break; // tail divergence
            tail += term;
            if (want_deriv) tail_d += term_d;
            prev_mag = mag;

            CNum<R> u = (s + R(2 * r - 1)) * (s + R(2 * r));
            CNum<R> poch_next = poch * u;
            CNum<R> poch_d_next = poch_d * u + poch * (R(2) * s + R(4 * r - 1));
            CNum<R> x_fac_next = x_fac * inv_x2;
            const R& cn = c[static_cast<std::size_t>(r)];
            R next_mag = abs(cn * poch_next * x_fac_next);
            R next_mag_all = next_mag;
            if (want_deriv)
                next_mag_all += abs(cn * x_fac_next * (poch_d_next - poch_next * lxn));
            bool done = (v_fixed == 0) ? (next_mag_all < eps * scale) : (r == v_fixed);
            if (done) {
                R denom = s.re + R(2 * r + 1);
                R factor = (denom > R(0)) ? abs(s + R(2 * r + 1)) / denom : R(1000);
                EmEval<R> out;
                out.value = val + tail;
                out.rem_bound = next_mag * factor;
                if (want_deriv) {
                    out.deriv = der + tail_d;
                    out.rem_bound_deriv =
                        next_mag_all * factor * (lxn + log(R(2 * r) + one) + R(4));
                }
                out.used_n = n;
                out.used_v = r;
                return out;
            }
            poch_d = poch_d_next;
            poch = poch_next;
            x_fac = x_fac_next;
        }
        if (attempt >= 6)
            throw PrecisionError("hurwitz_em: Euler-Maclaurin tail failed to converge");
    }
}

/// Riemann zeta and its s-derivative, complex argument.
template <class R>
EmEval<R> zeta_em(const CNum<R>& s, unsigned digits, bool want_deriv, EmOptions opt = {}) {
    return hurwitz_em<R>(s, R(1), digits, want_deriv, opt);
}

} // namespace tauli::em
