// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tauli/bernoulli.hpp"
#include "tauli/cnum.hpp"
#include "tauli/errors.hpp"
#include "tauli/model.hpp"
#include "tauli/real.hpp"
#include "tauli/zetaem.hpp"

namespace tauli {

// ---------------------------------------------------------------------------
// von Mangoldt and prime powers

/// Splits m into (p, k) when m = p^k for prime p, else nullopt.
inline std::optional<std::pair<std::uint64_t, unsigned>> prime_power_split(std::uint64_t m) {
    if (m < 2) return std::nullopt;
    std::uint64_t p = 0, rest = m;
    for (std::uint64_t d = 2; d * d <= rest; ++d)
        if (rest % d == 0) {
            p = d;
            while (rest % d == 0) rest /= d;
            break;
        }
    if (p == 0) return std::make_pair(m, 1u); // m itself prime
    if (rest != 1) return std::nullopt;       // second prime factor
    unsigned k = 0;
    std::uint64_t q = m;
    while (q % p == 0) {
        q /= p;
        ++k;
    }
    return q == 1 ? std::make_optional(std::make_pair(p, k)) : std::nullopt;
}

/// Lambda(m) = log p when m = p^k, else 0.  Evaluated at the current
/// working precision.
inline Real von_mangoldt(std::uint64_t m) {
    auto pk = prime_power_split(m);
    return pk ? log(Real(pk->first)) : Real(0);
}

/// Enumerates prime powers m = p^k <= limit in ascending order of m and
/// calls fn(m, p).  Uses a sieve; intended for Dirichlet-series sums where
/// all other m contribute zero.
template <class Fn>
void for_each_prime_power(std::uint64_t limit, Fn&& fn) {
    if (limit < 2) return;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pps;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        for (std::uint64_t j = i * i; j <= limit; j += i)
            composite[static_cast<std::size_t>(j)] = true;
        for (std::uint64_t q = i; q <= limit; q *= i) {
            pps.emplace_back(q, i);
            if (q > limit / i) break;
        }
    }
    std::sort(pps.begin(), pps.end());
    for (const auto& [m, p] : pps) fn(m, p);
}

// ---------------------------------------------------------------------------
// Dirichlet coefficients of -F'/F for the zeta product

/// c_F(m) = Lambda(m) * sum_i (m^{a_i} + m^{-a_i}); zero off prime powers.
inline Real dirichlet_coeff(const ZetaProductSpec& spec, std::uint64_t m, Precision prec) {
    if (m < 2) throw DomainError("dirichlet_coeff: m >= 2 required");
    PrecisionScope scope(prec.digits + 10);
    auto pk = prime_power_split(m);
    if (!pk) return Real(0);
    Real lp = log(Real(pk->first));
    Real s(0);
    for (const auto& a : spec.shifts) {
        Real ap = to_real(a);
        Real up = pow(Real(m), ap);
        s += up + 1 / up;
    }
    return lp * s;
}

/// Generator form of the coefficients: yields (m, c_F(m)) over prime powers
/// m <= limit in ascending order.  c_F(m) >= 0 for positive real shifts.
struct DirichletCoefficients {
    ZetaProductSpec spec;
    Precision prec;

    template <class Fn>
    void for_each(std::uint64_t limit, Fn&& fn) const {
        PrecisionScope scope(prec.digits + 10);
        for_each_prime_power(limit, [&](std::uint64_t m, std::uint64_t p) {
            Real lp = log(Real(p));
            Real s(0);
            for (const auto& a : spec.shifts) {
                Real up = pow(Real(m), to_real(a));
                s += up + 1 / up;
            }
            fn(m, lp * s);
        });
    }
};

// ---------------------------------------------------------------------------
// Associated Laguerre polynomial L^1_n

/// L^1_n(x) by the explicit alternating sum
///   sum_{j=0}^n (-1)^j C(n+1, n-j) x^j / j!,
/// evaluated at an escalated working precision, then rounded back.  The
/// same sum with all signs positive is L^1_n(-x) ~ e^{2 sqrt(n x)}, which
/// measures the cancellation, so the escalation is 2 sqrt((n+1) x) in
/// natural-log units (the x log10(e) rule of thumb is not enough once
/// n >> x).
inline Real laguerre_assoc1(unsigned n, const Real& x, Precision prec) {
    if (x < 0) throw DomainError("laguerre_assoc1: x >= 0 required");
    const double xd = em::to_dbl(x);
    const double cancel_ln = 2.0 * std::sqrt((static_cast<double>(n) + 1.0) * xd);
    const unsigned escalated =
        prec.digits + 10 + static_cast<unsigned>(cancel_ln * 0.4342944819032518 + 1);
    PrecisionScope scope(escalated);
    Real xs = x; // re-round into the escalated precision
    Real acc(0);
    Real xpow(1);   // x^j / j!
    mpz_class binom(static_cast<long>(n) + 1); // C(n+1, 1)
    for (unsigned j = 0; j <= n; ++j) {
        Real term = Real(binom.get_str()) * xpow;
        acc += (j % 2 == 0) ? term : -term;
        // advance to j+1
        xpow = xpow * xs / Real(j + 1);
        binom *= static_cast<unsigned long>(n + 1 - (j + 1));
        binom /= static_cast<unsigned long>(j + 2);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Digamma / polygamma

namespace detail {

/// B_{2r}/(2r) as Real, exact rationals, cached per precision.
inline std::shared_ptr<const std::vector<Real>> digamma_coeffs(std::size_t count,
                                                               unsigned digits) {
    static std::map<unsigned, std::shared_ptr<const std::vector<Real>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[digits];
    if (!slot || slot->size() < count) {
        PrecisionScope scope(digits);
        const auto& bern = bernoulli_exact(2 * count);
        auto grown = std::make_shared<std::vector<Real>>();
        for (std::size_t r = 1; r <= count; ++r)
            grown->push_back(to_real(bern[2 * r] / Rational(static_cast<long>(2 * r))));
        slot = grown;
    }
    return slot;
}

} // namespace detail

/// Digamma for complex z (poles excluded), by upward recurrence into the
/// asymptotic region followed by the Stirling series
///   psi(w) ~ log w - 1/(2w) - sum_r B_{2r}/(2r) w^{-2r}.
/// The recurrence shift count is reported through `shifts_out` when given.
inline CNum<Real> digamma(CNum<Real> z, Precision prec, unsigned* shifts_out = nullptr) {
    const unsigned digits = prec.digits + 10;
    PrecisionScope scope(digits);
    const Real eps = pow10(-static_cast<long>(digits));

    // pole guard: nonpositive integers
    if (abs(z.im) < eps) {
        Real r = z.re;
        if (r < Real(0.5)) {
            Real nearest = round(r);
            if (nearest <= 0 && abs(r - nearest) < pow10(-static_cast<long>(prec.digits) / 2))
                throw IllConditionedError("digamma: too close to a pole",
                                          em::to_dbl(abs(r - nearest)));
        }
    }

    const double im_abs = std::fabs(em::to_dbl(z.im));
    double needed_re = std::max(2.0, 0.5 * im_abs);
    const double r_min = 0.45 * (digits + 5);
    if (im_abs < r_min) {
        double re_for_mod = std::sqrt(std::max(0.0, r_min * r_min - im_abs * im_abs));
        needed_re = std::max(needed_re, re_for_mod);
    }

    for (int attempt = 0;; ++attempt, needed_re *= 1.5) {
        long shift = 0;
        double re = em::to_dbl(z.re);
        if (re < needed_re) shift = static_cast<long>(needed_re - re) + 1;
        CNum<Real> w = z + Real(shift);

        // asymptotic series with sec(arg/2)^{2r+2} penalty on the remainder
        CNum<Real> w2 = w * w;
        CNum<Real> inv_w2 = CNum<Real>(Real(1)) / w2;
        CNum<Real> acc = log(w) - CNum<Real>(Real(1)) / (w * Real(2));
        const double arg_half = std::atan2(em::to_dbl(w.im), em::to_dbl(w.re)) / 2;
        const double sec = 1.0 / std::cos(arg_half);
        auto coeffs = detail::digamma_coeffs(static_cast<std::size_t>(digits) + 64, digits);
        const auto& c = *coeffs;
        CNum<Real> wp = inv_w2;
        Real prev_mag = Real(1e300);
        bool ok = false;
        for (std::size_t r = 1; r < c.size(); ++r) {
            CNum<Real> term = c[r - 1] * wp;
            Real mag = abs(term);
            if (mag > prev_mag) break; // divergence, widen the shift
            acc -= term;
            prev_mag = mag;
            double penalty = std::pow(sec, static_cast<double>(2 * r + 2));
            if (mag * Real(penalty) < eps * (abs(acc) + 1)) {
                ok = true;
                break;
            }
            wp *= inv_w2;
        }
        if (!ok) {
            if (attempt >= 5) throw PrecisionError("digamma: asymptotic series failed");
            continue;
        }
        // undo the recurrence: psi(z) = psi(z+shift) - sum_{j<shift} 1/(z+j)
        CNum<Real> back;
        for (long j = 0; j < shift; ++j) back += CNum<Real>(Real(1)) / (z + Real(j));
        if (shifts_out) *shifts_out = static_cast<unsigned>(shift);
        return acc - back;
    }
}

/// Hurwitz zeta on the real domain the polygamma route needs: s > 1, a > 0.
inline Real hurwitz_zeta(const Real& s, const Real& a, Precision prec) {
    if (!(s > 1)) throw DomainError("hurwitz_zeta: s > 1 required");
    if (!(a > 0)) throw DomainError("hurwitz_zeta: a > 0 required");
    PrecisionScope scope(prec.digits + 10);
    auto ev = em::hurwitz_em<Real>(CNum<Real>(Real(s)), Real(a), prec.digits + 5, false);
    return ev.value.re;
}

/// psi^{(k)}(x) for real x > 0.  k = 0 goes through the digamma scheme;
/// k >= 1 uses psi^{(k)}(x) = (-1)^{k+1} k! zeta_H(k+1, x).
inline Real polygamma(unsigned k, const Real& x, Precision prec) {
    if (!(x > 0)) throw DomainError("polygamma: x > 0 required");
    if (k == 0) return digamma(CNum<Real>(x), prec).re;
    PrecisionScope scope(prec.digits + 10);
    Real zh = hurwitz_zeta(Real(k + 1), x, Precision(prec.digits + 5));
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), k);
    Real value = Real(fact.get_str()) * zh;
    return (k % 2 == 0) ? -value : value;
}

// ---------------------------------------------------------------------------
// zeta'/zeta and the completed log-derivative

/// zeta'(s)/zeta(s) by simultaneous Euler-Maclaurin evaluation of zeta and
/// zeta'.  Errors: pole at s=1; ill-conditioned within 10^{-prec/2} of a
/// zero of zeta (distance estimated as |zeta/zeta'|).
inline CNum<Real> zeta_logderiv(const CNum<Real>& s, Precision prec,
                                em::EmOptions opt = {}) {
    PrecisionScope scope(prec.digits + 12);
    const Real near = pow10(-static_cast<long>(prec.digits) / 2);
    if (abs(s - Real(1)) < near)
        throw DomainError("zeta_logderiv: s is at the pole of zeta");
    auto ev = em::zeta_em<Real>(s, prec.digits + 8, true, opt);
    Real zabs = abs(ev.value);
    Real dabs = abs(ev.deriv);
    if (zabs < near * (dabs + 1))
        throw IllConditionedError("zeta_logderiv: too close to a zero of zeta",
                                  em::to_dbl(zabs / (dabs + 1)));
    return ev.deriv / ev.value;
}

/// Log-derivative of the completed xi(s) = s(s-1) pi^{-s/2} Gamma(s/2) zeta(s):
///   xi'/xi(w) = 1/w + 1/(w-1) - log(pi)/2 + psi(w/2)/2 + zeta'/zeta(w).
/// Strategy: reflect into Re w >= 1/2 through xi'/xi(w) = -xi'/xi(1-w)
/// (this clears all trivial-zero and w=0 hazards), group the gamma factor
/// as Gamma(w/2+1), and treat the neighbourhood of w = 1 by the entire
/// function (w-1) zeta(w) with escalated internal precision.
inline CNum<Real> xi_logderiv_zeta(const CNum<Real>& w_in, Precision prec) {
    PrecisionScope scope(prec.digits + 12);
    const Real one(1), half = Real(1) / 2;
    CNum<Real> w = w_in;
    Real sign(1);
    if (w.re < half) {
        w = one - w;
        sign = -1;
    }
    const Real lpi_half = log(real_pi()) / 2;
    CNum<Real> dist1 = w - one;
    Real d1 = abs(dist1);
    if (d1 > Real(1) / 4) {
        CNum<Real> out = one / w + one / dist1 - CNum<Real>(lpi_half)
                       + digamma(w * half, Precision(prec.digits + 5)) * half
                       + zeta_logderiv(w, Precision(prec.digits + 5));
        return sign * out;
    }
    // near the zeta pole: d/dw log((w-1) zeta(w)) = eta'/eta stays finite
    CNum<Real> eta, eta_p;
    if (d1 < pow10(-2 * static_cast<long>(prec.digits))) {
        // exactly (to working resolution) at w = 1
        eta = CNum<Real>(one);
        eta_p = -digamma(CNum<Real>(one), Precision(prec.digits + 5)); // Euler gamma
    } else {
        long cancel = static_cast<long>(em::to_dbl(-log10(d1))) + 1;
        if (cancel > 2 * static_cast<long>(prec.digits)) cancel = 2 * prec.digits;
        PrecisionScope inner(prec.digits + 12 + static_cast<unsigned>(2 * cancel));
        CNum<Real> wi(Real(w.re), Real(w.im));
        CNum<Real> di = wi - one;
        auto ev = em::zeta_em<Real>(wi, prec.digits + 8 + static_cast<unsigned>(2 * cancel), true);
        eta = di * ev.value;
        eta_p = ev.value + di * ev.deriv;
    }
    CNum<Real> out = one / w - CNum<Real>(lpi_half)
                   + digamma(w * half, Precision(prec.digits + 5)) * half
                   + eta_p / eta;
    return sign * out;
}

/// xi'_F/xi_F(s) for the zeta product: sum_i xi'/xi(s - a_i) + xi'/xi(s + a_i).
inline CNum<Real> completed_xi_logderiv(const ZetaProductSpec& spec, const CNum<Real>& s,
                                        Precision prec) {
    PrecisionScope scope(prec.digits + 10);
    CNum<Real> acc;
    for (const auto& a : spec.shifts) {
        Real av = to_real(a);
        acc += xi_logderiv_zeta(s - av, prec);
        acc += xi_logderiv_zeta(s + av, prec);
    }
    return acc;
}

} // namespace tauli
