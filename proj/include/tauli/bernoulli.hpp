// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "tauli/real.hpp"

namespace tauli {

/// Exact Bernoulli numbers B_0..B_m (even index; odd > 1 are zero) via the
/// binomial recurrence sum_{j<=m} C(m+1,j) B_j = 0.  Cached, thread-safe.
inline const std::vector<Rational>& bernoulli_exact(std::size_t m_max) {
    static std::vector<Rational> cache{Rational(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= m_max) {
        std::size_t m = cache.size();
        Rational acc(0);
        mpz_class binom(1); // C(m+1, 0)
        for (std::size_t j = 0; j < m; ++j) {
            acc += Rational(binom) * cache[j];
            // C(m+1, j+1) from C(m+1, j)
            binom *= static_cast<unsigned long>(m + 1 - j);
            binom /= static_cast<unsigned long>(j + 1);
        }
        cache.push_back(-acc / Rational(static_cast<long>(m + 1)));
    }
    return cache;
}

namespace detail {

/// B_{2r}/(2r)! for the Euler-Maclaurin tail.  Exact rationals up to
/// r = 128; beyond that via B_{2r}/(2r)! = (-1)^{r+1} 2 zeta(2r)/(2pi)^{2r},
/// where zeta(2r) is a fast direct sum at those indices.
inline Real em_coefficient(std::size_t r) {
    constexpr std::size_t exact_cap = 128;
    if (r <= exact_cap) {
        const auto& b = bernoulli_exact(2 * r);
        mpz_class fact;
        mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(2 * r));
        return to_real(b[2 * r] / Rational(fact));
    }
    const Real one(1);
    Real z(0);
    Real eps = pow10(-static_cast<long>(current_digits()) - 5);
    for (unsigned long j = 1;; ++j) {
        Real term = one / boost::multiprecision::pow(Real(j), static_cast<long>(2 * r));
        z += term;
        if (term < eps) break;
    }
    Real two_pi_pow = boost::multiprecision::pow(2 * real_pi(), static_cast<long>(2 * r));
    Real c = 2 * z / two_pi_pow;
    return (r % 2 == 0) ? -c : c;
}

} // namespace detail

/// First `count` Euler-Maclaurin coefficients B_2/2!, B_4/4!, ... at `digits`
/// working precision.  Snapshots are immutable; safe to share across threads.
inline std::shared_ptr<const std::vector<Real>> em_coefficients(std::size_t count,
                                                                unsigned digits) {
    static std::map<unsigned, std::shared_ptr<const std::vector<Real>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[digits];
    if (!slot || slot->size() < count) {
        PrecisionScope scope(digits);
        auto grown = slot ? std::make_shared<std::vector<Real>>(*slot)
                          : std::make_shared<std::vector<Real>>();
        while (grown->size() < count) grown->push_back(detail::em_coefficient(grown->size() + 1));
        slot = grown;
    }
    return slot;
}

} // namespace tauli
