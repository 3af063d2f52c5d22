// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <vector>

#include "tauli/bounds.hpp"
#include "tauli/errors.hpp"
#include "tauli/model.hpp"
#include "tauli/real.hpp"
#include "tauli/special.hpp"

namespace tauli {

// ---------------------------------------------------------------------------
// Pole sums shared by both arithmetic formulas.
//
// For this family the completed function is the full product of shifted
// Riemann xi factors, whose polynomial part pairs EVERY pole s_i with its
// reflection sigma1 - s_i (the would-be spurious zeros at reflection points
// coincide with gamma-factor poles and cancel).  Both sums therefore run
// over the whole pole set:
//
//   sum_i m_i (1 - (s_i/(s_i - tau))^n)          [s_i = tau skipped]
// + sum_i m_i (1 - (w_i/(w_i - tau))^n),  w_i = sigma1 - s_i.
//
// The n = 1 case reduces to tau * xi'_F/xi_F(tau) expanded through
// 1/w + 1/(w-1) terms, which pins this convention; the route-equivalence
// suite checks it against the zero sums.
inline Real pole_terms(const LFunctionDescriptor& desc, unsigned n, const Rational& tau,
                       Precision prec) {
    if (n < 1) throw DomainError("pole_terms: n >= 1 required");
    PrecisionScope scope(prec.digits + 10);
    Real acc(0);
    for (const auto& p : desc.poles) {
        if (p.s != tau) {
            Rational q = p.s / (p.s - tau);
            acc += Real(static_cast<long>(p.m)) *
                   (1 - pow(to_real(q), static_cast<int>(n)));
        }
        Rational w = desc.sigma1 - p.s;
        if (w == tau)
            throw DomainError("pole_terms: tau = sigma1 - s_i is excluded (degenerate)");
        Rational qw = w / (w - tau);
        acc += Real(static_cast<long>(p.m)) * (1 - pow(to_real(qw), static_cast<int>(n)));
    }
    return acc;
}

/// Gamma-factor sum sum_k sum_j C(n,k) (tau lambda_j)^k / (k-1)!
/// psi^{(k-1)}(lambda_j tau + mu_j); requires every lambda_j tau + mu_j > 0.
inline Real gamma_term_sum(const LFunctionDescriptor& desc, unsigned n, const Rational& tau,
                           Precision prec) {
    PrecisionScope scope(prec.digits + 10);
    Precision inner(prec.digits + 10);
    Real acc(0);
    for (const auto& g : desc.gamma_factors) {
        Rational arg_q = g.lambda * tau + g.mu;
        if (arg_q <= 0)
            throw DomainError("gamma_term_sum: lambda_j tau + mu_j <= 0 for some j");
        Real x = to_real(arg_q);
        Real tl = to_real(g.lambda * tau);
        // psi^{(k-1)}(x) for k = 1..n
        Real tl_pow = tl;          // (tau lambda)^k
        Real km1_fact(1);          // (k-1)!
        mpz_class binom(1);
        for (unsigned k = 1; k <= n; ++k) {
            binom *= (n - k + 1);
            binom /= k; // C(n,k)
            Real psi = polygamma(k - 1, x, inner);
            acc += Real(binom.get_str()) * tl_pow / km1_fact * psi;
            tl_pow *= tl;
            km1_fact *= k;
        }
    }
    return acc;
}

/// Upper bound on the truncated Dirichlet tail
///   sum_{m>M} c_F(m) m^{-tau} |L^1_{n-1}(tau log m)|
/// via c_F(m) <= 2K log(m) m^{alpha_max} and the termwise Laguerre bound
/// |L^1_{n-1}(x)| <= sum_j C(n, n-1-j) x^j / j!; each integral
/// int_{M-1}^inf (log x)^{j+1} x^{-beta-1} dx closes to
/// Gamma(j+2, beta log(M-1)) / beta^{j+2} with beta = tau - alpha_max - 1.
/// When M-1 sits left of an integrand's peak, that term gains one peak
/// value (integral test for unimodal summands).
inline Real dirichlet_tail_bound(const ZetaProductSpec& spec, unsigned n, const Rational& tau,
                                 std::uint64_t m_trunc, Precision prec = Precision(50)) {
    spec.validate();
    if (m_trunc < 2) throw DomainError("dirichlet_tail_bound: M >= 2 required");
    Rational beta_q = tau - spec.alpha_max() - 1;
    if (beta_q <= 0)
        throw DomainError("dirichlet_tail_bound: requires tau > alpha_max + 1 (divergent otherwise)");
    PrecisionScope scope(prec.digits + 10);
    const Real beta = to_real(beta_q);
    const Real tau_r = to_real(Rational(tau));
    const Real lx0 = log(Real(m_trunc - 1)); // log(M-1)
    const Real x_arg = beta * lx0;
    const Real expmx = exp(-x_arg);

    Real total(0);
    mpz_class binom; // C(n, n-1-j) = C(n, j+1)
    binom = 1;
    Real tau_pow(1); // tau^j
    Real j_fact(1);  // j!
    for (unsigned j = 0; j + 1 <= n; ++j) {
        // advance binom to C(n, j+1)
        binom *= (n - j);
        binom /= (j + 1);
        // Gamma(j+2, x) = (j+1)! e^{-x} sum_{i<=j+1} x^i / i!
        Real series(0);
        Real x_pow(1);
        Real i_fact(1);
        for (unsigned i = 0; i <= j + 1; ++i) {
            series += x_pow / i_fact;
            x_pow *= x_arg;
            i_fact *= (i + 1);
        }
        mpz_class jp1_fact;
        mpz_fac_ui(jp1_fact.get_mpz_t(), j + 1);
        Real inc_gamma = Real(jp1_fact.get_str()) * expmx * series;
        Real integral = inc_gamma / pow(beta, static_cast<int>(j) + 2);
        // unimodal peak correction: f(x) = (log x)^{j+1} x^{-beta-1} peaks
        // at log x = (j+1)/(beta+1)
        Real peak_log = Real(j + 1) / (beta + 1);
        Real correction(0);
        if (lx0 < peak_log)
            correction = pow(peak_log, static_cast<int>(j) + 1) * exp(-(beta + 1) * peak_log);
        total += Real(binom.get_str()) * tau_pow / j_fact * (integral + correction);
        tau_pow *= tau_r;
        j_fact *= (j + 1);
    }
    return 2 * Real(static_cast<unsigned>(spec.k())) * total;
}

/// lambda_F(n, tau) for tau in (sigma0, 2 sigma0]: pole sums, gamma sum,
/// n tau log Q_F, and the truncated Dirichlet series
/// -tau sum_{m<=M} c_F(m) m^{-tau} L^1_{n-1}(tau log m); the radius is the
/// Dirichlet tail bound plus working-precision slack.
inline LiEstimate li_arithmetic_high_tau(const ZetaProductSpec& spec, unsigned n,
                                         const Rational& tau, std::uint64_t m_trunc,
                                         Precision prec = Precision(160)) {
    spec.validate();
    if (n < 1) throw DomainError("li_arithmetic_high_tau: n >= 1 required");
    if (m_trunc < 2) throw DomainError("li_arithmetic_high_tau: M_trunc >= 2 required");
    auto desc = zeta_product_descriptor(spec);
    if (!(tau > desc.sigma0) || !(tau <= 2 * desc.sigma0))
        throw DomainError(
            "li_arithmetic_high_tau: tau must lie in (sigma0, 2 sigma0]; use the "
            "general-tau route (Laurent form) below sigma0");

    PrecisionScope scope(prec.digits + 10);
    const Real tau_r = to_real(Rational(tau));

    Real center = pole_terms(desc, n, tau, prec);
    center += gamma_term_sum(desc, n, tau, prec);
    center += Real(n) * tau_r * log(desc.q_f);

    // Dirichlet series over prime powers
    Real dsum(0);
    DirichletCoefficients gen{spec, Precision(prec.digits + 10)};
    gen.for_each(m_trunc, [&](std::uint64_t m, const Real& c) {
        Real x = tau_r * log(Real(m));
        Real lag = laguerre_assoc1(n - 1, x, Precision(prec.digits + 10));
        dsum += c * pow(Real(m), -tau_r) * lag;
    });
    center -= tau_r * dsum;

    Real tail = dirichlet_tail_bound(spec, n, tau, m_trunc, prec);
    Real slack = pow10(10 - static_cast<long>(prec.digits)) * (abs(center) + 1);

    LiEstimate est;
    est.n = n;
    est.tau = tau_r;
    est.center = center;
    est.radius = tail + slack;
    est.method = "arithmetic_high_tau";
    est.report.rule = BoundRule::prop61;
    est.report.truncation = tail;
    est.report.perturbation = slack;
    est.report.k = static_cast<unsigned>(spec.k());
    est.report.tau = tau_r;
    est.report.n = n;
    return est;
}

// ---------------------------------------------------------------------------
// Laurent expansion of F'/F at s = tau

struct LaurentExpansion {
    Rational tau;
    long b_minus1 = 0;           // integer by Thm; -(pole order of F at tau)
    std::vector<Real> b;         // b_0 .. b_{count-1}
    std::vector<Real> delta;     // per-coefficient uncertainty estimate
    Real radius_used;
    long certified_digits = 0;
};

/// Laurent coefficients of F'/F around tau by trapezoidal contour
/// quadrature (spectrally accurate for the analytic integrand), node count
/// doubled until two resolutions agree to the target digits.  The contour
/// radius is half the distance to the nearest other singularity: the other
/// poles (exact rationals) and the first zeta zero ordinate govern it.
inline LaurentExpansion laurent_coefficients(const ZetaProductSpec& spec, const Rational& tau,
                                             unsigned count, Precision prec = Precision(160)) {
    spec.validate();
    if (count > 64)
        throw DomainError("laurent_coefficients: count capped at 64 (contour quadrature "
                          "loses ~k log10(1/r) digits for b_k)");
    auto desc = zeta_product_descriptor(spec);

    PrecisionScope scope(prec.digits + 12);
    // distance to the nearest singularity: other poles and the zero ordinate
    Real min_dist("14.13"); // first zeta zero height bounds all zero distances
    for (const auto& p : desc.poles) {
        if (p.s == tau) continue;
        Real dist = abs(to_real(p.s - tau));
        if (dist < min_dist) min_dist = dist;
    }
    Real radius = min_dist / 2;
    const Real tau_r = to_real(Rational(tau));

    // pole order of F at tau (for b_{-1} validation)
    long order_at_tau = 0;
    for (const auto& p : desc.poles)
        if (p.s == tau) order_at_tau += p.m;

    auto eval_ring = [&](unsigned q_nodes) {
        std::vector<Real> re(count + 1, Real(0)), im(count + 1, Real(0));
        const Real pi = real_pi();
        for (unsigned q = 0; q < q_nodes; ++q) {
            Real theta = 2 * pi * Real(q) / Real(q_nodes);
            CNum<Real> node(tau_r + radius * cos(theta), radius * sin(theta));
            CNum<Real> f;
            for (const auto& a : spec.shifts) {
                Real av = to_real(a);
                f += zeta_logderiv(node - av, Precision(prec.digits + 8));
                f += zeta_logderiv(node + av, Precision(prec.digits + 8));
            }
            // accumulate f * e^{-i k theta} for k = -1 .. count-1
            CNum<Real> rot(cos(theta), -sin(theta));
            CNum<Real> w = conj(rot); // e^{+i theta} for k = -1
            for (unsigned idx = 0; idx <= count; ++idx) {
                CNum<Real> term = f * w;
                re[idx] += term.re;
                im[idx] += term.im;
                w *= rot;
            }
        }
        // b_k = (1/(Q r^k)) sum_q f_q e^{-i k theta_q}; idx 0 holds k = -1
        std::vector<Real> out_re(count + 1), out_im(count + 1);
        Real rk = radius;
        for (unsigned idx = 0; idx <= count; ++idx) {
            out_re[idx] = re[idx] * rk / Real(q_nodes);
            out_im[idx] = im[idx] * rk / Real(q_nodes);
            rk /= radius;
        }
        return std::make_pair(out_re, out_im);
    };

    unsigned q_nodes = 64;
    while (q_nodes < 2 * count + 8) q_nodes *= 2;
    auto coarse = eval_ring(q_nodes);
    auto fine = eval_ring(2 * q_nodes);
    // one more doubling if the head coefficients have not settled
    Real head_diff = abs(coarse.first[0] - fine.first[0]) + abs(coarse.first[1] - fine.first[1]);
    if (head_diff > pow10(-static_cast<long>(prec.digits) / 2)) {
        coarse = std::move(fine);
        fine = eval_ring(4 * q_nodes);
    }

    LaurentExpansion lx;
    lx.tau = tau;
    lx.radius_used = radius;
    lx.b.reserve(count);
    lx.delta.reserve(count);
    Real worst_rel(0);
    for (unsigned idx = 0; idx <= count; ++idx) {
        Real d = abs(fine.first[idx] - coarse.first[idx]) + abs(fine.second[idx]);
        Real scale = abs(fine.first[idx]) + 1;
        if (d / scale > worst_rel) worst_rel = d / scale;
        if (idx == 0) {
            Real rounded = round(fine.first[0]);
            if (abs(fine.first[0] - rounded) > Real(1) / 1000)
                throw PrecisionError("laurent_coefficients: b_{-1} not near an integer");
            lx.b_minus1 = static_cast<long>(em::to_dbl(rounded));
            if (lx.b_minus1 != -order_at_tau)
                throw PrecisionError("laurent_coefficients: b_{-1} disagrees with the pole order");
        } else {
            lx.b.push_back(fine.first[idx]);
            lx.delta.push_back(d + pow10(8 - static_cast<long>(prec.digits)) * scale);
        }
    }
    lx.certified_digits =
        worst_rel > 0 ? static_cast<long>(em::to_dbl(-log10(worst_rel))) : prec.digits;
    return lx;
}

/// lambda_F(n, tau) for tau in [sigma1, 2 sigma0] minus the reflected-pole
/// points: pole sums (s_i = tau grouped into the Laurent data), gamma sum,
/// n tau log Q_F, and sum_k C(n,k) tau^k b_{k-1}.
inline LiEstimate li_arithmetic_general_tau(const ZetaProductSpec& spec, unsigned n,
                                            const Rational& tau,
                                            Precision prec = Precision(160)) {
    spec.validate();
    if (n < 1) throw DomainError("li_arithmetic_general_tau: n >= 1 required");
    auto desc = zeta_product_descriptor(spec);
    if (!(tau >= desc.sigma1) || !(tau > 0) || !(tau <= 2 * desc.sigma0))
        throw DomainError("li_arithmetic_general_tau: tau outside [sigma1, 2 sigma0]");
    for (const auto& p : desc.poles)
        if (desc.sigma1 - p.s == tau)
            throw DomainError("li_arithmetic_general_tau: tau = sigma1 - s_i excluded "
                              "(Laurent route degenerate here)");

    PrecisionScope scope(prec.digits + 10);
    const Real tau_r = to_real(Rational(tau));

    auto lx = laurent_coefficients(spec, tau, n, prec);

    Real center = pole_terms(desc, n, tau, prec);
    center += gamma_term_sum(desc, n, tau, prec);
    center += Real(n) * tau_r * log(desc.q_f);

    Real radius = pow10(10 - static_cast<long>(prec.digits)) * (abs(center) + 1);
    mpz_class binom(1);
    Real tau_pow(1);
    for (unsigned k = 1; k <= n; ++k) {
        binom *= (n - k + 1);
        binom /= k;
        tau_pow *= tau_r;
        center += Real(binom.get_str()) * tau_pow * lx.b[k - 1];
        radius += Real(binom.get_str()) * tau_pow * lx.delta[k - 1];
    }

    LiEstimate est;
    est.n = n;
    est.tau = tau_r;
    est.center = center;
    est.radius = radius;
    est.method = "arithmetic_general";
    est.report.rule = BoundRule::prop61;
    est.report.truncation = Real(0);
    est.report.perturbation = radius;
    est.report.k = static_cast<unsigned>(spec.k());
    est.report.tau = tau_r;
    est.report.n = n;
    return est;
}

} // namespace tauli
