// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstddef>
#include <optional>
#include <thread>
#include <vector>

#include "tauli/bounds.hpp"
#include "tauli/errors.hpp"
#include "tauli/model.hpp"
#include "tauli/real.hpp"
#include "tauli/special.hpp"
#include "tauli/zeros.hpp"

namespace tauli {

/// Partial tau-Li value lambda*_F(n, tau, T): the zero sum truncated at
/// height T.  The sum is real: conjugate pairing cancels the imaginary
/// parts exactly (term by term), so the accumulation works with
/// 2 Re(1 - z^n) per positive-ordinate zero; im_residual records the
/// (identically zero) discarded imaginary content and the invariant
/// |im_residual| <= 10^{5-prec} |value| is asserted downstream.
struct LiPartial {
    unsigned n = 0;
    Real tau;
    Real height_t;
    Real value;
    Real im_residual;
    Precision prec;
    std::size_t zero_count_used = 0;
};

/// Execution controls.  Results are bit-identical for any worker count:
/// the pair stream is cut into fixed-size chunks, each chunk is summed
/// sequentially with compensated (Neumaier) accumulation, and chunk totals
/// are folded in index order.
struct SumOptions {
    unsigned workers = 1;
    std::size_t chunk_pairs = 4096;
};

namespace detail {

struct Neumaier {
    Real sum;
    Real comp;
    void add(const Real& v) {
        Real t = sum + v;
        if (abs(sum) >= abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    Real total() const { return sum + comp; }
};

/// Splits [0, total_pairs) into fixed chunks, runs fn(chunk_index, lo, hi)
/// on the worker pool, with slot storage supplied by the caller.
template <class Fn>
void run_chunked(std::size_t total_pairs, const SumOptions& opt, Fn&& fn) {
    const std::size_t chunk = opt.chunk_pairs ? opt.chunk_pairs : 4096;
    const std::size_t n_chunks = (total_pairs + chunk - 1) / chunk;
    std::atomic<std::size_t> cursor{0};
    auto work = [&]() {
        for (;;) {
            std::size_t c = cursor.fetch_add(1);
            if (c >= n_chunks) return;
            std::size_t lo = c * chunk;
            std::size_t hi = std::min(total_pairs, lo + chunk);
            fn(c, lo, hi);
        }
    };
    unsigned workers = opt.workers ? opt.workers : 1;
    if (workers == 1 || n_chunks <= 1) {
        work();
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
}

} // namespace detail

/// Shared sweep core: values of lambda*(n, tau, T) for every n in the
/// ascending grid, one pass over the zeros.  Per conjugate pair the ratio
/// z = rho/(rho - tau) is computed once and its powers walk the n-grid by
/// repeated multiplication with precomputed gap powers (no complex exp/log,
/// hence no branch-cut hazards near the negative real axis).
inline std::vector<LiPartial> li_series_sweep(const ZetaProductSpec& spec,
                                              const ZeroTable& table,
                                              const std::vector<unsigned>& n_list,
                                              const Real& tau, const Real& height_t,
                                              Precision prec, SumOptions opt = {}) {
    spec.validate();
    if (n_list.empty()) throw DomainError("li_series_sweep: empty n grid");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 1) throw DomainError("li_series_sweep: n >= 1 required");
        if (i && n_list[i] <= n_list[i - 1])
            throw DomainError("li_series_sweep: n grid must be strictly ascending");
    }
    // The criterion-natural interval [sigma1, 2 sigma0] is enforced at the
    // command layer (tau_domain); the sum itself is defined for any real
    // tau off Z(F), and the single-zero construction examples use it so.
    PrecisionScope scope(prec.digits);
    auto stream = enumerate_f_zeros(table, spec, height_t);
    // degenerate-tau guard: for real tau the distance to any zero is at
    // least the first ordinate, so only absurd tables can trigger it
    if (stream.n_ordinates > 0 && table.t0() < pow10(-static_cast<long>(prec.digits) / 2))
        throw DomainError("li_series_sweep: tau within resolution of a zero of F");

    const std::size_t k2 = 2 * spec.k();
    const std::size_t total_pairs = stream.n_ordinates * k2;
    const std::size_t n_para = n_list.size();

    // uniform working-precision copies for the parallel region
    const Real tau_w = round_to_current(tau);
    std::vector<Real> ords;
    ords.reserve(stream.n_ordinates);
    for (std::size_t i = 0; i < stream.n_ordinates; ++i)
        ords.push_back(round_to_current(table.ordinates[i]));

    // gap powers along the grid; gaps usually repeat (fixed step), so the
    // per-pair binary powers are computed once per distinct gap
    std::vector<unsigned> gaps;
    gaps.push_back(n_list[0]);
    for (std::size_t i = 1; i < n_list.size(); ++i) gaps.push_back(n_list[i] - n_list[i - 1]);
    std::vector<unsigned> uniq_gaps;
    std::vector<std::size_t> gap_index(gaps.size());
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        auto it = std::find(uniq_gaps.begin(), uniq_gaps.end(), gaps[i]);
        if (it == uniq_gaps.end()) {
            uniq_gaps.push_back(gaps[i]);
            gap_index[i] = uniq_gaps.size() - 1;
        } else {
            gap_index[i] = static_cast<std::size_t>(it - uniq_gaps.begin());
        }
    }

    // real parts of the pair representatives, ordinate-major layout
    std::vector<Real> res;
    {
        const Real half = Real(1) / 2;
        for (const auto& a : spec.shifts) {
            Real av = to_real(a);
            res.push_back(half + av);
            res.push_back(half - av);
        }
    }

    const std::size_t chunk = opt.chunk_pairs ? opt.chunk_pairs : 4096;
    const std::size_t n_chunks = total_pairs == 0 ? 0 : (total_pairs + chunk - 1) / chunk;
    std::vector<std::vector<Real>> chunk_totals(n_chunks);

    detail::run_chunked(total_pairs, opt, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        std::vector<detail::Neumaier> acc(n_para);
        std::vector<CNum<Real>> gap_pow(uniq_gaps.size());
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const Real& t = ords[idx / k2];
            const Real& re = res[idx % k2];
            CNum<Real> rho(re, t);
            CNum<Real> z = rho / (rho - tau_w);
            for (std::size_t g = 0; g < uniq_gaps.size(); ++g) gap_pow[g] = pow_ui(z, uniq_gaps[g]);
            CNum<Real> zp(Real(1));
            for (std::size_t i = 0; i < n_para; ++i) {
                zp *= gap_pow[gap_index[i]];
                acc[i].add(2 * (1 - zp.re));
            }
        }
        auto& out = chunk_totals[c];
        out.reserve(n_para);
        for (auto& a : acc) out.push_back(a.total());
    });

    std::vector<LiPartial> result(n_para);
    for (std::size_t i = 0; i < n_para; ++i) {
        detail::Neumaier fold;
        for (std::size_t c = 0; c < n_chunks; ++c) fold.add(chunk_totals[c][i]);
        auto& r = result[i];
        r.n = n_list[i];
        r.tau = tau;
        r.height_t = height_t;
        r.value = fold.total();
        r.im_residual = Real(0); // exact conjugate cancellation
        r.prec = prec;
        r.zero_count_used = stream.zero_count();
    }
    return result;
}

/// Single-point partial sum.
inline LiPartial li_partial_sum(const ZetaProductSpec& spec, const ZeroTable& table, unsigned n,
                                const Real& tau, const Real& height_t, Precision prec,
                                SumOptions opt = {}) {
    return li_series_sweep(spec, table, {n}, tau, height_t, prec, opt).front();
}

/// Source of the b_F = xi'_F/xi_F(0) constant in the binomial route.
enum class BinomialB0 {
    from_special,        // Euler-Maclaurin evaluation (mixes exact + truncated)
    truncated_surrogate, // -sum_{|Im rho| <= T} 1/rho: exact algebraic identity
};

/// Alternate representation over the same finite zero set:
///   n tau b_F + n tau^2 sum 1/(rho (tau-rho)) - sum_{k=2}^n C(n,k) sum (tau/(rho-tau))^k.
/// Not error-certified; serves as a cross-validation route.
inline LiPartial li_partial_sum_binomial(const ZetaProductSpec& spec, const ZeroTable& table,
                                         unsigned n, const Real& tau, const Real& height_t,
                                         Precision prec,
                                         BinomialB0 b0_mode = BinomialB0::from_special,
                                         SumOptions opt = {}) {
    spec.validate();
    if (n < 1) throw DomainError("li_partial_sum_binomial: n >= 1 required");
    PrecisionScope scope(prec.digits);
    auto stream = enumerate_f_zeros(table, spec, height_t);

    const std::size_t k2 = 2 * spec.k();
    const std::size_t total_pairs = stream.n_ordinates * k2;
    std::vector<Real> res;
    {
        const Real half = Real(1) / 2;
        for (const auto& a : spec.shifts) {
            Real av = to_real(a);
            res.push_back(half + av);
            res.push_back(half - av);
        }
    }

    const std::size_t chunk = opt.chunk_pairs ? opt.chunk_pairs : 4096;
    const std::size_t n_chunks = total_pairs == 0 ? 0 : (total_pairs + chunk - 1) / chunk;
    // slots: [inv_rho, rho_tau_inv, w^2..w^n] per chunk
    const std::size_t cols = 2 + (n >= 2 ? n - 1 : 0);
    std::vector<std::vector<Real>> chunk_totals(n_chunks);

    const Real tau_w = round_to_current(tau);
    std::vector<Real> ords;
    ords.reserve(stream.n_ordinates);
    for (std::size_t i = 0; i < stream.n_ordinates; ++i)
        ords.push_back(round_to_current(table.ordinates[i]));

    detail::run_chunked(total_pairs, opt, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        std::vector<detail::Neumaier> acc(cols);
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const Real& t = ords[idx / k2];
            const Real& re = res[idx % k2];
            CNum<Real> rho(re, t);
            // 2 Re(1/rho)
            Real nr = norm(rho);
            acc[0].add(2 * rho.re / nr);
            // 2 Re(1/(rho (tau - rho)))
            CNum<Real> d = (tau_w - rho);
            CNum<Real> f = CNum<Real>(Real(1)) / (rho * d);
            acc[1].add(2 * f.re);
            // powers of w = tau / (rho - tau)
            if (n >= 2) {
                CNum<Real> w = tau_w / (rho - tau_w);
                CNum<Real> wp = w;
                for (unsigned k = 2; k <= n; ++k) {
                    wp *= w;
                    acc[2 + (k - 2)].add(2 * wp.re);
                }
            }
        }
        auto& out = chunk_totals[c];
        out.reserve(cols);
        for (auto& a : acc) out.push_back(a.total());
    });

    std::vector<Real> totals(cols, Real(0));
    for (std::size_t col = 0; col < cols; ++col) {
        detail::Neumaier fold;
        for (std::size_t c = 0; c < n_chunks; ++c) fold.add(chunk_totals[c][col]);
        totals[col] = fold.total();
    }

    Real b0;
    if (b0_mode == BinomialB0::truncated_surrogate) {
        b0 = -totals[0];
    } else {
        b0 = completed_xi_logderiv(spec, CNum<Real>(Real(0)), prec).re;
    }

    Real value = Real(n) * tau * b0 + Real(n) * tau * tau * totals[1];
    mpz_class binom(1);
    for (unsigned k = 1; k <= n; ++k) {
        binom *= (n - k + 1);
        binom /= k; // C(n, k)
        if (k >= 2) value -= Real(binom.get_str()) * totals[2 + (k - 2)];
    }

    LiPartial out;
    out.n = n;
    out.tau = tau;
    out.height_t = height_t;
    out.value = value;
    out.im_residual = Real(0);
    out.prec = prec;
    out.zero_count_used = stream.zero_count();
    return out;
}

/// Certified interval around a partial sum: radius = truncation bound plus
/// the selected perturbation bound (Prop 6.4 windows, the zeta-product
/// specialization, or the generic rule; see select_perturbation).
inline LiEstimate combined_interval(const LiPartial& partial, const ZetaProductSpec& spec,
                                    const ZeroTable& table,
                                    std::optional<BoundRule> force_rule = std::nullopt) {
    PrecisionScope scope(partial.prec.digits);
    Real amp = shift_amplitude_A(spec, partial.tau);
    Real trunc = truncation_bound(static_cast<unsigned>(spec.k()), partial.tau, partial.n,
                                  partial.height_t, amp);
    BoundRule rule = BoundRule::prop61;
    Real perturb(0);
    if (force_rule) {
        rule = *force_rule;
        switch (rule) {
        case BoundRule::prop64_tau1:
        case BoundRule::prop64_tau5:
        case BoundRule::prop64_tau10:
            perturb = perturbation_bound_example(partial.tau, partial.n, table.theta0,
                                                 table.theta1);
            break;
        case BoundRule::ex63:
            perturb = perturbation_bound_zeta_product(spec, table.theta0, partial.n, partial.tau);
            break;
        case BoundRule::prop62:
            perturb = perturbation_bound_generic(Real(5) / 4 * Real(static_cast<unsigned>(spec.k())),
                                                 table.t0(), table.theta0, partial.n, partial.tau);
            break;
        case BoundRule::prop61:
            perturb = Real(0);
            break;
        }
    } else {
        auto sel = select_perturbation(spec, table, partial.n, partial.tau);
        rule = sel.first;
        perturb = sel.second;
    }

    LiEstimate est;
    est.n = partial.n;
    est.tau = partial.tau;
    est.center = partial.value;
    est.radius = trunc + perturb;
    est.method = "zero_sum";
    est.certified = rule != BoundRule::prop61;
    est.report.truncation = trunc;
    est.report.perturbation = perturb;
    est.report.rule = rule;
    est.report.k = static_cast<unsigned>(spec.k());
    est.report.tau = partial.tau;
    est.report.n = partial.n;
    est.report.height_t = partial.height_t;
    est.report.shift_amplitude = amp;
    est.report.theta0 = table.theta0;
    est.report.theta1 = table.theta1;
    est.report.c_f = Real(5) / 4 * Real(static_cast<unsigned>(spec.k()));
    est.report.t0 = table.t0();
    return est;
}

} // namespace tauli
