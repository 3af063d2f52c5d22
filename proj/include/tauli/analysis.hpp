// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tauli/bounds.hpp"
#include "tauli/errors.hpp"
#include "tauli/model.hpp"
#include "tauli/special.hpp"
#include "tauli/zeros.hpp"
#include "tauli/zerosum.hpp"

namespace tauli {

// ---------------------------------------------------------------------------
// tau-Li criterion verdicts

enum class CriterionStatus {
    all_nonnegative_within_radius,
    negative_certified,
    inconclusive,
};

inline const char* to_string(CriterionStatus s) {
    switch (s) {
    case CriterionStatus::all_nonnegative_within_radius: return "all_nonnegative_within_radius";
    case CriterionStatus::negative_certified: return "negative_certified";
    case CriterionStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

/// Verdict over one (tau, n-range) run.  Certified negativity
/// (center + radius < 0 at some n) disproves the zero-free strip; the
/// nonnegative outcome is consistency (center - radius >= 0 everywhere),
/// never a proof, since the criterion quantifies over all n.
struct CriterionVerdict {
    Real tau;
    unsigned n_min = 0, n_max = 0;
    CriterionStatus status = CriterionStatus::inconclusive;
    unsigned witness_n = 0; // certified-negative n, or smallest undecided n
};

inline CriterionVerdict criterion_check(const std::vector<LiEstimate>& estimates,
                                        const Real& tau) {
    if (estimates.empty()) throw DomainError("criterion_check: no estimates");
    CriterionVerdict v;
    v.tau = tau;
    v.n_min = estimates.front().n;
    v.n_max = estimates.front().n;
    std::optional<unsigned> undecided;
    for (const auto& e : estimates) {
        if (!(e.tau == tau))
            throw DomainError("criterion_check: estimates mix different tau values");
        v.n_min = std::min(v.n_min, e.n);
        v.n_max = std::max(v.n_max, e.n);
        if (e.certified && e.center + e.radius < 0) {
            v.status = CriterionStatus::negative_certified;
            v.witness_n = e.n;
            return v;
        }
        // negative-looking but uncertified radii never certify
        if (e.center - e.radius < 0 || (!e.certified && e.center + e.radius < 0))
            if (!undecided || e.n < *undecided) undecided = e.n;
    }
    if (undecided) {
        v.status = CriterionStatus::inconclusive;
        v.witness_n = *undecided;
    } else {
        v.status = CriterionStatus::all_nonnegative_within_radius;
    }
    return v;
}

/// Theorem 4.5 harness: F = zeta, G_a(s) = zeta(s-a) zeta(s+a), tau = 2a+1.
/// negative_certified here would certify an off-line zeta zero within the
/// table range.
inline CriterionVerdict rh_harness(const Rational& a, const ZeroTable& table, unsigned n_max,
                                   Precision prec, SumOptions opt = {}) {
    if (!(a > 0)) throw DomainError("rh_harness: a > 0 required");
    if (n_max < 1) throw DomainError("rh_harness: n_max >= 1 required");
    ZetaProductSpec spec;
    spec.shifts = {a};
    PrecisionScope scope(prec.digits);
    Real tau = to_real(Rational(2 * a + 1));
    std::vector<unsigned> grid;
    for (unsigned n = 1; n <= n_max; ++n) grid.push_back(n);
    auto parts = li_series_sweep(spec, table, grid, tau, table.max_ordinate(), prec, opt);
    std::vector<LiEstimate> ests;
    ests.reserve(parts.size());
    for (const auto& p : parts) ests.push_back(combined_interval(p, spec, table));
    return criterion_check(ests, tau);
}

// ---------------------------------------------------------------------------
// Asymptotic-conjecture fit

/// Ratios center/(C_F tau n log n), their tail statistics, and an
/// oscillation indicator (sign changes plus the growth rate of log|center|).
struct FitReport {
    Real c_f;
    Real tau;
    std::size_t used = 0;    // entries with n >= 2
    std::size_t skipped = 0; // n = 1 entries
    Real tail_mean;          // mean ratio over the top half of the n-range
    Real tail_min;
    Real tail_max;
    unsigned sign_changes = 0;
    Real growth_rate; // least-squares slope of log|center| against n
    bool oscillation_indicator = false;
};

inline FitReport asymptotic_fit(const std::vector<LiEstimate>& estimates, const Real& c_f,
                                const Real& tau) {
    if (estimates.empty()) throw DomainError("asymptotic_fit: no estimates");
    FitReport rep;
    rep.c_f = c_f;
    rep.tau = tau;

    std::vector<std::pair<unsigned, Real>> ratios;
    int prev_sign = 0;
    // least-squares slope of log|center| vs n
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t cnt = 0;
    for (const auto& e : estimates) {
        if (e.n < 2) {
            ++rep.skipped;
            continue;
        }
        Real denom = c_f * tau * Real(e.n) * log(Real(e.n));
        ratios.emplace_back(e.n, e.center / denom);
        int sign = e.center > 0 ? 1 : (e.center < 0 ? -1 : 0);
        if (sign != 0 && prev_sign != 0 && sign != prev_sign) ++rep.sign_changes;
        if (sign != 0) prev_sign = sign;
        if (!(e.center == 0)) {
            double x = static_cast<double>(e.n);
            double y = std::log(std::fabs(em::to_dbl(e.center)) + 1e-300);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++cnt;
        }
    }
    rep.used = ratios.size();
    if (ratios.empty()) throw DomainError("asymptotic_fit: need entries with n >= 2");

    std::size_t tail_start = ratios.size() / 2;
    Real sum(0), mn = ratios[tail_start].second, mx = mn;
    for (std::size_t i = tail_start; i < ratios.size(); ++i) {
        const Real& r = ratios[i].second;
        sum += r;
        if (r < mn) mn = r;
        if (r > mx) mx = r;
    }
    rep.tail_mean = sum / Real(static_cast<unsigned>(ratios.size() - tail_start));
    rep.tail_min = mn;
    rep.tail_max = mx;
    double denom = static_cast<double>(cnt) * sxx - sx * sx;
    rep.growth_rate = Real(cnt >= 2 && denom != 0 ? (static_cast<double>(cnt) * sxy - sx * sy) / denom : 0.0);
    rep.oscillation_indicator = rep.sign_changes > 0;
    return rep;
}

// ---------------------------------------------------------------------------
// Prop 3.6 identity checks

/// Residual of xi'_F/xi_F(s) = sum_{|Im rho| <= T} 1/(s - rho), with a
/// heuristic tail scale K log(T)/T (1 + |s|) for context (not certified).
struct LogderivResidual {
    CNum<Real> lhs;        // completed xi log-derivative
    CNum<Real> rhs;        // truncated zero sum
    Real residual;         // |lhs - rhs|
    Real tail_scale;       // heuristic magnitude of the missing tail
    std::size_t zeros_used = 0;
};

inline LogderivResidual verify_logderiv_identity(const ZetaProductSpec& spec,
                                                 const ZeroTable& table, const CNum<Real>& s,
                                                 const Real& height_t, Precision prec,
                                                 SumOptions opt = {}) {
    spec.validate();
    PrecisionScope scope(prec.digits);
    if (abs(s.im) > height_t / 2)
        throw DomainError("verify_logderiv_identity: |Im s| <= T/2 required");

    auto stream = enumerate_f_zeros(table, spec, height_t);
    const std::size_t k2 = 2 * spec.k();
    const std::size_t total_pairs = stream.n_ordinates * k2;
    const Real s_re = round_to_current(s.re);
    const Real s_im = round_to_current(s.im);
    std::vector<Real> ords;
    ords.reserve(stream.n_ordinates);
    for (std::size_t i = 0; i < stream.n_ordinates; ++i)
        ords.push_back(round_to_current(table.ordinates[i]));
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
    std::vector<std::pair<Real, Real>> chunk_totals(n_chunks, {Real(0), Real(0)});

    detail::run_chunked(total_pairs, opt, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        detail::Neumaier acc_re, acc_im;
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const Real& t = ords[idx / k2];
            const Real& re = res[idx % k2];
            // 1/(s - rho) + 1/(s - conj(rho))
            CNum<Real> d1(s_re - re, s_im - t);
            CNum<Real> d2(s_re - re, s_im + t);
            CNum<Real> term = CNum<Real>(Real(1)) / d1 + CNum<Real>(Real(1)) / d2;
            acc_re.add(term.re);
            acc_im.add(term.im);
        }
        chunk_totals[c] = {acc_re.total(), acc_im.total()};
    });

    detail::Neumaier fr, fi;
    for (const auto& ct : chunk_totals) {
        fr.add(ct.first);
        fi.add(ct.second);
    }

    LogderivResidual out;
    out.rhs = CNum<Real>(fr.total(), fi.total());
    out.lhs = completed_xi_logderiv(spec, s, prec);
    out.residual = abs(out.lhs - out.rhs);
    out.tail_scale = Real(static_cast<unsigned>(spec.k())) * log(height_t) / height_t *
                     (1 + abs(s));
    out.zeros_used = stream.zero_count();
    return out;
}

} // namespace tauli
