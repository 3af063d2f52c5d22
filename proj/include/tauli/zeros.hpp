// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include "tauli/cnum.hpp"
#include "tauli/errors.hpp"
#include "tauli/model.hpp"
#include "tauli/real.hpp"
#include "tauli/zetaem.hpp"

namespace tauli {

/// Sorted positive ordinates t of zeta zeros 1/2 + it, with a two-tier
/// precision stamp: entries before tier_boundary carry theta1, the rest
/// theta0.  Source tokens are kept verbatim so no digits are lost at
/// ingest; parsed values are held at the table's working precision.
struct ZeroTable {
    std::vector<std::string> raw;
    std::vector<Real> ordinates;
    unsigned digits = 50;
    std::size_t tier_boundary = 0;
    Real theta0;
    Real theta1;

    std::size_t count() const { return ordinates.size(); }
    const Real& max_ordinate() const {
        if (ordinates.empty()) throw DomainError("ZeroTable: empty");
        return ordinates.back();
    }
    /// Number of ordinates <= height.
    std::size_t count_below(const Real& height) const {
        return static_cast<std::size_t>(
            std::upper_bound(ordinates.begin(), ordinates.end(), height) -
            ordinates.begin());
    }
    /// First ordinate; the paper's t_0 with 14.13 < t_0 < 14.14.
    const Real& t0() const {
        if (ordinates.empty()) throw DomainError("ZeroTable: empty");
        return ordinates.front();
    }
};

/// Parses whitespace/newline-separated ascending decimal ordinates.  All
/// source digits are retained; values are additionally parsed at `prec`.
inline ZeroTable parse_zero_table(std::istream& in, const Real& theta0, const Real& theta1,
                                  std::size_t tier_boundary, Precision prec = Precision(50)) {
    ZeroTable t;
    t.digits = prec.digits;
    t.theta0 = theta0;
    t.theta1 = theta1;
    t.tier_boundary = tier_boundary;
    PrecisionScope scope(prec.digits);

    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            if (pos >= line.size()) break;
            std::size_t start = pos;
            while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            std::string tok = line.substr(start, pos - start);
            if (tok.find_first_not_of("0123456789.eE+-") != std::string::npos ||
                tok.find_first_of("0123456789") == std::string::npos)
                throw ParseError("invalid ordinate token '" + tok + "'", line_no);
            Real v;
            try {
                v = Real(tok);
            } catch (const std::exception&) {
                throw ParseError("invalid ordinate token '" + tok + "'", line_no);
            }
            if (!(v > 0)) throw ParseError("ordinate must be positive", line_no);
            if (!t.ordinates.empty() && !(v > t.ordinates.back()))
                throw ParseError("ordinates not strictly increasing", line_no);
            t.raw.push_back(std::move(tok));
            t.ordinates.push_back(std::move(v));
        }
    }
    if (t.ordinates.empty()) throw ParseError("empty zero table");
    return t;
}

/// Replaces the first `head.count()` entries with the high-precision head
/// after checking both tables describe the same zeros (agreement within
/// max(theta0, 1e-6)).
inline ZeroTable with_head(ZeroTable table, const ZeroTable& head) {
    if (head.count() > table.count())
        throw DomainError("with_head: head longer than the table");
    PrecisionScope scope(std::max(table.digits, head.digits));
    Real tol = table.theta0;
    if (tol < Real("1e-6")) tol = Real("1e-6");
    for (std::size_t i = 0; i < head.count(); ++i)
        if (abs(head.ordinates[i] - table.ordinates[i]) > tol)
            throw DomainError("with_head: head entry " + std::to_string(i + 1) +
                              " disagrees with the table");
    for (std::size_t i = 0; i < head.count(); ++i) {
        table.raw[i] = head.raw[i];
        table.ordinates[i] = head.ordinates[i];
    }
    table.tier_boundary = head.count();
    table.theta1 = head.theta1;
    if (head.digits > table.digits) table.digits = head.digits;
    return table;
}

/// Loads a table (and optional high-precision head file) from disk.
inline ZeroTable load_zero_table(const std::string& path, const std::string& head_path,
                                 const Real& theta0, const Real& theta1,
                                 Precision prec = Precision(50),
                                 unsigned head_digits = 1010) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open zero table '" + path + "'");
    ZeroTable t = parse_zero_table(in, theta0, theta1, 0, prec);
    if (!head_path.empty()) {
        std::ifstream hin(head_path);
        if (!hin) throw ParseError("cannot open zero head table '" + head_path + "'");
        ZeroTable h = parse_zero_table(hin, theta1, theta1, 0, Precision(head_digits));
        t = with_head(std::move(t), h);
    } else {
        t.tier_boundary = std::min<std::size_t>(9, t.count());
    }
    return t;
}

/// Checks (a) strict monotonicity, (b) the Riemann-von Mangoldt count window
/// |count(t) - (t/2pi log(t/2pi) - t/2pi)| <= 8.9 log t at every prefix
/// height t >= 319, and (c) the first-ordinate window (14.13, 14.14).
inline ValidationReport validate_table(const ZeroTable& t) {
    ValidationReport rep;
    if (t.ordinates.empty()) {
        rep.violations.push_back("table is empty");
        return rep;
    }
    for (std::size_t i = 1; i < t.ordinates.size(); ++i)
        if (!(t.ordinates[i] > t.ordinates[i - 1])) {
            rep.violations.push_back("ordinates not strictly increasing at index " +
                                     std::to_string(i + 1));
            break;
        }
    const double two_pi = 6.283185307179586476925287;
    for (std::size_t i = 0; i < t.ordinates.size(); ++i) {
        double td = em::to_dbl(t.ordinates[i]);
        if (td < 319) continue;
        double expected = td / two_pi * std::log(td / two_pi) - td / two_pi;
        if (std::fabs(expected - static_cast<double>(i + 1)) > 8.9 * std::log(td)) {
            rep.violations.push_back("zero count at height " + std::to_string(td) +
                                     " violates the Riemann-von Mangoldt window");
            break;
        }
    }
    double first = em::to_dbl(t.ordinates.front());
    if (!(first > 14.13 && first < 14.14))
        rep.violations.push_back("first ordinate not in (14.13, 14.14)");
    if (!(t.theta1 <= t.theta0) || !(t.theta0 < 1))
        rep.violations.push_back("theta tiers must satisfy theta1 <= theta0 < 1");
    return rep;
}

/// Zeros of F(s) = prod zeta(s-a_i) zeta(s+a_i) up to height T: for each
/// table ordinate t <= T and each shift a, the four zeros
/// (1/2+a) +- it and (1/2-a) +- it.  Deterministic order: ascending t,
/// then shift index, then real part (+a before -a), then sign of Im.
struct FZeroStream {
    const ZeroTable* table;
    const ZetaProductSpec* spec;
    std::size_t n_ordinates; // ordinates <= T

    std::size_t zero_count() const { return 4 * spec->k() * n_ordinates; }

    /// Conjugate-pair visitation: fn(t, re_part) once per pair with t > 0.
    /// 2K pairs per ordinate; the pair stands for re_part +- it.
    template <class Fn>
    void for_each_pair(Fn&& fn) const {
        const Real half = Real(1) / 2;
        std::vector<Real> res;
        for (const auto& a : spec->shifts) {
            Real av = to_real(a);
            res.push_back(half + av);
            res.push_back(half - av);
        }
        for (std::size_t i = 0; i < n_ordinates; ++i)
            for (const auto& re : res) fn(table->ordinates[i], re);
    }

    /// Pair visitation over an ordinate index subrange [lo, hi).
    template <class Fn>
    void for_each_pair_range(std::size_t lo, std::size_t hi, Fn&& fn) const {
        const Real half = Real(1) / 2;
        std::vector<Real> res;
        for (const auto& a : spec->shifts) {
            Real av = to_real(a);
            res.push_back(half + av);
            res.push_back(half - av);
        }
        for (std::size_t i = lo; i < hi && i < n_ordinates; ++i)
            for (const auto& re : res) fn(table->ordinates[i], re);
    }

    /// Individual zero visitation in the documented deterministic order.
    template <class Fn>
    void for_each(Fn&& fn) const {
        for_each_pair([&](const Real& t, const Real& re) {
            fn(CNum<Real>(re, t));
            fn(CNum<Real>(re, -t));
        });
    }
};

/// T may sit slightly above the last ordinate (the table is complete up to
/// the next, unknown zero); the coverage error fires once T exceeds the
/// last ordinate by more than one mean zero gap 2pi/log(t/2pi) at that
/// height, beyond which completeness of the stream cannot be claimed.
inline FZeroStream enumerate_f_zeros(const ZeroTable& table, const ZetaProductSpec& spec,
                                     const Real& height) {
    spec.validate();
    if (table.ordinates.empty()) throw DomainError("enumerate_f_zeros: empty table");
    const double tmax = em::to_dbl(table.max_ordinate());
    const double slack = 6.283185307179586 / std::log(std::max(tmax, 15.0) / 6.283185307179586);
    if (em::to_dbl(height) > tmax + slack)
        throw DomainError("enumerate_f_zeros: T exceeds table coverage (max available T = " +
                          to_decimal(table.max_ordinate(), 20) + ")");
    return FZeroStream{&table, &spec, table.count_below(height)};
}

} // namespace tauli
