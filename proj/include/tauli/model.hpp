// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tauli/cnum.hpp"
#include "tauli/errors.hpp"
#include "tauli/real.hpp"

namespace tauli {

/// The concrete family F(s) = prod_i zeta(s - a_i) zeta(s + a_i).
/// Shifts are exact rationals; the recommended input form is
/// "shifts = 1,2,3,4" with decimal or p/q entries.
struct ZetaProductSpec {
    std::vector<Rational> shifts;

    std::size_t k() const { return shifts.size(); }

    Rational sigma0_exact() const {
        if (shifts.empty()) throw DomainError("ZetaProductSpec: empty shift list");
        return Rational(1) + *std::max_element(shifts.begin(), shifts.end());
    }
    Rational alpha_max() const {
        if (shifts.empty()) throw DomainError("ZetaProductSpec: empty shift list");
        return *std::max_element(shifts.begin(), shifts.end());
    }

    static ZetaProductSpec parse(const std::string& csv) {
        ZetaProductSpec spec;
        std::stringstream ss(csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            auto b = tok.find_first_not_of(" \t");
            auto e = tok.find_last_not_of(" \t");
            if (b == std::string::npos) throw ParseError("empty shift entry");
            spec.shifts.push_back(parse_rational(tok.substr(b, e - b + 1)));
        }
        if (spec.shifts.empty()) throw ParseError("no shifts given");
        spec.validate();
        return spec;
    }

    void validate() const {
        if (shifts.empty()) throw DomainError("ZetaProductSpec: need at least one shift");
        for (const auto& a : shifts)
            if (a <= 0) throw DomainError("ZetaProductSpec: shifts must be positive");
    }
};

/// Parses a key=value config file; only the `shifts` key is defined.
inline ZetaProductSpec parse_spec_config(std::istream& in) {
    std::string line;
    long line_no = 0;
    std::optional<ZetaProductSpec> spec;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "shifts") {
            try {
                spec = ZetaProductSpec::parse(val);
            } catch (const std::exception& e) {
                throw ParseError(std::string("shifts: ") + e.what(), line_no);
            }
        }
    }
    if (!spec) throw ParseError("config defines no shifts");
    return *spec;
}

struct GammaFactor {
    Rational lambda; // > 0
    Rational mu;     // real in this family (mu_j = +-a_j/2)
};

struct Pole {
    Rational s;   // real pole location for this family
    unsigned m;   // order
};

/// L-function data: sigma0/sigma1, Q_F, omega, gamma factors, poles and the
/// sigma1-pairing partition (2M, delta).  Immutable after construction.
struct LFunctionDescriptor {
    Rational sigma0;
    Rational sigma1;
    Real q_f;                   // Q_F > 0
    CNum<Real> omega;           // |omega| = 1
    std::vector<GammaFactor> gamma_factors;
    std::vector<Pole> poles;    // first 2M + delta entries are the paired part
    unsigned paired_count_2m = 0;
    unsigned delta_sigma1 = 0;

    std::size_t pole_count() const { return poles.size(); }

    Rational max_re_rho() const {
        // zeros of the product live on Re s = 1/2 +- a_i
        Rational best(0);
        for (const auto& g : gamma_factors) {
            // mu = +-a/2, so a = 2|mu| and Re rho = 1/2 + a
            Rational a = g.mu < 0 ? -2 * g.mu : 2 * g.mu;
            Rational cand = Rational(1, 2) + a;
            if (cand > best) best = cand;
        }
        return best;
    }

    /// C_F = sum lambda_j; conjectured slope of lambda/(tau n log n).
    Rational c_f() const {
        Rational s(0);
        for (const auto& g : gamma_factors) s += g.lambda;
        return s;
    }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool clean() const { return violations.empty(); }
};

enum class TauRoute { zero_sum, arithmetic_high_tau, arithmetic_general };

/// Valid tau interval for a route, plus excluded interior points.
struct TauValidity {
    TauRoute route;
    Rational lower;
    Rational upper;
    bool lower_open = false;
    std::vector<Rational> excluded;

    bool contains(const Rational& tau) const {
        if (lower_open ? !(tau > lower) : !(tau >= lower)) return false;
        if (!(tau <= upper)) return false;
        for (const auto& x : excluded)
            if (x == tau) return false;
        return true;
    }
};

/// Builds the descriptor of Example 2.3: sigma0 = 1 + max a_i, sigma1 = 1,
/// Q_F = pi^-K, omega = 1, 2K gamma factors (1/2, +-a_j/2), simple poles at
/// 1 +- a_i (duplicate shifts merge into higher-order poles), and the
/// sigma1-pairing partition computed by exact matching of z + w = 1.
inline LFunctionDescriptor zeta_product_descriptor(const ZetaProductSpec& spec) {
    spec.validate();
    LFunctionDescriptor d;
    d.sigma0 = spec.sigma0_exact();
    d.sigma1 = 1;
    d.q_f = boost::multiprecision::pow(real_pi(), -static_cast<long>(spec.k()));
    d.omega = CNum<Real>(Real(1));
    for (const auto& a : spec.shifts) d.gamma_factors.push_back({Rational(1, 2), a / 2});
    for (const auto& a : spec.shifts) d.gamma_factors.push_back({Rational(1, 2), -a / 2});

    // poles 1 +- a_i with merged multiplicities
    std::vector<Pole> merged;
    auto add_pole = [&](const Rational& s) {
        for (auto& p : merged)
            if (p.s == s) {
                ++p.m;
                return;
            }
        merged.push_back({s, 1});
    };
    for (const auto& a : spec.shifts) {
        add_pole(Rational(1) - a);
        add_pole(Rational(1) + a);
    }

    // pairing partition: greedy exact matching of z + w = sigma1 over the
    // real pole set; a pole at sigma1/2 is the delta entry
    const Rational sigma1(1);
    const Rational half = Rational(1, 2);
    std::vector<Pole> rest = merged;
    std::vector<Pole> paired, deltas, unpaired;
    // delta entry first (at most one distinct value can equal sigma1/2)
    for (auto it = rest.begin(); it != rest.end(); ++it)
        if (it->s == half) {
            deltas.push_back(*it);
            rest.erase(it);
            break;
        }
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (rest[i].m == 0) continue;
        for (std::size_t j = i + 1; j < rest.size(); ++j) {
            if (rest[j].m == 0) continue;
            if (rest[i].s + rest[j].s == sigma1) {
                unsigned units = std::min(rest[i].m, rest[j].m);
                paired.push_back({rest[i].s, units});
                paired.push_back({rest[j].s, units});
                rest[i].m -= units;
                rest[j].m -= units;
                break;
            }
        }
    }
    for (const auto& p : rest)
        if (p.m > 0) unpaired.push_back(p);
    if (deltas.size() > 1 || (deltas.size() == 1 && deltas[0].m > 1))
        throw DomainError("zeta_product_descriptor: higher-order pole at sigma1/2 unsupported");

    d.paired_count_2m = static_cast<unsigned>(paired.size());
    d.delta_sigma1 = deltas.empty() ? 0 : 1;
    d.poles = std::move(paired);
    for (const auto& p : deltas) d.poles.push_back(p);
    for (const auto& p : unpaired) d.poles.push_back(p);
    return d;
}

/// Structural checks for axioms (i')-(iii'), report style: never throws.
inline ValidationReport validate_descriptor(const LFunctionDescriptor& d) {
    ValidationReport rep;
    if (!(d.sigma0 >= d.sigma1)) rep.violations.push_back("sigma0 >= sigma1 violated");
    if (!(d.sigma1 > 0)) rep.violations.push_back("sigma1 > 0 violated");
    if (!(d.q_f > 0)) rep.violations.push_back("q_f > 0 violated");
    {
        PrecisionScope scope(40);
        Real om = abs(d.omega);
        if (boost::multiprecision::abs(om - 1) > pow10(-12))
            rep.violations.push_back("|omega| = 1 violated");
    }
    for (const auto& g : d.gamma_factors)
        if (!(g.lambda > 0)) {
            rep.violations.push_back("lambda_j > 0 violated");
            break;
        }
    const std::size_t n = d.poles.size();
    const unsigned two_m = d.paired_count_2m;
    const unsigned delta = d.delta_sigma1;
    if (two_m % 2 != 0) rep.violations.push_back("paired_count_2m must be even");
    if (two_m + delta > n)
        rep.violations.push_back("0 <= 2M + delta <= N violated");
    else {
        for (unsigned j = 0; j + 1 < two_m; j += 2)
            if (d.poles[j].s + d.poles[j + 1].s != d.sigma1) {
                rep.violations.push_back("pairing law s_{2j-1} + conj(s_{2j}) = sigma1 violated");
                break;
            }
        if (delta == 1 && d.poles[two_m].s * 2 != d.sigma1)
            rep.violations.push_back("delta entry is not sigma1/2");
    }
    return rep;
}

/// Valid tau interval per route (Remark 4.4 plus the arithmetic-route
/// hypotheses).  For the general arithmetic route the excluded points are
/// sigma1 - s_i over the full pole set: those tau hit a vanishing
/// denominator in the reflected pole sum of this family's completed
/// function (see pole_reflection_terms in arithmetic.hpp).
inline TauValidity tau_domain(const LFunctionDescriptor& d, TauRoute route) {
    TauValidity v;
    v.route = route;
    switch (route) {
    case TauRoute::zero_sum:
        v.lower = d.sigma1;
        v.upper = 2 * d.sigma0;
        break;
    case TauRoute::arithmetic_high_tau:
        v.lower = d.sigma0;
        v.lower_open = true;
        v.upper = 2 * d.sigma0;
        break;
    case TauRoute::arithmetic_general:
        v.lower = d.sigma1;
        v.upper = 2 * d.sigma0;
        for (const auto& p : d.poles) {
            Rational x = d.sigma1 - p.s;
            if (x >= v.lower && x <= v.upper &&
                std::find(v.excluded.begin(), v.excluded.end(), x) == v.excluded.end())
                v.excluded.push_back(x);
        }
        std::sort(v.excluded.begin(), v.excluded.end());
        break;
    }
    return v;
}

} // namespace tauli
