// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface: zero-table ingestion/validation, tau-Li coefficient
// computation by zero sums and by the arithmetic formulas, certified error
// reporting, cross-checks, criterion/fit verdicts, CSV and SVG emission.
//
// Exit codes: 0 success/clean, 1 I/O failure, 2 usage/parse/domain error,
// 3 check failed (crosscheck outside radii, validation unclean).

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tauli/analysis.hpp"
#include "tauli/arithmetic.hpp"
#include "tauli/report.hpp"
#include "tauli/zerosum.hpp"

using namespace tauli;

namespace {

unsigned env_prec(unsigned fallback) {
    const char* env = std::getenv("TAULI_PREC");
    if (!env) return fallback;
    long v = std::atol(env);
    return v >= 30 ? static_cast<unsigned>(v) : fallback;
}

struct TableArgs {
    std::string zeros;
    std::string zeros_head;
    std::string theta0 = "4e-9";
    std::string theta1 = "1e-997";

    void attach(CLI::App* cmd, bool required = true) {
        auto* o = cmd->add_option("--zeros", zeros, "zero-ordinate table, one per line");
        if (required) o->required();
        cmd->add_option("--zeros-head", zeros_head, "high-precision head table");
        cmd->add_option("--theta0", theta0, "bulk ordinate error bound");
        cmd->add_option("--theta1", theta1, "head ordinate error bound");
    }

    ZeroTable load(Precision prec) const {
        if (!std::filesystem::exists(zeros))
            throw std::ios_base::failure("zero table not found: " + zeros);
        if (!zeros_head.empty() && !std::filesystem::exists(zeros_head))
            throw std::ios_base::failure("zero head table not found: " + zeros_head);
        PrecisionScope scope(prec.digits);
        return load_zero_table(zeros, zeros_head, Real(theta0), Real(theta1), prec);
    }
};

Rational parse_tau(const std::string& s) {
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--tau", "not a decimal or p/q rational: " + s);
    }
}


std::string infer_tau_from_csv_name(const std::string& path) {
    auto base = std::filesystem::path(path).filename().string();
    auto pos = base.find("li_tau");
    auto dot = base.rfind(".csv");
    if (pos == std::string::npos || dot == std::string::npos || dot <= pos + 6) return "";
    return base.substr(pos + 6, dot - pos - 6);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized tau-Li coefficients for products of shifted zeta functions"};
    app.require_subcommand(1);

    // ---- zeros validate ----------------------------------------------------
    auto* zeros_cmd = app.add_subcommand("zeros", "zero-table utilities");
    zeros_cmd->require_subcommand(1);
    auto* validate_cmd = zeros_cmd->add_subcommand("validate", "validate a zero table");
    TableArgs vt;
    vt.attach(validate_cmd);

    // ---- compute ------------------------------------------------------------
    auto* compute_cmd =
        app.add_subcommand("compute", "compute tau-Li coefficients over an n grid");
    std::string c_shifts, c_spec_file, c_tau, c_n = "1:100:1", c_method = "zero-sum",
                c_out = ".";
    unsigned c_prec = 0, c_workers = 1;
    std::size_t c_chunk = 4096;
    std::uint64_t c_mtrunc = 100000;
    TableArgs ct;
    auto* shifts_opt =
        compute_cmd->add_option("--shifts", c_shifts, "comma-separated shifts (decimal or p/q)");
    compute_cmd->add_option("--spec-config", c_spec_file, "key=value file with a shifts entry")
        ->excludes(shifts_opt);
    compute_cmd->add_option("--tau", c_tau, "tau parameter")->required();
    compute_cmd->add_option("--n", c_n, "n grid start:stop:step");
    compute_cmd->add_option("--method", c_method, "zero-sum | arithmetic | both");
    compute_cmd->add_option("--prec", c_prec, "working decimal precision");
    compute_cmd->add_option("--out", c_out, "output directory");
    compute_cmd->add_option("--workers", c_workers, "worker threads");
    compute_cmd->add_option("--chunk", c_chunk, "pairs per reduction chunk");
    compute_cmd->add_option("--mtrunc", c_mtrunc, "Dirichlet series cutoff");
    ct.attach(compute_cmd);

    // ---- plot ---------------------------------------------------------------
    auto* plot_cmd = app.add_subcommand("plot", "render a computed CSV as SVG");
    std::string p_csv, p_out;
    double p_overlay = 0;
    plot_cmd->add_option("--csv", p_csv, "input CSV")->required();
    plot_cmd->add_option("--out", p_out, "output SVG path");
    plot_cmd->add_option("--overlay-nlogn", p_overlay, "overlay curve y = c n log n");

    // ---- crosscheck -----------------------------------------------------------
    auto* cross_cmd =
        app.add_subcommand("crosscheck", "zero-sum vs arithmetic route, |diff| vs radii");
    std::string x_shifts, x_tau, x_n = "1:20";
    unsigned x_prec_zero = 0, x_prec_arith = 0, x_workers = 1;
    std::uint64_t x_mtrunc = 100000, x_corrupt = 0;
    TableArgs xt;
    cross_cmd->add_option("--shifts", x_shifts)->required();
    cross_cmd->add_option("--tau", x_tau)->required();
    cross_cmd->add_option("--n", x_n, "n grid");
    cross_cmd->add_option("--prec", x_prec_zero, "zero-sum precision");
    cross_cmd->add_option("--prec-arith", x_prec_arith, "arithmetic-route precision");
    cross_cmd->add_option("--mtrunc", x_mtrunc, "Dirichlet series cutoff");
    cross_cmd->add_option("--workers", x_workers, "worker threads");
    cross_cmd->add_option("--corrupt-cf", x_corrupt,
                          "testing aid: scale c_F(m) by 101 for this m in the arithmetic route");
    xt.attach(cross_cmd);

    // ---- criterion ------------------------------------------------------------
    auto* crit_cmd = app.add_subcommand("criterion", "tau-Li criterion verdict from a CSV");
    std::string cr_csv, cr_tau;
    crit_cmd->add_option("--csv", cr_csv)->required();
    crit_cmd->add_option("--tau", cr_tau, "tau (default: inferred from the file name)");

    // ---- fit -------------------------------------------------------------------
    auto* fit_cmd = app.add_subcommand("fit", "asymptotic ratio report from a CSV");
    std::string f_csv, f_tau;
    double f_cf = 0;
    fit_cmd->add_option("--csv", f_csv)->required();
    fit_cmd->add_option("--cf", f_cf, "C_F = sum lambda_j")->required();
    fit_cmd->add_option("--tau", f_tau, "tau (default: inferred from the file name)");

    // ---- rh ---------------------------------------------------------------------
    auto* rh_cmd = app.add_subcommand("rh", "RH harness: G_a = zeta(s-a) zeta(s+a), tau=2a+1");
    std::string r_a;
    unsigned r_nmax = 100, r_prec = 0, r_workers = 1;
    TableArgs rt;
    rh_cmd->add_option("--a", r_a, "shift a > 0")->required();
    rh_cmd->add_option("--nmax", r_nmax, "check n = 1..nmax");
    rh_cmd->add_option("--prec", r_prec, "working precision");
    rh_cmd->add_option("--workers", r_workers, "worker threads");
    rt.attach(rh_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        // ---- zeros validate -------------------------------------------------
        if (validate_cmd->parsed()) {
            ZeroTable t = vt.load(Precision(50));
            auto rep = validate_table(t);
            if (rep.clean()) {
                std::cout << "table clean: " << t.count() << " ordinates, T = "
                          << to_decimal(t.max_ordinate(), 20) << "\n";
                return 0;
            }
            for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
            return 3;
        }

        // ---- compute ---------------------------------------------------------
        if (compute_cmd->parsed()) {
            ZetaProductSpec spec;
            if (!c_spec_file.empty()) {
                std::ifstream in(c_spec_file);
                if (!in) throw std::ios_base::failure("cannot open " + c_spec_file);
                spec = parse_spec_config(in);
            } else if (!c_shifts.empty()) {
                spec = ZetaProductSpec::parse(c_shifts);
            } else {
                throw DomainError("pass --shifts or --spec-config");
            }
            auto desc = zeta_product_descriptor(spec);
            Rational tau = parse_tau(c_tau);
            NGrid grid = parse_ngrid(c_n);
            bool want_zero = c_method == "zero-sum" || c_method == "both";
            bool want_arith = c_method == "arithmetic" || c_method == "both";
            if (!want_zero && !want_arith)
                throw DomainError("--method must be zero-sum, arithmetic or both");

            if (want_zero) {
                auto dom = tau_domain(desc, TauRoute::zero_sum);
                if (!dom.contains(tau))
                    throw DomainError("tau outside the zero-sum interval [" +
                                      tau_slug(dom.lower) + ", " + tau_slug(dom.upper) + "]");
            }
            bool arith_high = tau > desc.sigma0;
            if (want_arith) {
                auto dom = tau_domain(desc, arith_high ? TauRoute::arithmetic_high_tau
                                                       : TauRoute::arithmetic_general);
                bool ok = dom.contains(tau) && (arith_high || tau > spec.alpha_max());
                if (!ok) {
                    auto hi = tau_domain(desc, TauRoute::arithmetic_high_tau);
                    throw DomainError("tau invalid for the arithmetic routes; the "
                                      "polygamma route needs tau in (" +
                                      tau_slug(hi.lower) + ", " + tau_slug(hi.upper) + "]");
                }
            }

            unsigned prec_zero = env_prec(c_prec ? c_prec : 50);
            unsigned prec_arith = env_prec(c_prec ? std::max(c_prec, 60u) : 160);
            ZeroTable table = ct.load(Precision(prec_zero));
            PrecisionScope scope(prec_zero);
            Real height = table.max_ordinate();
            Real tau_r = to_real(tau);

            std::vector<LiRow> rows;
            if (want_zero) {
                SumOptions opt{c_workers, c_chunk};
                auto parts = li_series_sweep(spec, table, grid.values(), tau_r, height,
                                             Precision(prec_zero), opt);
                for (const auto& part : parts) {
                    LiEstimate est;
                    try {
                        est = combined_interval(part, spec, table);
                    } catch (const RuleError&) {
                        // no certified perturbation rule at this (tau, n):
                        // truncation-only radius, marked by rule = prop61
                        est = combined_interval(part, spec, table, BoundRule::prop61);
                        est.certified = false;
                    }
                    rows.push_back(to_row(est, height, prec_zero));
                }
            }
            if (want_arith) {
                for (unsigned n : grid.values()) {
                    LiEstimate est =
                        arith_high
                            ? li_arithmetic_high_tau(spec, n, tau, c_mtrunc,
                                                     Precision(prec_arith))
                            : li_arithmetic_general_tau(spec, n, tau, Precision(prec_arith));
                    rows.push_back(to_row(est, height, prec_arith));
                }
            }

            std::filesystem::create_directories(c_out);
            std::string path = c_out + "/li_tau" + tau_slug(tau) + ".csv";
            std::ofstream out(path, std::ios::binary);
            if (!out) throw std::ios_base::failure("cannot write " + path);
            write_li_csv(out, rows);
            std::cout << "wrote " << path << " (" << rows.size() << " rows)\n";
            return 0;
        }

        // ---- plot --------------------------------------------------------------
        if (plot_cmd->parsed()) {
            std::ifstream in(p_csv);
            if (!in) throw std::ios_base::failure("cannot open " + p_csv);
            auto rows = read_li_csv(in);
            PlotOptions popt;
            popt.overlay_nlogn = p_overlay;
            std::string svg = render_svg(rows, popt);
            std::string outp = p_out.empty()
                                   ? std::filesystem::path(p_csv).replace_extension(".svg").string()
                                   : p_out;
            std::ofstream out(outp, std::ios::binary);
            if (!out) throw std::ios_base::failure("cannot write " + outp);
            out << svg;
            std::cout << "wrote " << outp << "\n";
            return 0;
        }

        // ---- crosscheck ----------------------------------------------------------
        if (cross_cmd->parsed()) {
            auto spec = ZetaProductSpec::parse(x_shifts);
            auto desc = zeta_product_descriptor(spec);
            Rational tau = parse_tau(x_tau);
            NGrid grid = parse_ngrid(x_n);
            bool arith_high = tau > desc.sigma0;
            {
                auto dom = tau_domain(desc, arith_high ? TauRoute::arithmetic_high_tau
                                                       : TauRoute::arithmetic_general);
                if (!(dom.contains(tau) && (arith_high || tau > spec.alpha_max()))) {
                    auto hi = tau_domain(desc, TauRoute::arithmetic_high_tau);
                    throw DomainError("tau invalid for the arithmetic routes; valid interval (" +
                                      tau_slug(hi.lower) + ", " + tau_slug(hi.upper) + "]");
                }
            }
            unsigned prec_zero = env_prec(x_prec_zero ? x_prec_zero : 50);
            unsigned prec_arith = env_prec(x_prec_arith ? x_prec_arith : 160);
            ZeroTable table = xt.load(Precision(prec_zero));
            PrecisionScope scope(prec_zero);
            Real height = table.max_ordinate();
            Real tau_r = to_real(tau);
            Real amp = shift_amplitude_A(spec, tau_r);

            SumOptions opt{x_workers, 4096};
            auto parts =
                li_series_sweep(spec, table, grid.values(), tau_r, height, Precision(prec_zero), opt);

            bool all_ok = true;
            unsigned first_bad = 0;
            std::cout << "n,|diff|,allowed\n";
            for (std::size_t i = 0; i < parts.size(); ++i) {
                unsigned n = parts[i].n;
                LiEstimate arith = arith_high
                                       ? li_arithmetic_high_tau(spec, n, tau, x_mtrunc,
                                                                Precision(prec_arith))
                                       : li_arithmetic_general_tau(spec, n, tau,
                                                                   Precision(prec_arith));
                if (x_corrupt >= 2) {
                    // fault-injection hook: as if c_F(m) were scaled by 101
                    PrecisionScope s2(prec_arith);
                    Real x = to_real(tau) * log(Real(x_corrupt));
                    Real delta = Real(-100) * to_real(tau) *
                                 dirichlet_coeff(spec, x_corrupt, Precision(prec_arith)) *
                                 pow(Real(x_corrupt), -to_real(tau)) *
                                 laguerre_assoc1(n - 1, x, Precision(prec_arith));
                    arith.center += delta;
                }
                Real trunc = truncation_bound(static_cast<unsigned>(spec.k()), tau_r, n, height, amp);
                Real perturb(0);
                try {
                    perturb = select_perturbation(spec, table, n, tau_r).second;
                } catch (const RuleError&) {
                    perturb = 0;
                }
                Real allowed = arith.radius + trunc + perturb;
                Real diff = abs(arith.center - parts[i].value);
                std::cout << n << ',' << to_decimal(diff, 12) << ',' << to_decimal(allowed, 12)
                          << '\n';
                if (!(diff <= allowed) && all_ok) {
                    all_ok = false;
                    first_bad = n;
                }
            }
            if (!all_ok) {
                std::cerr << "crosscheck failed first at n = " << first_bad << "\n";
                return 3;
            }
            std::cout << "crosscheck ok\n";
            return 0;
        }

        // ---- criterion --------------------------------------------------------------
        if (crit_cmd->parsed()) {
            std::ifstream in(cr_csv);
            if (!in) throw std::ios_base::failure("cannot open " + cr_csv);
            auto rows = read_li_csv(in);
            std::string tau_s = cr_tau.empty() ? infer_tau_from_csv_name(cr_csv) : cr_tau;
            if (tau_s.empty())
                throw DomainError("cannot infer tau from the file name; pass --tau");
            PrecisionScope scope(50);
            Real tau = to_real(parse_tau(tau_s));
            auto ests = estimates_from_rows(rows, tau);
            auto v = criterion_check(ests, tau);
            std::cout << to_string(v.status);
            if (v.status != CriterionStatus::all_nonnegative_within_radius)
                std::cout << " at n = " << v.witness_n;
            std::cout << " (tau = " << tau_s << ", n in [" << v.n_min << ", " << v.n_max
                      << "])\n";
            return 0;
        }

        // ---- fit -----------------------------------------------------------------------
        if (fit_cmd->parsed()) {
            std::ifstream in(f_csv);
            if (!in) throw std::ios_base::failure("cannot open " + f_csv);
            auto rows = read_li_csv(in);
            std::string tau_s = f_tau.empty() ? infer_tau_from_csv_name(f_csv) : f_tau;
            if (tau_s.empty())
                throw DomainError("cannot infer tau from the file name; pass --tau");
            PrecisionScope scope(50);
            Real tau = to_real(parse_tau(tau_s));
            auto ests = estimates_from_rows(rows, tau);
            auto rep = asymptotic_fit(ests, Real(f_cf), tau);
            std::cout << "tail_mean_ratio=" << to_decimal(rep.tail_mean, 10) << "\n"
                      << "tail_min_ratio=" << to_decimal(rep.tail_min, 10) << "\n"
                      << "tail_max_ratio=" << to_decimal(rep.tail_max, 10) << "\n"
                      << "sign_changes=" << rep.sign_changes << "\n"
                      << "growth_rate=" << to_decimal(rep.growth_rate, 10) << "\n"
                      << "oscillation=" << (rep.oscillation_indicator ? "yes" : "no") << "\n";
            if (rep.skipped) std::cout << "note: skipped " << rep.skipped << " rows with n=1\n";
            return 0;
        }

        // ---- rh -------------------------------------------------------------------------
        if (rh_cmd->parsed()) {
            Rational a = parse_tau(r_a);
            unsigned prec = env_prec(r_prec ? r_prec : 50);
            ZeroTable table = rt.load(Precision(prec));
            auto v = rh_harness(a, table, r_nmax, Precision(prec), SumOptions{r_workers, 4096});
            std::cout << to_string(v.status);
            if (v.status != CriterionStatus::all_nonnegative_within_radius)
                std::cout << " at n = " << v.witness_n;
            std::cout << " (tau = " << tau_slug(2 * a + 1) << ", n <= " << r_nmax << ")\n";
            return v.status == CriterionStatus::negative_certified ? 3 : 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error";
        if (e.line) std::cerr << " at line " << e.line;
        std::cerr << ": " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const RuleError& e) {
        std::cerr << "rule error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
