// SPDX-License-Identifier: Apache-2.0
//
// Generates the bundled table of Riemann zeta zero ordinates.
//
//   tauli-make-zeros --count 100000 --out data/zeros_100k.txt \
//                    --head-out data/zeros_head9.txt
//
// Bulk pipeline: Gram-point bracketing with a double-precision
// Riemann-Siegel scan (main sum + C0 correction), then each bracketed root
// is polished against a long-double Euler-Maclaurin evaluation of
// zeta(1/2+it).  Gram-block accounting pins the zero count below every
// processed Gram point, so a missed sign change is detected rather than
// silently skipped.  The polished ordinates are accurate to ~1e-12; the
// table is stamped theta0 = 4e-9 conservatively.
//
// Head pipeline: the first nine zeros are re-derived independently by
// complex Newton iteration on zeta(s) at ~1030-digit working precision and
// written with 1005 digits, matching the theta1 < 1e-997 tier.
//
// Self-checks before writing: the theta/zeta phase consistency residual,
// Riemann-von Mangoldt count bound at every prefix, head-vs-bulk agreement,
// and MPFR spot refinements at sampled bulk indices.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "tauli/cnum.hpp"
#include "tauli/real.hpp"
#include "tauli/zetaem.hpp"

namespace {

using tauli::CNum;
using tauli::Real;
using LD = long double;
constexpr LD PI = 3.14159265358979323846264338327950288L;
constexpr LD TWO_PI = 2 * PI;

// ---------------------------------------------------------------------------
// Riemann-Siegel theta, asymptotic series.  Correction coefficients are
// (1 - 2^{1-2n}) |B_{2n}| / (4n (2n-1)), taken from exact Bernoulli
// rationals rather than hard-coded.
std::vector<LD> make_theta_coeffs() {
    std::vector<LD> out;
    tauli::PrecisionScope scope(40);
    const auto& bern = tauli::bernoulli_exact(12);
    for (int n = 1; n <= 6; ++n) {
        Real b = tauli::to_real(bern[static_cast<std::size_t>(2 * n)]);
        Real c = (1 - boost::multiprecision::pow(Real(2), 1 - 2 * n)) *
                 boost::multiprecision::abs(b) / (4 * n * (2 * n - 1));
        out.push_back(c.convert_to<LD>());
    }
    return out;
}

const std::vector<LD>& theta_c() {
    static const std::vector<LD> c = make_theta_coeffs();
    return c;
}

LD theta(LD t) {
    LD v = t / 2 * std::log(t / TWO_PI) - t / 2 - PI / 8;
    LD tp = t;
    for (LD c : theta_c()) {
        v += c / tp;
        tp *= t * t;
    }
    return v;
}

LD theta_deriv(LD t) {
    LD v = std::log(t / TWO_PI) / 2;
    LD tp = t * t;
    int n = 1;
    for (LD c : theta_c()) {
        v -= c * (2 * n - 1) / tp;
        tp *= t * t;
        ++n;
    }
    return v;
}

// Gram point g_n: theta(g_n) = n pi.
LD gram_point(long n) {
    LD target = n * PI;
    LD t = std::max<LD>(9.2L, TWO_PI * (n + 2) / std::max<LD>(1.0L, std::log((LD)(n + 3))));
    for (int i = 0; i < 100; ++i) {
        LD f = theta(t) - target;
        LD d = theta_deriv(t);
        if (d < 1e-3L) d = 1e-3L;
        LD step = f / d;
        if (step > t / 2) step = t / 2;
        if (step < -t) step = -t;
        t -= step;
        if (std::fabs(step) < 1e-13L * t) break;
    }
    return t;
}

// ---------------------------------------------------------------------------
// Riemann-Siegel Z(t) in double precision with the C0 correction term.
// Error ~ 0.13 t^{-3/4}: good enough for bracketing, never for output.
double rs_z(double t) {
    double a = std::sqrt(t / (2 * M_PI));
    long m = static_cast<long>(a);
    double p = a - m;
    double th = static_cast<double>(theta(static_cast<LD>(t)));
    double s = 0;
    for (long k = 1; k <= m; ++k)
        s += std::cos(th - t * std::log(static_cast<double>(k))) /
             std::sqrt(static_cast<double>(k));
    s *= 2;
    double c0 = std::cos(2 * M_PI * (p * p - p - 1.0 / 16)) / std::cos(2 * M_PI * p);
    double corr = ((m % 2) ? 1.0 : -1.0) * std::pow(t / (2 * M_PI), -0.25) * c0;
    return s + corr;
}

// ---------------------------------------------------------------------------
// Long-double Euler-Maclaurin Z(t) on the critical line, with cached
// log k / k^{-1/2} tables shared by every evaluation.
struct CriticalZeta {
    std::vector<LD> lnk;   // lnk[k] = log k
    std::vector<LD> rsqrt; // rsqrt[k] = k^{-1/2}
    std::vector<LD> coeff; // B_{2r}/(2r)!

    explicit CriticalZeta(long n_max) {
        lnk.resize(static_cast<std::size_t>(n_max) + 2);
        rsqrt.resize(static_cast<std::size_t>(n_max) + 2);
        for (long k = 1; k <= n_max + 1; ++k) {
            lnk[static_cast<std::size_t>(k)] = std::log(static_cast<LD>(k));
            rsqrt[static_cast<std::size_t>(k)] = 1 / std::sqrt(static_cast<LD>(k));
        }
        auto snap = tauli::em::em_coeffs_snapshot<long double>(72, 0);
        coeff.assign(snap->begin(), snap->end());
    }

    static long cutoff_for(LD t) { return static_cast<long>(0.2840L * t) + 48; }

    // zeta(1/2 + i t)
    CNum<LD> zeta(LD t) const {
        const long n = cutoff_for(t);
        CNum<LD> sum;
        for (long k = 1; k <= n; ++k) {
            LD phase = std::fmod(t * lnk[static_cast<std::size_t>(k)], TWO_PI);
            double c = std::cos(static_cast<double>(phase));
            double s = std::sin(static_cast<double>(phase));
            LD r = rsqrt[static_cast<std::size_t>(k)];
            sum.re += r * static_cast<LD>(c);
            sum.im -= r * static_cast<LD>(s);
        }
        const LD x = static_cast<LD>(n) + 1;
        const LD lx = std::log(x);
        const CNum<LD> s_c(0.5L, t);
        const CNum<LD> sm1(-0.5L, t);
        LD phase = std::fmod(t * lx, TWO_PI);
        CNum<LD> rot(std::cos(static_cast<double>(phase)),
                     -std::sin(static_cast<double>(phase)));
        CNum<LD> x_1ms = std::sqrt(x) * rot;  // x^{1-s}
        CNum<LD> x_ms = x_1ms / x;            // x^{-s}
        CNum<LD> val = sum + x_1ms / sm1 + x_ms * 0.5L;

        CNum<LD> poch = s_c;
        CNum<LD> x_fac = x_1ms / (x * x);
        const LD inv_x2 = 1 / (x * x);
        LD prev = 1e300L;
        for (std::size_t r = 1; r < coeff.size(); ++r) {
            CNum<LD> term = coeff[r - 1] * poch * x_fac;
            LD mag = tauli::abs(term);
            if (r > 1 && mag > prev) break; // tail started diverging
            val += term;
            prev = mag;
            if (mag < 1e-21L * (tauli::abs(val) + 1)) break;
            poch *= (s_c + static_cast<LD>(2 * r - 1)) * (s_c + static_cast<LD>(2 * r));
            x_fac = x_fac * inv_x2;
        }
        return val;
    }

    // Z(t) plus the phase-consistency residual Im(e^{i theta} zeta).
    std::pair<LD, LD> z(LD t) const {
        CNum<LD> zv = zeta(t);
        LD th = std::fmod(theta(t), TWO_PI);
        CNum<LD> rot(std::cos(static_cast<double>(th)), std::sin(static_cast<double>(th)));
        CNum<LD> out = rot * zv;
        return {out.re, out.im};
    }
};

// ---------------------------------------------------------------------------
// MPFR refinement: complex Newton on zeta(s)=0 from a real-axis seed.
// Returns Im s; aborts if the limit leaves the critical line.
Real refine_mpfr(double seed_t, unsigned digits, long re_tol_exp) {
    tauli::PrecisionScope scope(digits + 20);
    CNum<Real> s(Real(1) / 2, Real(seed_t));
    for (int it = 0; it < 64; ++it) {
        auto e = tauli::em::zeta_em<Real>(s, digits + 10, true);
        CNum<Real> step = e.value / e.deriv;
        s -= step;
        if (tauli::abs(step) < tauli::pow10(-static_cast<long>(digits) - 2)) break;
    }
    if (boost::multiprecision::abs(s.re - Real(1) / 2) > tauli::pow10(re_tol_exp)) {
        std::cerr << "refine_mpfr: zero off the critical line near t=" << seed_t << "\n";
        std::exit(4);
    }
    return s.im;
}

struct Options {
    long count = 100000;
    std::string out = "data/zeros_100k.txt";
    std::string head_out = "data/zeros_head9.txt";
    int head_digits = 1005;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
};

} // namespace

int main(int argc, char** argv) {
    Options opt;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        auto next = [&](const char* what) -> std::string {
            if (i + 1 >= argc) {
                std::cerr << "missing value for " << what << "\n";
                std::exit(2);
            }
            return argv[++i];
        };
        if (a == "--count")
            opt.count = std::stol(next("--count"));
        else if (a == "--out")
            opt.out = next("--out");
        else if (a == "--head-out")
            opt.head_out = next("--head-out");
        else if (a == "--head-digits")
            opt.head_digits = std::stoi(next("--head-digits"));
        else if (a == "--threads")
            opt.threads = std::stoi(next("--threads"));
        else {
            std::cerr << "unknown option " << a << "\n";
            return 2;
        }
    }
    if (opt.threads < 1) opt.threads = 1;

    const long n_zeros = opt.count;
    std::cerr << "computing Gram points...\n";

    const long pad = 64;
    std::vector<LD> gram(static_cast<std::size_t>(n_zeros + pad) + 1);
    for (long n = -1; n < n_zeros + pad; ++n)
        gram[static_cast<std::size_t>(n + 1)] = gram_point(n);

    CriticalZeta cz(CriticalZeta::cutoff_for(gram.back() + 2));

    std::cerr << "scanning Gram intervals...\n";
    std::vector<double> gz(gram.size());
    {
        std::atomic<long> cur{0};
        auto worker = [&]() {
            for (;;) {
                long i = cur.fetch_add(1);
                if (i >= static_cast<long>(gram.size())) return;
                double z = rs_z(static_cast<double>(gram[static_cast<std::size_t>(i)]));
                if (std::fabs(z) < 1e-3) {
                    // too close to call with the scan-quality evaluation
                    z = static_cast<double>(cz.z(gram[static_cast<std::size_t>(i)]).first);
                }
                gz[static_cast<std::size_t>(i)] = z;
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < opt.threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    auto is_good = [&](long n) {
        double z = gz[static_cast<std::size_t>(n + 1)];
        return ((n % 2 == 0) ? z : -z) > 0;
    };

    struct Bracket {
        double lo, hi, zlo;
    };
    std::vector<Bracket> brackets;
    brackets.reserve(static_cast<std::size_t>(n_zeros) + 8);

    long n = -1;
    if (!is_good(n)) {
        std::cerr << "g_{-1} not a good Gram point, unexpected\n";
        return 4;
    }
    while (static_cast<long>(brackets.size()) < n_zeros + 2) {
        long m = n + 1;
        while (m + 1 < static_cast<long>(gz.size()) - 1 && !is_good(m)) ++m;
        if (!is_good(m)) {
            std::cerr << "ran out of Gram points inside a block\n";
            return 4;
        }
        long intervals = m - n;
        std::vector<Bracket> found;
        for (long depth = 1; depth <= (1 << 14); depth *= 2) {
            found.clear();
            for (long j = 0; j < intervals; ++j) {
                double a = static_cast<double>(gram[static_cast<std::size_t>(n + j + 1)]);
                double b = static_cast<double>(gram[static_cast<std::size_t>(n + j + 2)]);
                double prev = a;
                double zprev = gz[static_cast<std::size_t>(n + j + 1)];
                for (long k = 1; k <= depth; ++k) {
                    double x = a + (b - a) * static_cast<double>(k) / static_cast<double>(depth);
                    double zx = (k == depth) ? gz[static_cast<std::size_t>(n + j + 2)]
                                             : rs_z(x);
                    if ((zx > 0) != (zprev > 0)) found.push_back({prev, x, zprev});
                    prev = x;
                    zprev = zx;
                }
            }
            if (static_cast<long>(found.size()) >= intervals) break;
        }
        if (static_cast<long>(found.size()) != intervals) {
            std::cerr << "block at n=" << n << ": expected " << intervals << " zeros, found "
                      << found.size() << "\n";
            return 4;
        }
        for (auto& f : found) brackets.push_back(f);
        n = m;
    }
    brackets.resize(static_cast<std::size_t>(n_zeros));
    std::cerr << "polishing " << brackets.size() << " zeros on " << opt.threads
              << " threads...\n";

    std::vector<LD> zeros(brackets.size());
    std::atomic<long> cursor{0};
    std::atomic<long> done{0};
    std::atomic<bool> failed{false};
    auto polish_worker = [&]() {
        for (;;) {
            long i = cursor.fetch_add(1);
            if (i >= static_cast<long>(brackets.size()) || failed.load()) return;
            const auto& b = brackets[static_cast<std::size_t>(i)];
            // bisect the scan function to ~1e-6
            double lo = b.lo, hi = b.hi, zlo = b.zlo;
            for (int it = 0; it < 26 && hi - lo > 1e-7; ++it) {
                double mid = (lo + hi) / 2;
                double zm = rs_z(mid);
                if ((zm > 0) == (zlo > 0)) {
                    lo = mid;
                    zlo = zm;
                } else
                    hi = mid;
            }
            LD mid = (static_cast<LD>(lo) + static_cast<LD>(hi)) / 2;
            // EM bracket with bounded widening
            LD w = 2e-4L;
            LD xa = mid - w, xb = mid + w;
            auto [fa, ra] = cz.z(xa);
            auto [fb, rb] = cz.z(xb);
            if (std::fabs(static_cast<double>(ra)) >
                1e-8 * (std::fabs(static_cast<double>(fa)) + 1)) {
                std::cerr << "phase consistency residual too large near t="
                          << static_cast<double>(xa) << "\n";
                failed.store(true);
                return;
            }
            int widen = 0;
            while ((fa > 0) == (fb > 0) && widen < 2) {
                w *= 8;
                xa = mid - w;
                xb = mid + w;
                fa = cz.z(xa).first;
                fb = cz.z(xb).first;
                ++widen;
            }
            if ((fa > 0) == (fb > 0)) {
                std::cerr << "lost bracket near t=" << static_cast<double>(mid) << "\n";
                failed.store(true);
                return;
            }
            for (int it = 0; it < 4; ++it) {
                LD xm = (xa + xb) / 2;
                LD fm = cz.z(xm).first;
                if ((fm > 0) == (fa > 0)) {
                    xa = xm;
                    fa = fm;
                } else {
                    xb = xm;
                    fb = fm;
                }
            }
            LD x0 = xa, x1 = xb, f0 = fa, f1 = fb;
            for (int it = 0; it < 10; ++it) {
                if (f1 == f0) break;
                LD x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
                if (!(x2 > xa - 1 && x2 < xb + 1)) x2 = (x0 + x1) / 2;
                LD f2 = cz.z(x2).first;
                x0 = x1;
                f0 = f1;
                x1 = x2;
                f1 = f2;
                if (std::fabs(static_cast<double>(x1 - x0)) < 5e-13 * static_cast<double>(x1))
                    break;
            }
            if (!(x1 > b.lo - 0.01 && x1 < b.hi + 0.01)) {
                std::cerr << "polish escaped its bracket near t=" << static_cast<double>(mid)
                          << "\n";
                failed.store(true);
                return;
            }
            zeros[static_cast<std::size_t>(i)] = x1;
            long d = done.fetch_add(1) + 1;
            if (d % 10000 == 0) std::cerr << "  " << d << " / " << brackets.size() << "\n";
        }
    };
    {
        std::vector<std::thread> pool;
        for (int i = 0; i < opt.threads; ++i) pool.emplace_back(polish_worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) return 4;

    // --- self-checks -------------------------------------------------------
    for (std::size_t i = 1; i < zeros.size(); ++i)
        if (!(zeros[i] > zeros[i - 1])) {
            std::cerr << "ordering violation at index " << i << "\n";
            return 4;
        }
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        double t = static_cast<double>(zeros[i]);
        if (t < 319) continue;
        double expected = t / (2 * M_PI) * std::log(t / (2 * M_PI)) - t / (2 * M_PI);
        if (std::fabs(expected - static_cast<double>(i + 1)) > 8.9 * std::log(t)) {
            std::cerr << "count check failed at index " << i << "\n";
            return 4;
        }
    }
    std::vector<long> samples = {0, 1, 8, 100, 1000, 10000, 50000, n_zeros - 1};
    for (long idx : samples) {
        if (idx >= n_zeros || idx < 0) continue;
        Real t = refine_mpfr(static_cast<double>(zeros[static_cast<std::size_t>(idx)]), 30, -24);
        double diff = std::fabs(t.convert_to<double>() -
                                static_cast<double>(zeros[static_cast<std::size_t>(idx)]));
        if (diff > 1e-9) {
            std::cerr << "spot check failed at index " << idx << " diff " << diff << "\n";
            return 4;
        }
        std::cerr << "  spot " << idx << " ok, |bulk - mpfr| = " << diff << "\n";
    }

    std::ofstream out(opt.out);
    if (!out) {
        std::cerr << "cannot open " << opt.out << "\n";
        return 1;
    }
    out.precision(12);
    out << std::fixed;
    for (LD z : zeros) out << z << "\n";
    out.close();
    std::cerr << "wrote " << opt.out << "\n";

    std::cerr << "refining first nine zeros at " << opt.head_digits << " digits...\n";
    std::ofstream head(opt.head_out);
    if (!head) {
        std::cerr << "cannot open " << opt.head_out << "\n";
        return 1;
    }
    for (int i = 0; i < 9; ++i) {
        Real t = refine_mpfr(static_cast<double>(zeros[static_cast<std::size_t>(i)]),
                             static_cast<unsigned>(opt.head_digits + 10),
                             -static_cast<long>(opt.head_digits));
        double diff = std::fabs(t.convert_to<double>() - static_cast<double>(zeros[i]));
        if (diff > 1e-9) {
            std::cerr << "head/bulk mismatch at zero " << i << "\n";
            return 4;
        }
        head << tauli::to_decimal(t, static_cast<unsigned>(opt.head_digits)) << "\n";
        std::cerr << "  head zero " << i + 1 << " done\n";
    }
    head.close();
    std::cerr << "wrote " << opt.head_out << "\n";
    return 0;
}
