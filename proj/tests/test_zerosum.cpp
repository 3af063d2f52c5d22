// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "tauli/zerosum.hpp"

using namespace tauli;
using C = CNum<Real>;

namespace {

std::string data_dir() {
    const char* env = std::getenv("TAULI_DATA_DIR");
    return env ? env : "data";
}

const ZeroTable& table100k() {
    static ZeroTable t = load_zero_table(data_dir() + "/zeros_100k.txt",
                                         data_dir() + "/zeros_head9.txt", Real("4e-9"),
                                         Real("1e-997"), Precision(50));
    return t;
}

ZeroTable single_zero_table() {
    ZeroTable t;
    t.digits = 50;
    t.theta0 = Real("4e-9");
    t.theta1 = t.theta0;
    t.raw = {"14.134725"};
    PrecisionScope scope(50);
    t.ordinates = {Real("14.134725")};
    return t;
}

ZeroTable prefix(const ZeroTable& t, std::size_t count) {
    ZeroTable p;
    p.digits = t.digits;
    p.theta0 = t.theta0;
    p.theta1 = t.theta1;
    p.tier_boundary = std::min(t.tier_boundary, count);
    p.raw.assign(t.raw.begin(), t.raw.begin() + count);
    p.ordinates.assign(t.ordinates.begin(), t.ordinates.begin() + count);
    return p;
}

} // namespace

TEST_CASE("empty stream sums to zero") {
    PrecisionScope scope(50);
    auto spec = ZetaProductSpec::parse("1,2,3,4");
    auto t = single_zero_table();
    auto r = li_partial_sum(spec, t, 3, Real(10), Real(10), Precision(50));
    CHECK(r.value == 0);
    CHECK(r.zero_count_used == 0);
}

TEST_CASE("single-zero hand-expanded oracle: n=1, tau=10, shifts (1)") {
    PrecisionScope scope(60);
    auto spec = ZetaProductSpec::parse("1");
    auto t = single_zero_table();
    auto r = li_partial_sum(spec, t, 1, Real(10), Real(20), Precision(50));

    // oracle: 1 - rho/(rho-tau) = -tau/(rho-tau), summed as 2 Re over the
    // two positive-ordinate zeros 1.5 + 14.134725 i and -0.5 + 14.134725 i
    Real t0("14.134725");
    Real expect(0);
    for (double re : {1.5, -0.5}) {
        C rho(Real(re), t0);
        C term = C(Real(-10)) / (rho - Real(10));
        expect += 2 * term.re;
    }
    CHECK(abs(r.value - expect) < pow10(-45));
    CHECK(em::to_dbl(r.value) == doctest::Approx(1.3022).epsilon(1e-3));
    CHECK(r.zero_count_used == 4);
}

TEST_CASE("grid validation and pole-tau acceptance") {
    PrecisionScope scope(50);
    auto spec = ZetaProductSpec::parse("1,2,3,4");
    auto t = single_zero_table();
    CHECK_THROWS_AS(li_series_sweep(spec, t, {}, Real(10), Real(14.2), Precision(50)),
                    DomainError);
    CHECK_THROWS_AS(li_series_sweep(spec, t, {5, 5}, Real(10), Real(14.2), Precision(50)),
                    DomainError);
    // tau = 5 is a pole of F but not a zero: accepted for the zero-sum route
    CHECK_NOTHROW(li_partial_sum(spec, t, 2, Real(5), Real(14.2), Precision(50)));
}

TEST_CASE("sweep equals independent single calls") {
    PrecisionScope scope(50);
    auto spec = ZetaProductSpec::parse("1,2,3,4");
    auto t = prefix(table100k(), 100);
    Real height = t.max_ordinate();
    std::vector<unsigned> grid = {1, 6, 11, 16, 21};
    auto sweep = li_series_sweep(spec, t, grid, Real(10), height, Precision(50));
    REQUIRE(sweep.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto single = li_partial_sum(spec, t, grid[i], Real(10), height, Precision(50));
        CHECK(abs(sweep[i].value - single.value) <= pow10(-40) * (abs(single.value) + 1));
        CHECK(sweep[i].im_residual <= pow10(5 - 50) * (abs(sweep[i].value) + 1));
    }
}

TEST_CASE("scale-out determinism: 1, 2, 8 workers bit-identical") {
    PrecisionScope scope(50);
    auto spec = ZetaProductSpec::parse("1,2,3,4");
    auto t = prefix(table100k(), 3000);
    Real height = t.max_ordinate();
    std::vector<unsigned> grid;
    for (unsigned n = 5; n <= 100; n += 5) grid.push_back(n);

    SumOptions w1{1, 256};
    SumOptions w2{2, 256};
    SumOptions w8{8, 256};
    auto a = li_series_sweep(spec, t, grid, Real(10), height, Precision(50), w1);
    auto b = li_series_sweep(spec, t, grid, Real(10), height, Precision(50), w2);
    auto c = li_series_sweep(spec, t, grid, Real(10), height, Precision(50), w8);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(a[i].value == b[i].value);
        CHECK(a[i].value == c[i].value);
    }
}

TEST_CASE("binomial route: n=2 single pair algebraic identity") {
    PrecisionScope scope(60);
    auto spec = ZetaProductSpec::parse("1");
    auto t = single_zero_table();
    // with the truncated surrogate b0 the two routes are algebraically
    // identical over the same finite zero set
    auto direct = li_partial_sum(spec, t, 2, Real(1), Real(15), Precision(50));
    auto binom = li_partial_sum_binomial(spec, t, 2, Real(1), Real(15), Precision(50),
                                         BinomialB0::truncated_surrogate);
    CHECK(abs(direct.value - binom.value) < pow10(-40) * (abs(direct.value) + 1));
}

TEST_CASE("binomial route with the evaluated b0 tracks the surrogate") {
    PrecisionScope scope(50);
    auto spec = ZetaProductSpec::parse("1,2,3,4");
    auto t = prefix(table100k(), 10000);
    Real height = t.max_ordinate();
    // the two b0 sources differ by the truncated tail of sum* 1/rho, so the
    // routes drift apart by n tau times that residual (~ K log T / T here)
    for (unsigned n : {1u, 3u}) {
        auto bs = li_partial_sum_binomial(spec, t, n, Real(10), height, Precision(50),
                                          BinomialB0::from_special);
        auto bt = li_partial_sum_binomial(spec, t, n, Real(10), height, Precision(50),
                                          BinomialB0::truncated_surrogate);
        Real drift_scale = Real(n) * 10 * 4 * log(height) / height * 10;
        CHECK(abs(bs.value - bt.value) <= drift_scale);
        CHECK(abs(bs.value - bt.value) > 0); // genuinely different sources
    }
}

TEST_CASE("binomial route agreement on a 1000-ordinate prefix") {
    PrecisionScope scope(50);
    auto spec = ZetaProductSpec::parse("1,2,3,4");
    auto t = prefix(table100k(), 1000);
    Real height = t.max_ordinate();
    for (unsigned n : {1u, 7u, 23u, 50u}) {
        auto direct = li_partial_sum(spec, t, n, Real(10), height, Precision(50));
        auto binom = li_partial_sum_binomial(spec, t, n, Real(10), height, Precision(50),
                                             BinomialB0::truncated_surrogate);
        CHECK(abs(direct.value - binom.value) <=
              pow10(10 - 50) * (abs(direct.value) + 1));
    }
}

TEST_CASE("monotone truncation consistency against the bound") {
    PrecisionScope scope(50);
    auto spec = ZetaProductSpec::parse("1,2,3,4");
    auto t1 = prefix(table100k(), 2000);
    auto t2 = prefix(table100k(), 5000);
    Real h1 = t1.max_ordinate();
    Real h2 = t2.max_ordinate();
    Real amp = shift_amplitude_A(spec, Real(10));
    for (unsigned n : {1u, 20u, 60u}) {
        auto a = li_partial_sum(spec, t1, n, Real(10), h1, Precision(50));
        auto b = li_partial_sum(spec, t2, n, Real(10), h2, Precision(50));
        Real bound = truncation_bound(4, Real(10), n, h1, amp);
        CHECK(abs(b.value - a.value) <= bound);
    }
}

TEST_CASE("lambda*(1,tau,T) approaches tau xi'_F/xi_F(tau)") {
    PrecisionScope scope(50);
    auto spec = ZetaProductSpec::parse("1,2,3,4");
    auto t = prefix(table100k(), 20000);
    Real height = t.max_ordinate();
    auto part = li_partial_sum(spec, t, 1, Real(10), height, Precision(50));
    Real target = 10 * completed_xi_logderiv(spec, C(Real(10)), Precision(50)).re;
    Real amp = shift_amplitude_A(spec, Real(10));
    // residual within the n=1 truncation bound (15/2) K tau A log T / T
    Real bound = Real(15) / 2 * 4 * 10 * amp * log(height) / height;
    CHECK(abs(part.value - target) <= bound);
    CHECK(abs(truncation_bound(4, Real(10), 1, height, amp) - bound) / bound < pow10(-30));
}

TEST_CASE("combined interval wiring") {
    PrecisionScope scope(50);
    auto spec = ZetaProductSpec::parse("1,2,3,4");
    auto t = prefix(table100k(), 1000);
    Real height = t.max_ordinate();
    auto part = li_partial_sum(spec, t, 150, Real(5), height, Precision(50));
    auto est = combined_interval(part, spec, t);
    CHECK(est.report.rule == BoundRule::prop64_tau5);
    CHECK(est.radius > 0);
    CHECK(est.radius == est.report.truncation + est.report.perturbation);

    auto part10 = li_partial_sum(spec, t, 300, Real(10), height, Precision(50));
    auto est10 = combined_interval(part10, spec, t);
    CHECK(est10.report.rule == BoundRule::prop64_tau10);

    // beyond the prop64 window at tau=10: n=301 falls back to ex63
    auto part301 = li_partial_sum(spec, t, 301, Real(10), height, Precision(50));
    auto est301 = combined_interval(part301, spec, t);
    CHECK(est301.report.rule == BoundRule::ex63);

    // tau=3 with these shifts: no certified perturbation rule
    auto part3 = li_partial_sum(spec, t, 10, Real(3), height, Precision(50));
    CHECK_THROWS_AS(combined_interval(part3, spec, t), RuleError);
}
