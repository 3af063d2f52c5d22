// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tauli/zeros.hpp"

using namespace tauli;

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

} // namespace

TEST_CASE("parse two ordinates") {
    PrecisionScope scope(50);
    // oracle: the first two entries of the bundled table file itself
    std::ifstream src(data_dir() + "/zeros_100k.txt");
    REQUIRE(src.good());
    std::string l1, l2;
    std::getline(src, l1);
    std::getline(src, l2);

    std::stringstream ss(l1 + "\n" + l2 + "\n");
    auto t = parse_zero_table(ss, Real("4e-9"), Real("1e-997"), 0);
    CHECK(t.count() == 2);
    CHECK(t.raw[0] == l1);
    CHECK(t.raw[1] == l2);
    CHECK(em::to_dbl(t.max_ordinate()) == doctest::Approx(21.022039638772).epsilon(1e-10));
}

TEST_CASE("parse errors carry line numbers") {
    PrecisionScope scope(50);
    std::stringstream bad("abc\n");
    try {
        parse_zero_table(bad, Real("4e-9"), Real("1e-997"), 0);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
    }

    std::stringstream nonmono("14.134725\n13.0\n");
    try {
        parse_zero_table(nonmono, Real("4e-9"), Real("1e-997"), 0);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }

    std::stringstream empty("");
    CHECK_THROWS_AS(parse_zero_table(empty, Real("4e-9"), Real("1e-997"), 0), ParseError);
}

TEST_CASE("parsing retains all source digits (round trip)") {
    PrecisionScope scope(50);
    const auto& t = table100k();
    // head entries carry ~1005 digits and must be preserved verbatim
    CHECK(t.raw[0].size() > 1000);
    CHECK(t.tier_boundary == 9);
    // a parsed head value re-serialized at 900 digits matches its source
    PrecisionScope wide(950);
    std::string ser = to_decimal(t.ordinates[0], 900);
    // compare numerically: parse back and diff
    Real back(ser);
    CHECK(abs(back - t.ordinates[0]) < pow10(-890));
}

TEST_CASE("validate the bundled table") {
    PrecisionScope scope(50);
    auto rep = validate_table(table100k());
    for (const auto& v : rep.violations) MESSAGE(v);
    CHECK(rep.clean());
}

TEST_CASE("decimated table fails the count check") {
    PrecisionScope scope(50);
    const auto& t = table100k();
    ZeroTable dec;
    dec.digits = t.digits;
    dec.theta0 = t.theta0;
    dec.theta1 = t.theta1;
    for (std::size_t i = 0; i < t.count(); ++i)
        if (i % 10 != 3) { // drop 10%
            dec.raw.push_back(t.raw[i]);
            dec.ordinates.push_back(t.ordinates[i]);
        }
    auto rep = validate_table(dec);
    bool count_flagged = false;
    for (const auto& v : rep.violations)
        if (v.find("count") != std::string::npos) count_flagged = true;
    CHECK(count_flagged);
}

TEST_CASE("first-ordinate window check") {
    PrecisionScope scope(50);
    ZeroTable t;
    t.digits = 50;
    t.theta0 = Real("4e-9");
    t.theta1 = Real("1e-997");
    t.raw = {"13.9", "21.0"};
    t.ordinates = {Real("13.9"), Real("21.0")};
    auto rep = validate_table(t);
    bool flagged = false;
    for (const auto& v : rep.violations)
        if (v.find("14.13") != std::string::npos) flagged = true;
    CHECK(flagged);
}

TEST_CASE("enumerate_f_zeros counts and containment") {
    PrecisionScope scope(50);
    ZeroTable t;
    t.digits = 50;
    t.theta0 = Real("4e-9");
    t.theta1 = t.theta0;
    t.raw = {"14.134725"};
    t.ordinates = {Real("14.134725")};

    auto spec1 = ZetaProductSpec::parse("1");
    auto st = enumerate_f_zeros(t, spec1, Real(20));
    CHECK(st.zero_count() == 4);
    std::vector<CNum<Real>> zs;
    st.for_each([&](const CNum<Real>& z) { zs.push_back(z); });
    REQUIRE(zs.size() == 4);
    CHECK(em::to_dbl(zs[0].re) == doctest::Approx(1.5));
    CHECK(em::to_dbl(zs[0].im) == doctest::Approx(14.134725));
    CHECK(em::to_dbl(zs[1].im) == doctest::Approx(-14.134725));
    CHECK(em::to_dbl(zs[2].re) == doctest::Approx(-0.5));

    auto spec4 = ZetaProductSpec::parse("1,2,3,4");
    auto st4 = enumerate_f_zeros(t, spec4, Real(20));
    CHECK(st4.zero_count() == 16);

    // T below the first ordinate: empty stream
    auto st_empty = enumerate_f_zeros(t, spec4, Real(10));
    CHECK(st_empty.zero_count() == 0);

    // T beyond coverage: error naming the max
    CHECK_THROWS_AS(enumerate_f_zeros(t, spec4, Real(100)), DomainError);
}

TEST_CASE("zero-count bound dominates every table prefix") {
    PrecisionScope scope(50);
    const auto& t = table100k();
    // (5/8) T log T >= N(T) at every prefix height
    for (std::size_t i = 0; i < t.count(); i += 997) {
        double td = em::to_dbl(t.ordinates[i]);
        double bound = td < 14 ? 0.0 : 0.625 * td * std::log(td);
        CHECK(bound >= static_cast<double>(i + 1));
    }
}

TEST_CASE("conjugate closure and strip containment on the real table") {
    PrecisionScope scope(50);
    const auto& t = table100k();
    auto spec = ZetaProductSpec::parse("1,2,3,4");
    auto st = enumerate_f_zeros(t, spec, Real(1000));
    std::size_t n = 0, conj_hits = 0;
    std::vector<CNum<Real>> all;
    st.for_each([&](const CNum<Real>& z) {
        ++n;
        CHECK(z.re >= Real(-4));
        CHECK(z.re <= Real(5));
        all.push_back(z);
    });
    CHECK(n == st.zero_count());
    CHECK(n == 4 * 4 * t.count_below(Real(1000)));
    // conjugate closure: each (re, +t) matched by exactly one (re, -t)
    for (std::size_t i = 0; i + 1 < all.size(); i += 2) {
        if (all[i].im == -all[i + 1].im && all[i].re == all[i + 1].re) ++conj_hits;
    }
    CHECK(conj_hits == n / 2);
}
