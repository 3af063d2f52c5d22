// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "tauli/model.hpp"

using namespace tauli;

TEST_CASE("descriptor for shifts (1,2,3,4)") {
    PrecisionScope scope(50);
    auto spec = ZetaProductSpec::parse("1,2,3,4");
    auto d = zeta_product_descriptor(spec);

    CHECK(d.sigma0 == Rational(5));
    CHECK(d.sigma1 == Rational(1));
    CHECK(abs(d.q_f - pow(real_pi(), -4)) < pow10(-45));
    CHECK(d.gamma_factors.size() == 8);
    for (const auto& g : d.gamma_factors) CHECK(g.lambda == Rational(1, 2));

    CHECK(d.poles.size() == 8);
    unsigned total_m = 0;
    for (const auto& p : d.poles) total_m += p.m;
    CHECK(total_m == 8); // all simple

    // pairing: (2,-1), (3,-2), (4,-3); unpaired {0, 5}
    CHECK(d.paired_count_2m == 6);
    CHECK(d.delta_sigma1 == 0);
    std::vector<Rational> unpaired;
    for (std::size_t i = d.paired_count_2m; i < d.poles.size(); ++i)
        unpaired.push_back(d.poles[i].s);
    std::sort(unpaired.begin(), unpaired.end());
    CHECK(unpaired == std::vector<Rational>{Rational(0), Rational(5)});

    // C_F = sum lambda_j = K
    CHECK(d.c_f() == Rational(4));
    CHECK(d.max_re_rho() == Rational(9, 2));
}

TEST_CASE("descriptor for a single shift") {
    PrecisionScope scope(50);
    auto d = zeta_product_descriptor(ZetaProductSpec::parse("1"));
    CHECK(d.paired_count_2m == 0);
    CHECK(d.delta_sigma1 == 0);
    CHECK(d.poles.size() == 2);
}

TEST_CASE("duplicate shifts merge into higher-order poles") {
    PrecisionScope scope(50);
    auto d = zeta_product_descriptor(ZetaProductSpec::parse("2,2"));
    CHECK(d.poles.size() == 2);
    for (const auto& p : d.poles) CHECK(p.m == 2);
}

TEST_CASE("delta entry when sigma1/2 is a pole") {
    PrecisionScope scope(50);
    auto d = zeta_product_descriptor(ZetaProductSpec::parse("1/2"));
    // poles 1/2 and 3/2; 1/2 = sigma1/2 is the delta entry
    CHECK(d.delta_sigma1 == 1);
    CHECK(d.paired_count_2m == 0);
    CHECK(d.poles[0].s == Rational(1, 2));
}

TEST_CASE("validate_descriptor round trip and violations") {
    PrecisionScope scope(50);
    for (const char* shifts : {"1,2,3,4", "1", "1/2,7/3", "2,2", "1/2"}) {
        auto d = zeta_product_descriptor(ZetaProductSpec::parse(shifts));
        auto rep = validate_descriptor(d);
        CHECK_MESSAGE(rep.clean(), shifts);
        // partition completeness
        CHECK(d.paired_count_2m + d.delta_sigma1 <= d.poles.size());
    }

    auto d = zeta_product_descriptor(ZetaProductSpec::parse("1,2"));
    d.sigma1 = 4; // breaks sigma0 >= sigma1 and the pairing law
    auto rep = validate_descriptor(d);
    CHECK(!rep.clean());
    bool has_order = false;
    for (const auto& v : rep.violations)
        if (v.find("sigma0 >= sigma1") != std::string::npos) has_order = true;
    CHECK(has_order);

    auto d2 = zeta_product_descriptor(ZetaProductSpec::parse("1,2"));
    REQUIRE(d2.paired_count_2m == 2);
    d2.poles[1].s = Rational(7); // declared pair no longer sums to sigma1
    auto rep2 = validate_descriptor(d2);
    bool has_pairing = false;
    for (const auto& v : rep2.violations)
        if (v.find("pairing law") != std::string::npos) has_pairing = true;
    CHECK(has_pairing);
}

TEST_CASE("tau domains per route") {
    PrecisionScope scope(50);
    auto d = zeta_product_descriptor(ZetaProductSpec::parse("1,2,3,4"));

    auto zs = tau_domain(d, TauRoute::zero_sum);
    CHECK(zs.lower == Rational(1));
    CHECK(zs.upper == Rational(10));
    CHECK(zs.contains(Rational(1)));
    CHECK(zs.contains(Rational(10)));
    CHECK(!zs.contains(Rational(11)));

    auto hi = tau_domain(d, TauRoute::arithmetic_high_tau);
    CHECK(hi.lower == Rational(5));
    CHECK(hi.lower_open);
    CHECK(!hi.contains(Rational(5)));
    CHECK(hi.contains(Rational(6)));
    CHECK(hi.contains(Rational(10)));

    // general route: excluded points are sigma1 - s_i over the whole pole
    // set; within [1,10] that is {1, 2, 3, 4} for these shifts
    auto gen = tau_domain(d, TauRoute::arithmetic_general);
    CHECK(gen.excluded == std::vector<Rational>{Rational(1), Rational(2), Rational(3), Rational(4)});
    CHECK(!gen.contains(Rational(1)));
    CHECK(!gen.contains(Rational(3)));
    CHECK(gen.contains(Rational(5)));
    CHECK(gen.contains(Rational(10)));
}

TEST_CASE("config parsing") {
    std::stringstream ss("# comment\nshifts = 1, 2, 3, 4\n");
    auto spec = parse_spec_config(ss);
    CHECK(spec.shifts == std::vector<Rational>{1, 2, 3, 4});

    std::stringstream rational("shifts = 1/2, 0.75\n");
    auto spec2 = parse_spec_config(rational);
    CHECK(spec2.shifts == std::vector<Rational>{Rational(1, 2), Rational(3, 4)});

    std::stringstream bad("shifts = 1, x\n");
    CHECK_THROWS_AS(parse_spec_config(bad), ParseError);
    std::stringstream none("other = 1\n");
    CHECK_THROWS_AS(parse_spec_config(none), ParseError);
    CHECK_THROWS_AS(ZetaProductSpec::parse("-1,2"), DomainError);
    CHECK_THROWS_AS(ZetaProductSpec::parse(""), ParseError);
}
