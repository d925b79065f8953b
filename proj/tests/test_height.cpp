#include "bohm/enumerate.hpp"
#include "bohm/errors.hpp"
#include "bohm/height.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace bohm;

TEST_CASE("max_height_witness examples") {
    auto w1 = max_height_witness(1);
    CHECK(charpoly(w1) == CharPoly({GaussInt(1), GaussInt(1)}));
    CHECK(height(charpoly(w1)) == 1);
    auto w2 = max_height_witness(2);
    CHECK(charpoly_oracle(w2) == CharPoly({GaussInt(2), GaussInt(2), GaussInt(1)}));
    CHECK(height(charpoly(w2)) == 2);
    CHECK(is_max_height_pattern(w2));
}

TEST_CASE("witness attains the maximum of the n=4 families") {
    BigInt best = 0;
    for (long s : {1L, -1L})
        build_cpdb(make_hessenberg(4, "-1,0,1", s)).for_each([&](const CpdbRecord& r) {
            best = std::max(best, height(r.poly()));
        });
    CHECK(height(charpoly(max_height_witness(4))) == best);
}

TEST_CASE("two_point_witness") {
    auto m = two_point_witness(3, GaussInt(2), GaussInt(-1));
    CHECK(m.entry(1, 1) == GaussInt(-1));
    CHECK(m.entry(1, 2) == GaussInt(2));
    CHECK(m.entry(1, 3) == GaussInt(-1));
    CHECK(m.entry(2, 1) == GaussInt(1));
    CHECK(two_point_witness(4, GaussInt(-1), GaussInt(-1)).stored().size() == 10);
}

TEST_CASE("tau series: exact values, oracle agreement and positivity") {
    auto s = tau_series(60, HeightMode::Exact);
    CHECK(s.taus[0] == 1);
    CHECK(s.taus[1] == 2);
    CHECK(s.taus[2] == 5);
    for (int n = 1; n <= 60; ++n) CHECK(height(charpoly_thm2(max_height_witness(n))) == s.taus[static_cast<std::size_t>(n - 1)]);
    for (int n = 1; n <= 9; ++n) CHECK(height(charpoly_oracle(max_height_witness(n))) == s.taus[static_cast<std::size_t>(n - 1)]);
    for (int n = 3; n <= 60; ++n) CHECK(s.taus[static_cast<std::size_t>(n - 1)] > s.taus[static_cast<std::size_t>(n - 2)]);
    for (int n = 10; n <= 60; ++n) CHECK(s.taus[static_cast<std::size_t>(n - 1)] > 2 * s.taus[static_cast<std::size_t>(n - 2)]);
    // every coefficient of the witness polynomial is positive
    auto p = charpoly_thm2(max_height_witness(12));
    for (const auto& c : p.coeffs()) CHECK(sgn(c.re) > 0);
    CHECK_THROWS_AS(tau_series(2001, HeightMode::Exact), GuardExceeded);
    CHECK_THROWS_AS(tau_series(1, HeightMode::Exact), InvalidArgument);
    CHECK_THROWS_AS(tau_series(50001, HeightMode::LogFloat), GuardExceeded);
}

TEST_CASE("log mode agrees with exact mode") {
    auto e = tau_series(400, HeightMode::Exact);
    auto l = tau_series(400, HeightMode::LogFloat);
    for (int n = 1; n <= 200; ++n) CHECK(std::abs(l.log_tau(n) - e.log_tau(n)) <= 1e-10 * std::max(1.0, e.log_tau(n)));
    for (int n = 1; n <= 400; ++n) CHECK(std::abs(l.log_tau(n) - e.log_tau(n)) <= 1e-9 * e.log_tau(400));
}

TEST_CASE("negated witness has the same height series") {
    FamilySpec fs = make_hessenberg(1, "-1,0,1", -1);
    for (int n = 1; n <= 20; ++n) {
        fs.n = n;
        auto spec = std::make_shared<const FamilySpec>(fs);
        HessMatrix plus(spec, std::vector<GaussInt>(spec->storage_size(), GaussInt(1)));
        CHECK(height(charpoly(plus)) == height(charpoly(max_height_witness(n))));
        CHECK(is_max_height_pattern(plus));
    }
}

TEST_CASE("growth ratio approaches log(1+phi)") {
    auto l = tau_series(3000, HeightMode::LogFloat);
    CHECK(std::abs(l.log_ratio(2999) - log_one_plus_phi()) < 1e-3);
    CHECK(convergence_onset(l, 1e-3) > 1);
    CHECK(convergence_onset(l, 1e-3) < 3000);
    auto c = estimate_growth_constant(l);
    CHECK(c.plain > 0);
    CHECK(c.sqrt_corrected > c.plain);
    std::ostringstream os;
    write_tau_csv(tau_series(4, HeightMode::Exact), os);
    CHECK(os.str().rfind("n,log_ratio\n1,", 0) == 0);
}

TEST_CASE("verify_max_height small n") {
    auto r1 = verify_max_height(1);
    CHECK(r1.max_height == 1);
    CHECK(r1.ok());
    auto r2 = verify_max_height(2);
    CHECK(r2.max_height == 2);
    CHECK(r2.ok());
    auto r3 = verify_max_height(3);
    CHECK(r3.ok());
    CHECK(r3.max_height == 5);
    bool minus_ones_attain = false;
    for (const auto& m : r3.attaining) {
        if (m.spec().subdiag != GaussInt(-1)) continue;
        bool all_one = std::all_of(m.stored().begin(), m.stored().end(), [](const GaussInt& g) { return g == GaussInt(1); });
        minus_ones_attain |= all_one;
    }
    CHECK(minus_ones_attain);
    // only the corner h_{1,n} is free among the maximisers
    CHECK(r3.outside_pattern_free_corner == 0);
    CHECK(r3.attaining.size() == 12);
    CHECK_THROWS_AS(verify_max_height(6), GuardExceeded);
}
