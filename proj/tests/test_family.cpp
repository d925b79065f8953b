#include "bohm/charpoly.hpp"
#include "bohm/errors.hpp"
#include "bohm/family.hpp"

#include <doctest.h>

#include <random>

using namespace bohm;

TEST_CASE("GaussInt text round trip and shorthands") {
    CHECK(parse_gauss_int("i") == GaussInt(0, 1));
    CHECK(parse_gauss_int("-i") == GaussInt(0, -1));
    CHECK(parse_gauss_int("3-2i") == GaussInt(3, -2));
    CHECK(parse_gauss_int("-7") == GaussInt(-7));
    CHECK(parse_gauss_int("+1") == GaussInt(1));
    CHECK(parse_gauss_int("2+i") == GaussInt(2, 1));
    CHECK(to_string(GaussInt(0, 1)) == "0+1i");
    CHECK(to_string(GaussInt(4, -3)) == "4-3i");
    CHECK_THROWS_AS(parse_gauss_int("1.5"), ParseError);
    CHECK_THROWS_AS(parse_gauss_int(""), ParseError);
    CHECK_THROWS_AS(parse_gauss_int("1+2+3i"), ParseError);
}

TEST_CASE("GaussInt exact division") {
    CHECK(divexact(GaussInt(5, 0), GaussInt(2, 1)) == GaussInt(2, -1));
    CHECK_THROWS_AS(divexact(GaussInt(3), GaussInt(2)), InvalidArgument);
}

TEST_CASE("population parsing round-trips") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<GaussInt> els;
        int size = 1 + trial % 5;
        while (static_cast<int>(els.size()) < size) {
            GaussInt g(d(rng), d(rng));
            if (std::find(els.begin(), els.end(), g) == els.end()) els.push_back(g);
        }
        Population p(els);
        CHECK(parse_population(to_string(p)) == p);
    }
    CHECK_THROWS_AS(parse_population("1,1"), InvalidArgument);
    CHECK(parse_population("0,i,-i").contains_zero());
    CHECK(parse_population("0,i,-i").nonzero_are_units());
    CHECK_FALSE(parse_population("-1,1").contains_zero());
}

TEST_CASE("family spec validation and text form") {
    CHECK_THROWS_AS(make_hessenberg(3, "-1,1", 1, true), InvalidArgument);
    CHECK_THROWS_AS(make_hessenberg(3, "-1,0,1", 2, false), InvalidArgument);
    CHECK_THROWS_AS(make_hessenberg(0, "0,1"), InvalidArgument);
    auto spec = make_hessenberg(4, "-1,0,1", -1, true);
    CHECK(parse_family_spec(to_string(spec)) == spec);
    auto gen = make_general(3, "-1,0,1");
    CHECK(parse_family_spec(to_string(gen)) == gen);
    CHECK_THROWS_AS(parse_family_spec("n=3"), ParseError);
    CHECK_THROWS_AS(parse_family_spec("n=3 pop=0,1 colour=red"), ParseError);
}

TEST_CASE("family_size") {
    CHECK(family_size(make_hessenberg(6, "-1,0,1")) == BigInt("10460353203"));
    CHECK(family_size(make_hessenberg(7, "-1,0,1", 1, true)) == BigInt("10460353203"));
    CHECK(family_size(make_hessenberg(1, "0,1", 1, true)) == 1);
    CHECK(family_size(make_general(3, "-1,0,1")) == 19683);
}

TEST_CASE("matrix_entry") {
    auto spec = std::make_shared<const FamilySpec>(make_hessenberg(3, "-1,0,1", -1));
    // column-major upper storage: h11 | h12 h22 | h13 h23 h33
    HessMatrix m(spec, {GaussInt(0), GaussInt(1), GaussInt(-1), GaussInt(1), GaussInt(0), GaussInt(-1)});
    CHECK(m.entry(3, 1) == GaussInt(0));
    CHECK(m.entry(2, 1) == GaussInt(-1));
    CHECK(m.entry(1, 2) == GaussInt(1));
    CHECK(m.entry(2, 2) == GaussInt(-1));
    CHECK(m.entry(3, 3) == GaussInt(-1));
    CHECK_THROWS_AS((void)m.entry(0, 1), std::out_of_range);
    CHECK_THROWS_AS((void)m.entry(1, 4), std::out_of_range);
    CHECK_THROWS_AS(HessMatrix(spec, {GaussInt(2), GaussInt(0), GaussInt(0), GaussInt(0), GaussInt(0), GaussInt(0)}),
                    InvalidArgument);
}

TEST_CASE("normalize_subdiagonal n=2 matches the similarity transforms") {
    // P = {0, +-1, +-i} is invariant under every Gaussian unit.
    for (const char* s : {"1", "-1", "i", "-i"}) {
        FamilySpec fs = make_hessenberg(2, "0,1,-1,i,-i");
        fs.subdiag = parse_gauss_int(s);
        auto spec = std::make_shared<const FamilySpec>(fs);
        GaussInt a(1), b(0, 1), c(-1);
        HessMatrix h(spec, {a, b, c});
        auto plus = normalize_subdiagonal(h, SubdiagTarget::PlusOne);
        CHECK(plus.entry(1, 1) == a);
        CHECK(plus.entry(1, 2) == b * fs.subdiag);
        CHECK(plus.entry(2, 1) == GaussInt(1));
        CHECK(plus.entry(2, 2) == c);
        auto minus = normalize_subdiagonal(h, SubdiagTarget::MinusOne);
        CHECK(minus.entry(1, 2) == -(b * fs.subdiag));
        CHECK(minus.entry(2, 1) == GaussInt(-1));
        CHECK(charpoly_oracle(plus) == charpoly_oracle(h));
        CHECK(charpoly_oracle(minus) == charpoly_oracle(h));
    }
}

TEST_CASE("normalize_subdiagonal identity case and invariance failure") {
    auto spec = std::make_shared<const FamilySpec>(make_hessenberg(3, "-1,0,1", 1));
    HessMatrix m = HessMatrix::from_choices(spec, std::vector<std::size_t>{0, 1, 2, 2, 1, 0});
    CHECK(normalize_subdiagonal(m, SubdiagTarget::PlusOne).stored().size() == m.stored().size());
    auto same = normalize_subdiagonal(m, SubdiagTarget::PlusOne);
    CHECK(std::equal(same.stored().begin(), same.stored().end(), m.stored().begin()));

    auto zero_one = std::make_shared<const FamilySpec>(make_hessenberg(2, "0,1", 1));
    HessMatrix z = HessMatrix::from_choices(zero_one, std::vector<std::size_t>{1, 1, 0});
    CHECK_THROWS_AS(normalize_subdiagonal(z, SubdiagTarget::MinusOne), InvalidArgument);
}

TEST_CASE("normalize_subdiagonal preserves the characteristic polynomial (property)") {
    std::mt19937 rng(11);
    for (int n = 1; n <= 6; ++n) {
        for (const char* s : {"1", "-1", "i", "-i"}) {
            FamilySpec fs = make_hessenberg(n, "0,1,-1,i,-i");
            fs.subdiag = parse_gauss_int(s);
            auto spec = std::make_shared<const FamilySpec>(fs);
            std::uniform_int_distribution<std::size_t> d(0, fs.population.size() - 1);
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<std::size_t> choice(fs.free_entry_count());
                for (auto& c : choice) c = d(rng);
                HessMatrix m = HessMatrix::from_choices(spec, choice);
                auto p = charpoly_oracle(m);
                for (auto t : {SubdiagTarget::PlusOne, SubdiagTarget::MinusOne}) {
                    auto norm = normalize_subdiagonal(m, t);
                    CHECK(norm.spec().subdiag == GaussInt(t == SubdiagTarget::PlusOne ? 1 : -1));
                    CHECK(charpoly_thm2(norm) == p);
                }
            }
        }
    }
}
