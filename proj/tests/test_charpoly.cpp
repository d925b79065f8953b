#include "bohm/charpoly.hpp"
#include "bohm/errors.hpp"
#include "bohm/family.hpp"

#include <doctest.h>

#include <random>

using namespace bohm;

namespace {

std::vector<GaussInt> ints(std::initializer_list<long> v) {
    std::vector<GaussInt> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

HessMatrix all_entries(int n, long value, long s) {
    auto spec = std::make_shared<const FamilySpec>(make_hessenberg(n, "-1,0,1", s));
    return HessMatrix(spec, std::vector<GaussInt>(spec->storage_size(), GaussInt(value)));
}

HessMatrix random_member(const std::shared_ptr<const FamilySpec>& spec, std::mt19937& rng) {
    std::uniform_int_distribution<std::size_t> d(0, spec->population.size() - 1);
    std::vector<std::size_t> choice(spec->free_entry_count());
    for (auto& c : choice) c = d(rng);
    return HessMatrix::from_choices(spec, choice);
}

} // namespace

TEST_CASE("charpoly_thm1 examples") {
    // Q_0 = 1 for the empty matrix is the CharPoly default.
    CHECK(CharPoly().degree() == 0);
    auto one = std::make_shared<const FamilySpec>(make_hessenberg(1, "-1,0,1,2"));
    HessMatrix h(one, {GaussInt(2)});
    CHECK(charpoly_thm1(h) == CharPoly(ints({-2, 1})));
    // sympy: det(zI - H) for the all -1 3x3 = z^3 + 3z^2 + 5z + 4
    CHECK(charpoly_thm1(all_entries(3, -1, 1)) == CharPoly(ints({4, 5, 3, 1})));
}

TEST_CASE("charpoly_thm2 examples") {
    CHECK(charpoly_thm2(all_entries(2, -1, 1)) == CharPoly(ints({2, 2, 1})));
    auto one = std::make_shared<const FamilySpec>(make_hessenberg(1, "-1,0,1"));
    CHECK(charpoly_thm2(HessMatrix(one, {GaussInt(-1)})) == CharPoly(ints({1, 1})));
    CHECK(charpoly_thm2(all_entries(3, -1, 1)) == CharPoly(ints({4, 5, 3, 1})));
}

TEST_CASE("charpoly_oracle examples") {
    DenseMatrix zero(1);
    CHECK(charpoly_oracle(zero) == CharPoly(ints({0, 1})));
    DenseMatrix swap(2);
    swap(0, 1) = GaussInt(1);
    swap(1, 0) = GaussInt(1);
    CHECK(charpoly_oracle(swap) == CharPoly(ints({-1, 0, 1})));
    DenseMatrix rot(2);
    rot(0, 1) = GaussInt(-1);
    rot(1, 0) = GaussInt(1);
    CHECK(charpoly_oracle(rot) == CharPoly(ints({1, 0, 1})));
    CHECK_THROWS_AS(charpoly_oracle(DenseMatrix(13)), GuardExceeded);
}

TEST_CASE("height") {
    CHECK(height(CharPoly(ints({2, 2, 1}))) == 2);
    CHECK(height(CharPoly(ints({0, 0, 0, 0, 1}))) == 1);
    CHECK(height(CharPoly(ints({4, 5, 3, 1}))) == 5);
    CHECK(height(CharPoly({GaussInt(3, -7), GaussInt(1)})) == 7);
}

TEST_CASE("CharPoly rejects non-monic input and prints readably") {
    CHECK_THROWS_AS(CharPoly(ints({1, 2})), InvalidArgument);
    CHECK(to_string(CharPoly(ints({4, 5, 3, 1}))) == "z^3+3*z^2+5*z+4");
    CHECK(to_string(CharPoly(ints({-1, 0, 1}))) == "z^2-1");
}

TEST_CASE("thm1 = thm2 = oracle on random members of assorted families (property)") {
    std::mt19937 rng(2024);
    struct Fam {
        const char* pop;
        long s;
        bool zero;
    };
    for (int n = 1; n <= 8; ++n) {
        for (Fam f : {Fam{"-1,0,1", 1, false}, Fam{"-1,0,1", -1, true}, Fam{"-1,1", 1, false}, Fam{"0,1", -1, false},
                      Fam{"-2,3,5", 1, false}}) {
            auto spec = std::make_shared<const FamilySpec>(make_hessenberg(n, f.pop, f.s, f.zero));
            for (int trial = 0; trial < 25; ++trial) {
                auto m = random_member(spec, rng);
                auto p = charpoly_thm2(m);
                CHECK(charpoly_thm1(m) == p);
                CHECK(charpoly_oracle(m) == p);
                CHECK(p.is_real());
            }
        }
        FamilySpec cplx = make_hessenberg(n, "0,i,-i", 1, true);
        cplx.subdiag = GaussInt(0, 1);
        auto spec = std::make_shared<const FamilySpec>(cplx);
        for (int trial = 0; trial < 25; ++trial) {
            auto m = random_member(spec, rng);
            CHECK(charpoly_thm1(m) == charpoly_thm2(m));
            CHECK(charpoly_oracle(m) == charpoly_thm2(m));
        }
    }
}

TEST_CASE("negation flips alternate coefficients and keeps the height (property)") {
    std::mt19937 rng(5);
    for (int n = 1; n <= 7; ++n) {
        auto spec = std::make_shared<const FamilySpec>(make_hessenberg(n, "-1,0,1", 1));
        for (int trial = 0; trial < 30; ++trial) {
            auto m = random_member(spec, rng);
            DenseMatrix neg = to_dense(m);
            for (auto& x : neg.a) x = -x;
            auto p = charpoly_thm2(m);
            auto q = charpoly_oracle(neg);
            CHECK(q == negated_charpoly(p));
            CHECK(height(q) == height(p));
        }
    }
}

TEST_CASE("Cayley-Hamilton spot checks") {
    std::mt19937 rng(99);
    for (int n = 1; n <= 6; ++n) {
        auto spec = std::make_shared<const FamilySpec>(make_hessenberg(n, "-1,0,1,i", 1));
        for (int trial = 0; trial < 10; ++trial) {
            auto m = random_member(spec, rng);
            DenseMatrix d = to_dense(m);
            CHECK(evaluate_at(charpoly_thm2(m), d) == DenseMatrix(n));
        }
    }
}
