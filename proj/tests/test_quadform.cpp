#include "cmnorm/quadform.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

using namespace cmnorm;

TEST_CASE("make_discriminant splits off the conductor") {
    Discriminant d = make_discriminant(-12);
    CHECK(d.fundamental == -3);
    CHECK(d.conductor == 2);

    CHECK(make_discriminant(-3) == Discriminant{-3, -3, 1});
    CHECK(make_discriminant(-75) == Discriminant{-75, -3, 5});
    CHECK(make_discriminant(-4) == Discriminant{-4, -4, 1});
    CHECK(make_discriminant(-16) == Discriminant{-16, -4, 2});
    CHECK(make_discriminant(-27) == Discriminant{-27, -3, 3});
    CHECK(make_discriminant(-20) == Discriminant{-20, -20, 1});  // -20 = 4*(-5) is fundamental
    CHECK(make_discriminant(-7500) == Discriminant{-7500, -3, 50});

    CHECK_THROWS_AS(make_discriminant(-5), std::invalid_argument);   // 3 mod 4
    CHECK_THROWS_AS(make_discriminant(-6), std::invalid_argument);   // 2 mod 4
    CHECK_THROWS_AS(make_discriminant(0), std::invalid_argument);
    CHECK_THROWS_AS(make_discriminant(8), std::invalid_argument);
}

TEST_CASE("discriminant factorization invariant") {
    for (long long D = 3; D <= 2000; ++D) {
        if (D % 4 != 0 && D % 4 != 3) continue;
        Discriminant d = make_discriminant(-D);
        CHECK(d.value == d.conductor * d.conductor * d.fundamental);
        // Fundamental part is itself a valid discriminant with conductor 1.
        Discriminant k = make_discriminant(d.fundamental);
        CHECK(k.conductor == 1);
    }
}

TEST_CASE("reduced forms at small discriminants") {
    CHECK(reduced_forms(make_discriminant(-3)) == std::vector<QuadForm>{{1, 1, 1}});
    CHECK(reduced_forms(make_discriminant(-12)) == std::vector<QuadForm>{{1, 0, 3}});
    CHECK(reduced_forms(make_discriminant(-23)) ==
          std::vector<QuadForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
}

TEST_CASE("reduced forms are reduced, primitive, distinct, and complete") {
    for (long long D = 3; D <= 2000; ++D) {
        if (D % 4 != 0 && D % 4 != 3) continue;
        Discriminant d = make_discriminant(-D);
        auto forms = reduced_forms(d);
        REQUIRE(!forms.empty());
        std::set<std::pair<long long, long long>> seen;
        for (const auto& f : forms) {
            CHECK(f.discriminant() == -D);
            CHECK(f.a > 0);
            CHECK(std::abs(f.b) <= f.a);
            CHECK(f.a <= f.c);
            if (std::abs(f.b) == f.a || f.a == f.c) CHECK(f.b >= 0);
            CHECK(std::gcd(std::gcd(f.a, f.b), f.c) == 1);
            CHECK(seen.insert({f.a, f.b}).second);  // sorted-unique key
        }
        for (size_t i = 1; i < forms.size(); ++i) {
            bool ordered = forms[i - 1].a < forms[i].a ||
                           (forms[i - 1].a == forms[i].a && forms[i - 1].b < forms[i].b);
            CHECK(ordered);
        }
    }
}

TEST_CASE("each class has exactly one reduced representative") {
    // Random unimodular images of each reduced form must reduce back to it,
    // and any primitive form of the discriminant must reduce into the list.
    for (long long D = 3; D <= 200; ++D) {
        if (D % 4 != 0 && D % 4 != 3) continue;
        Discriminant d = make_discriminant(-D);
        auto forms = reduced_forms(d);
        unsigned seed = static_cast<unsigned>(D);
        for (const auto& f : forms) {
            for (unsigned s = 0; s < 5; ++s) {
                QuadForm moved = oracles::random_equivalent_form(f, seed * 31 + s);
                CHECK(oracles::reduce_form(moved.a, moved.b, moved.c) == f);
            }
        }
        // Brute-force scan of primitive forms with small coefficients.
        for (long long a = 1; a <= 8; ++a)
            for (long long b = -8; b <= 8; ++b) {
                long long num = b * b + D;
                if (num % (4 * a) != 0) continue;
                long long c = num / (4 * a);
                if (c < 1 || std::gcd(std::gcd(a, b), c) != 1) continue;
                QuadForm r = oracles::reduce_form(a, b, c);
                CHECK(std::find(forms.begin(), forms.end(), r) != forms.end());
            }
    }
}

TEST_CASE("class numbers") {
    CHECK(class_number(make_discriminant(-3)) == 1);
    CHECK(class_number(make_discriminant(-4)) == 1);
    CHECK(class_number(make_discriminant(-11)) == 1);
    CHECK(class_number(make_discriminant(-19)) == 1);
    CHECK(class_number(make_discriminant(-15)) == 2);
    CHECK(class_number(make_discriminant(-23)) == 3);
    CHECK(class_number(make_discriminant(-239)) == 15);
    CHECK(class_number(make_discriminant(-7500)) == 30);
}

TEST_CASE("class numbers match the conductor formula in the Eisenstein family") {
    for (long long f = 2; f <= 50; ++f)
        CHECK(class_number(make_discriminant(-3 * f * f)) == oracles::eisenstein_class_number(f));
}

TEST_CASE("splitting fixed values") {
    CHECK(splitting(7, -3) == Splitting::Split);
    CHECK(splitting(3, -3) == Splitting::Ramified);
    CHECK(splitting(7, -4) == Splitting::Inert);
    CHECK(splitting(2, -7) == Splitting::Split);    // -7 = 1 mod 8
    CHECK(splitting(2, -15) == Splitting::Split);
    CHECK(splitting(2, -3) == Splitting::Inert);
    CHECK_THROWS_AS(splitting(5, -12), std::invalid_argument);  // non-fundamental
    CHECK(std::string(to_string(Splitting::Split)) == "split");
}

TEST_CASE("splitting in the two cyclotomic-adjacent fields follows congruences") {
    for (unsigned long p : primes_up_to(10000)) {
        mpz_class pz(static_cast<long>(p));
        if (p != 3)
            CHECK((splitting(pz, -3) == Splitting::Split) == (p % 3 == 1));
        else
            CHECK(splitting(pz, -3) == Splitting::Ramified);
        if (p != 2)
            CHECK((splitting(pz, -4) == Splitting::Split) == (p % 4 == 1));
        else
            CHECK(splitting(pz, -4) == Splitting::Ramified);
    }
}
