#include "cmnorm/arith.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace cmnorm;

TEST_CASE("kronecker symbol fixed values") {
    CHECK(kronecker(-23, 2) == 1);  // -23 = 1 mod 8
    CHECK(kronecker(5, 1) == 1);
    CHECK(kronecker(-3, 7) == 1);
    CHECK(kronecker(-3, 5) == -1);
    CHECK(kronecker(0, 3) == 0);
    CHECK(kronecker(12, 3) == 0);
    CHECK_THROWS_AS(kronecker(mpz_class(5), mpz_class(0)), std::invalid_argument);
    CHECK_THROWS_AS(kronecker(mpz_class(5), mpz_class(-3)), std::invalid_argument);
}

TEST_CASE("kronecker equals the Legendre symbol at odd primes") {
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L})
        for (long a = -30; a <= 30; ++a)
            CHECK(kronecker(a, p) == oracles::legendre_bruteforce(a, p));
}

TEST_CASE("kronecker is multiplicative in the denominator") {
    for (long a = -50; a <= 50; ++a)
        for (long m = 1; m <= 50; ++m)
            for (long n = 1; n <= 50; ++n)
                CHECK(kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n));
}

TEST_CASE("kronecker agrees with the gmp implementation") {
    for (long a = -200; a <= 200; ++a)
        for (long n = 1; n <= 200; ++n) {
            mpz_class az(a), nz(n);
            CHECK(kronecker(az, nz) == mpz_kronecker(az.get_mpz_t(), nz.get_mpz_t()));
        }
}

TEST_CASE("hilbert symbol fixed values at p = 3") {
    CHECK(hilbert_symbol_odd(1, -5, 3) == 1);  // a is a square
    CHECK(hilbert_symbol_odd(-3, -1, 3) == -1);
    CHECK(hilbert_symbol_odd(-3, -2, 3) == 1);
    CHECK(hilbert_symbol_odd(-3, -6, 3) == 1);
    CHECK_THROWS_AS(hilbert_symbol_odd(3, 5, 2), std::invalid_argument);
    CHECK_THROWS_AS(hilbert_symbol_odd(0, 5, 3), std::invalid_argument);
    CHECK_THROWS_AS(hilbert_symbol_odd(5, 0, 3), std::invalid_argument);
}

TEST_CASE("hilbert symbol matches conic solvability") {
    // +1 iff z^2 = a x^2 + b y^2 has a Q_p-point; the oracle searches mod p^5.
    for (long p : {3L, 5L, 7L})
        for (long a = -12; a <= 12; ++a) {
            if (a == 0) continue;
            for (long b = -12; b <= 12; ++b) {
                if (b == 0) continue;
                bool solvable = oracles::conic_solvable(a, b, p);
                CHECK(hilbert_symbol_odd(a, b, p) == (solvable ? 1 : -1));
            }
        }
}

TEST_CASE("primality fixed values") {
    CHECK(is_prime(23));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(119));  // 7 * 17
    CHECK(is_prime(2));
    CHECK(is_prime(239));
    CHECK_FALSE(is_prime(-7));
}

TEST_CASE("primality agrees with trial division below 3000") {
    for (unsigned long n = 0; n < 3000; ++n)
        CHECK(is_prime(to_mpz(static_cast<long long>(n))) == oracles::naive_is_prime(n));
}

TEST_CASE("primality agrees with the gmp test on random 64-bit inputs") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        mpz_class n(static_cast<unsigned long>(rng()));
        CHECK(is_prime(n) == (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0));
    }
}

TEST_CASE("primality on Mersenne-sized inputs") {
    mpz_class m89 = (mpz_class(1) << 89) - 1;   // prime
    mpz_class m67 = (mpz_class(1) << 67) - 1;   // 193707721 * 761838257287
    CHECK(is_prime(m89));
    CHECK_FALSE(is_prime(m67));
    // Past the deterministic-witness threshold: a known prime and a composite
    // whose factors are both large.
    mpz_class big = (mpz_class(1) << 127) - 1;  // Mersenne prime
    CHECK(is_prime(big));
    mpz_class p = m89;
    CHECK_FALSE(is_prime(p * (2 * p - 1)));
}

TEST_CASE("factor fixed values") {
    Factorization f = factor(54000, 100);
    CHECK(f.sign == 1);
    CHECK(f.to_string() == "2^4 * 3^3 * 5^3");
    CHECK(f.recompose() == 54000);

    CHECK(factor(0, 100).is_zero());
    CHECK(factor(0, 100).to_string() == "0");
    CHECK(factor(884736, 100).to_string() == "2^15 * 3^3");
    CHECK(factor(1, 100).to_string() == "1");
    CHECK(factor(-1, 100).to_string() == "-1");
    CHECK(factor(-54000, 100).to_string() == "-2^4 * 3^3 * 5^3");
    CHECK(factor(42, 100).to_string() == "2 * 3 * 7");  // exponent 1 prints bare
    CHECK(factor(-42, 100).recompose() == -42);
}

TEST_CASE("factorization accessors") {
    Factorization f = factor(54000, 100);
    CHECK(f.exponent_of(2) == 4);
    CHECK(f.exponent_of(7) == 0);
    CHECK(f.divisible_by(5));
    CHECK_FALSE(f.divisible_by(11));
    CHECK(Factorization::unit(1).recompose() == 1);
    CHECK(Factorization::unit(-1).recompose() == -1);
    CHECK(Factorization::zero().recompose() == 0);
}

TEST_CASE("factor recomposes products of bounded primes") {
    // Random targets assembled from primes below 2^16 so that trial division
    // plus rho always terminates; sizes run up to ~2^128.
    std::mt19937_64 rng(42);
    auto pool = primes_up_to(65536);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> nfac(1, 9);
    std::uniform_int_distribution<int> expo(1, 3);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int i = 0; i < 400; ++i) {
        mpz_class n = sign(rng) ? 1 : -1;
        int k = nfac(rng);
        for (int j = 0; j < k; ++j) {
            mpz_class p(static_cast<unsigned long>(pool[pick(rng)]));
            int e = expo(rng);
            for (int t = 0; t < e; ++t) n *= p;
        }
        unsigned long bound = (i % 2 == 0) ? 65536 : 300;  // odd rounds exercise rho
        Factorization f = factor(n, bound);
        CHECK(f.recompose() == n);
        for (size_t j = 1; j < f.factors.size(); ++j)
            CHECK(f.factors[j - 1].prime < f.factors[j].prime);
        for (const auto& [p, e] : f.factors) CHECK(is_prime(p));
    }
}

TEST_CASE("factor splits a semiprime of two 31-bit primes") {
    mpz_class p, q;
    mpz_nextprime(p.get_mpz_t(), mpz_class(1500000001).get_mpz_t());
    mpz_nextprime(q.get_mpz_t(), mpz_class(1600000001).get_mpz_t());
    Factorization f = factor(p * q, 1000);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].prime == p);
    CHECK(f.factors[1].prime == q);
}

TEST_CASE("factor reports an uncrackable cofactor instead of lying") {
    mpz_class p, q;
    mpz_nextprime(p.get_mpz_t(), mpz_class(1000000007).get_mpz_t());
    mpz_nextprime(q.get_mpz_t(), mpz_class(1100000009).get_mpz_t());
    mpz_class n = p * q;
    try {
        factor(n, 100, 50);  // 50 rho iterations cannot split a 60-bit semiprime
        FAIL("expected FactorError");
    } catch (const FactorError& e) {
        CHECK(e.cofactor() == n);
    }
}

TEST_CASE("valuation fixed values and additivity") {
    CHECK(valuation(54000, 2) == 4);
    CHECK(valuation(7, 2) == 0);
    CHECK(valuation(884736, 3) == 3);
    CHECK(valuation(-54000, 5) == 3);
    CHECK_THROWS_AS(valuation(0, 2), std::invalid_argument);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> draw(1, 1000000);
    for (int i = 0; i < 500; ++i) {
        mpz_class m(draw(rng)), n(draw(rng));
        for (long p : {2L, 3L, 5L, 7L}) {
            mpz_class pz(p);
            CHECK(valuation(m * n, pz) == valuation(m, pz) + valuation(n, pz));
        }
    }
}

TEST_CASE("crt fixed values") {
    auto [r1, m1] = crt_solve({{-1, 3}, {-1, 8}});
    CHECK(r1 == 23);
    CHECK(m1 == 24);
    auto [r2, m2] = crt_solve({{0, 5}});
    CHECK(r2 == 0);
    CHECK(m2 == 5);
    auto [r3, m3] = crt_solve({{-1, 3}, {-1, 5}, {-1, 8}});
    CHECK(r3 == 119);
    CHECK(m3 == 120);
    CHECK_THROWS_AS(crt_solve({{1, 4}, {0, 6}}), std::invalid_argument);
}

TEST_CASE("crt solves random coprime systems") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> draw(2, 200);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::pair<mpz_class, mpz_class>> sys;
        mpz_class prod = 1;
        while (sys.size() < 3) {
            mpz_class m(draw(rng));
            if (gcd(prod, m) != 1) continue;
            std::uniform_int_distribution<long> res(0, m.get_si() - 1);
            sys.push_back({mpz_class(res(rng)), m});
            prod *= m;
        }
        auto [r, m] = crt_solve(sys);
        CHECK(m == prod);
        CHECK(r >= 0);
        CHECK(r < m);
        for (const auto& [ri, mi] : sys) CHECK((r - ri) % mi == 0);
    }
}

TEST_CASE("primes_up_to") {
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(50) ==
          std::vector<unsigned long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47});
    CHECK(primes_up_to(100000).size() == 9592);
}
