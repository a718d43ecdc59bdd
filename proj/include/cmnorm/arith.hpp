#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cmnorm {

// Thrown when a cofactor resists the rho iteration budget. The offending
// cofactor is preserved so callers can report it.
class FactorError : public std::runtime_error {
 public:
  FactorError(std::string msg, mpz_class cofactor)
      : std::runtime_error(std::move(msg)), cofactor_(std::move(cofactor)) {}
  const mpz_class& cofactor() const { return cofactor_; }

 private:
  mpz_class cofactor_;
};

struct PrimePower {
  mpz_class prime;
  unsigned exponent = 0;

  bool operator==(const PrimePower& o) const {
    return exponent == o.exponent && prime == o.prime;
  }
};

// Signed factorization. sign == 0 is the zero marker (factors empty), which is
// deliberately distinct from the empty factorization of a unit (sign = +-1).
struct Factorization {
  int sign = 0;
  std::vector<PrimePower> factors;  // primes strictly increasing

  static Factorization zero() { return {}; }
  static Factorization unit(int sign) { return {sign, {}}; }

  bool is_zero() const { return sign == 0; }
  mpz_class recompose() const;
  unsigned exponent_of(const mpz_class& p) const;
  bool divisible_by(const mpz_class& p) const { return exponent_of(p) > 0; }
  // "0", "1", "-1", or e.g. "-2^4 * 3^3 * 5^3" (exponent 1 printed bare).
  std::string to_string() const;

  bool operator==(const Factorization& o) const = default;
};

// gmpxx has no long long constructor; fine on LP64, where long carries it.
inline mpz_class to_mpz(long long x) { return mpz_class(static_cast<long>(x)); }

// Kronecker symbol (a|n), n >= 1. Fully multiplicative in n with the standard
// conventions at n = 1, 2. Throws std::invalid_argument for n < 1.
int kronecker(const mpz_class& a, const mpz_class& n);

inline int kronecker(long a, long n) { return kronecker(mpz_class(a), mpz_class(n)); }

// Hilbert symbol (a,b)_p for an odd prime p and nonzero a, b, via the tame
// formula: with a = p^alpha u, b = p^beta v,
//   (a,b)_p = (-1)^(alpha*beta*(p-1)/2) * (u|p)^beta * (v|p)^alpha.
// p = 2 is outside this routine's remit and is rejected.
int hilbert_symbol_odd(const mpz_class& a, const mpz_class& b, const mpz_class& p);

// Deterministic Miller-Rabin below 3.317e24 (witnesses 2..41); above that,
// the fixed witnesses plus 64 pseudo-random rounds from a fixed seed.
bool is_prime(const mpz_class& n);

// Trial division by all primes <= trial_bound, then Brent-cycle Pollard rho
// on whatever cofactor remains (with perfect-power reduction). Each cofactor
// gets at most rho_budget iterations; exhaustion throws FactorError rather
// than returning a partial answer.
Factorization factor(const mpz_class& n, unsigned long trial_bound,
                     unsigned long rho_budget = 1ul << 20);

// v_p(n) for n != 0 and p prime.
unsigned long valuation(const mpz_class& n, const mpz_class& p);

// Simultaneous congruences x = r_i (mod m_i) with pairwise coprime moduli.
// Returns (residue, modulus) with 0 <= residue < modulus.
std::pair<mpz_class, mpz_class> crt_solve(
    const std::vector<std::pair<mpz_class, mpz_class>>& congruences);

// Eratosthenes. Used for trial division and for the small prime pools the
// range checks iterate over.
std::vector<unsigned long> primes_up_to(unsigned long bound);

}  // namespace cmnorm
