#include "cmnorm/quadform.hpp"

#include <cmath>
#include <numeric>

namespace cmnorm {

namespace {

long long isqrt_ll(long long n) {
  if (n < 0) return -1;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

Discriminant make_discriminant(long long value) {
  if (value >= 0) throw std::invalid_argument("make_discriminant: value must be negative");
  long long r = ((value % 4) + 4) % 4;
  if (r != 0 && r != 1)
    throw std::invalid_argument("make_discriminant: value must be 0 or 1 mod 4");

  // Squarefree kernel of |value| by trial division; discriminants here are
  // desk-scale, so this never hurts.
  long long n = -value;
  long long squarefree = 1;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e & 1) squarefree *= p;
  }
  squarefree *= n;  // leftover prime

  long long m = -squarefree;
  long long d_K = (((m % 4) + 4) % 4 == 1) ? m : 4 * m;
  long long f = isqrt_ll(value / d_K);
  if (f * f * d_K != value)
    throw std::logic_error("make_discriminant: conductor extraction failed");
  return {value, d_K, f};
}

std::vector<QuadForm> reduced_forms(const Discriminant& d) {
  const long long D = -d.value;  // positive
  std::vector<QuadForm> forms;
  long long a_max = isqrt_ll(D / 3);
  for (long long a = 1; a <= a_max; ++a) {
    for (long long b = -a + 1; b <= a; ++b) {
      long long num = b * b + D;  // b^2 - value
      if (num % (4 * a)) continue;
      long long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      forms.push_back({a, b, c});
    }
  }
  return forms;  // loop order is already (a asc, b asc)
}

long class_number(const Discriminant& d) {
  return static_cast<long>(reduced_forms(d).size());
}

Splitting splitting(const mpz_class& p, long long d_K) {
  if (!is_prime(p)) throw std::invalid_argument("splitting: p must be prime");
  Discriminant check = make_discriminant(d_K);
  if (check.conductor != 1)
    throw std::invalid_argument("splitting: discriminant must be fundamental");
  int k = kronecker(to_mpz(d_K), p);
  if (k > 0) return Splitting::Split;
  if (k < 0) return Splitting::Inert;
  return Splitting::Ramified;
}

const char* to_string(Splitting s) {
  switch (s) {
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
  }
  return "?";
}

}  // namespace cmnorm
