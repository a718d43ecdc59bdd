#pragma once

#include "cmnorm/classpoly.hpp"
#include "cmnorm/lauter_viray.hpp"

#include <functional>

namespace cmnorm {

// norm_of_j_minus_1728 on discriminant -4 (where j - 1728 itself vanishes)
// raises this instead of returning the zero marker, so callers can't confuse
// "degenerate input" with "zero product over a nontrivial orbit".
class DegenerateNormError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class NormTarget { J, JMinus1728 };

struct NormReport {
  Discriminant disc;
  NormTarget target = NormTarget::J;
  Factorization norm;  // factorization of |H_d(0)| resp. |H_d(1728)|

  bool operator==(const NormReport&) const = default;
};

// |N(j)| = |H_d(0)|, factored with trial bound max(3|d|/4, 100) (no prime
// dividing the norm exceeds 3|d|/4, so rho is never needed here).
NormReport norm_of_singular_modulus(const Discriminant& d, HilbertCache* cache = nullptr);

// |N(j - 1728)| = |H_d(1728)|, trial bound max(|d|, 100). Rejects d = -4.
NormReport norm_of_j_minus_1728(const Discriminant& d, HilbertCache* cache = nullptr);

struct SUnitReport {
  NormReport report;
  std::vector<mpz_class> s_set;     // sorted, deduplicated
  bool is_s_unit = false;           // every prime of the norm lies in S
  std::vector<mpz_class> offenders;  // primes of the norm outside S
};

// Rejects the zero marker (f = 1 over Q(sqrt(-3)) has norm 0, which is
// neither an S-unit nor a counterexample).
SUnitReport s_unit_test(const NormReport& report, const std::vector<mpz_class>& s_set);

struct Violation {
  long long where;     // discriminant value or conductor, per check
  std::string detail;
};

struct CheckReport {
  std::string name;
  long long bound = 0;
  long long cases_checked = 0;
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
};

// Every discriminant -D, 3 <= D <= D_max: primes = 1 mod 3 never divide the
// norm unless the field is Q(sqrt(-3)) itself, and then only when they divide
// the conductor. Zero norms (H_{-3} = x) are skipped.
CheckReport check_mod3_obstruction(long long D_max, HilbertCache* cache = nullptr, int jobs = 1);

// Conductors 2..f_max in Q(sqrt(-3)): 2, 3 and 5 each divide |N(j_f)|.
CheckReport check_claim_235(long long f_max, HilbertCache* cache = nullptr, int jobs = 1);

// Fundamental discriminants -D, D <= D_max: for p in {2, 3, 5}, p | norm
// implies p^2 | norm.
CheckReport check_square_divisibility(long long D_max, HilbertCache* cache = nullptr,
                                      int jobs = 1);

// The j - 1728 analogue: for -D with fundamental part != -4, no prime = 1
// mod 4 divides |N(j - 1728)|; for orders inside Q(i), 2, 3 and 7 all do.
// D = 4 itself is degenerate and skipped.
CheckReport check_j1728_obstruction(long long D_max, HilbertCache* cache = nullptr,
                                    int jobs = 1);

// Rows f = 1..f_max of the norm table for the family disc = -3 f^2; row f = 1
// is the zero marker.
std::vector<NormReport> norm_table(long long f_max, HilbertCache* cache = nullptr, int jobs = 1);

// Deuring criterion cross-check on a finished report: every prime dividing
// the norm, conductor primes excepted, must be non-split in the CM field and
// in the field of the evaluation point (Q(sqrt(-3)) for j, Q(i) for j-1728).
// Returns offending primes (empty = consistent). Zero markers are rejected
// like in s_unit_test.
std::vector<mpz_class> deuring_offenders(const NormReport& report);

struct WitnessResult {
  std::vector<mpz_class> s_set;
  mpz_class q;                                   // witness prime
  std::vector<std::pair<mpz_class, int>> symbols;  // (p, kronecker(-q, p)) for p in S
  NormReport norm;                               // norm report for disc -q
  bool norm_coprime_to_s = false;
};

// Smallest prime q with q = -1 mod 8 and q = -1 mod p for every odd p in S.
// Then -q = 1 mod 8 is a valid fundamental discriminant, kronecker(-q, p) = +1
// for all p in S (every p in S splits), yet the norm of the orbit is coprime
// to S. The progress callback (if any) hears about the scan now and then.
WitnessResult find_witness(const std::vector<mpz_class>& s_set, HilbertCache* cache = nullptr,
                           const std::function<void(const mpz_class&)>& progress = {});

// All valid discriminant values -D for 3 <= D <= D_max (D = 0 or 3 mod 4).
std::vector<long long> discriminant_range(long long D_max);

}  // namespace cmnorm
