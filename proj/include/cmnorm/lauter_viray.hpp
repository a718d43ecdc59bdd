#pragma once

#include "cmnorm/classpoly.hpp"

#include <vector>

namespace cmnorm {

// Exact rational with tiny terms; the valuation formula only ever produces
// thirds and integers.
struct RationalVal {
  long long num = 0;
  long long den = 1;  // > 0, gcd(|num|, den) = 1

  static RationalVal of(long long num, long long den);
  RationalVal operator+(const RationalVal& o) const;
  bool operator==(const RationalVal&) const = default;
  bool is_integer() const { return den == 1; }
};

// rho(m) counts local obstructions at 3 for representations attached to
// discriminant -3:  0 if the conic z^2 = -3x^2 - my^2 has no Q_3-point
// (Hilbert symbol (-3,-m)_3 = -1), else 2 when 3 does not divide m, else 4.
int rho(long long m);

// Number of invertible ideals of norm N in the order of discriminant -3,
// i.e. weighted points of norm N on the Eisenstein lattice. Multiplicative:
//   ell = 3       -> 1
//   ell = 1 mod 3 -> e + 1
//   ell = 2 mod 3 -> 1 if e even else 0
long long ideal_count_U(long long N);

// Parameters of the prime-power-conductor family: discriminant -3*p^(2n)
// inside the maximal order of discriminant -3.
struct PrimePowerSetting {
  long long p;  // prime, != 3
  int n;        // conductor exponent, even and >= 2 for the summation formula

  static PrimePowerSetting make(long long p, int n);
  long long conductor() const;     // p^n
  long long disc_value() const;    // -3 * p^(2n)
};

// One term of the valuation sum: v_p(F(...)) at index x, where the index set
// is { x : x^2 <= 9 p^(2n), x^2 = 9 p^(2n) mod 4 } and m = (9 p^(2n) - x^2)/4.
// Values: m = 0 gives 1/3; for p = 2 the term at m = 2^(2n+1) is 1 (through
// the epsilon_2 correction); every other index dies by integrality of
// m / p^(1+n) or by the odd-valuation parity rule; whatever survives is
// rho(m) * U(m / p^(1+n)). x outside the mod-4 congruence contributes 0;
// x^2 > 9 p^(2n) is a hard error, as are p = 3 and odd n.
RationalVal vpF_at_conductor(const PrimePowerSetting& s, long long x);

// v_p(|N(j)|) = (3/2) * sum over the index set of vpF_at_conductor. Throws
// if the sum fails to land on an integer (that would mean a transcription
// bug in the term formula, not a math surprise).
long long product_formula_valuation(const PrimePowerSetting& s);

enum class Verdict { Confirmed, Refuted };

struct ConjectureResult {
  long long p;
  int n;
  unsigned long v_actual;    // valuation of |H_{-3p^2n}(0)| at p
  unsigned long v_expected;  // 4 at p = 2, else 1
  Verdict verdict;
};

// Checks v_p(|N(j_{p^n})|) against the conjectured constant by explicit
// class polynomial computation. Any prime p (3 included) and any n >= 1: the
// direct route has none of the summation formula's hypotheses.
ConjectureResult conjecture_check(long long p, int n, HilbertCache* cache = nullptr);

struct OracleRow {
  long long p;
  int n;
  long long formula_v;   // from product_formula_valuation
  unsigned long direct_v;  // from the factored norm
  bool agree;
};

// Cross-validates the summation formula against direct computation for the
// settings where both are desk-scale.
std::vector<OracleRow> formula_vs_direct(const std::vector<PrimePowerSetting>& settings,
                                         HilbertCache* cache = nullptr);

}  // namespace cmnorm
