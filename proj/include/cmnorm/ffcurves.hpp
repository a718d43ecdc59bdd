#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cmnorm {

class SingularCurveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// x^2 + c1*x + c0 over F_p, the modulus used to present F_{p^2}.
struct QuadModulus {
  int c1 = 0, c0 = 0;
  bool operator==(const QuadModulus&) const = default;
};

// F_p (degree 1) or F_{p^2} (degree 2, lex-smallest irreducible modulus so a
// field is reproducible from p alone). Elements are encoded 0..q-1 as
// a0 + a1*p against the basis {1, t}.
class FiniteField {
 public:
  static FiniteField prime_field(int p);
  static FiniteField quadratic(int p);

  int p() const { return p_; }
  int degree() const { return degree_; }
  int size() const { return q_; }
  QuadModulus modulus() const { return mod_; }

  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;
  int mul(int a, int b) const;
  int pow(int a, long e) const;
  int inv(int a) const;  // a != 0
  int from_int(long n) const;  // image of an integer scalar
  bool in_prime_field(int a) const { return a < p_; }

  bool operator==(const FiniteField&) const = default;

 private:
  FiniteField(int p, int degree, QuadModulus mod);

  int p_, degree_, q_;
  QuadModulus mod_;
};

// A field element carried with enough context to print and compare across
// calls: coordinates against {1, t} and the modulus that defines t.
struct FieldElement {
  int p = 0;
  int degree = 1;
  int c0 = 0, c1 = 0;
  QuadModulus modulus;

  int encode() const { return c0 + c1 * p; }
  std::string to_string() const;  // "6", or "3 + 2*t" in F_{p^2}
  bool operator==(const FieldElement&) const = default;
};

FieldElement decode_element(const FiniteField& f, int code);

// Long Weierstrass curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with
// encoded coefficients. Construction rejects singular equations.
struct WeierstrassCurve {
  FiniteField field;
  int a1, a2, a3, a4, a6;
};

WeierstrassCurve make_curve(const FiniteField& f, int a1, int a2, int a3, int a4, int a6);

// Discriminant and j-invariant via the standard b2/b4/b6/b8/c4 covariants
// (integer formulas, valid in every characteristic).
int curve_discriminant(const FiniteField& f, int a1, int a2, int a3, int a4, int a6);
FieldElement j_invariant(const WeierstrassCurve& e);

// #E(F_q) by enumerating all (x, y) against the full equation, plus the point
// at infinity. Guarded by a naive-enumeration budget of q <= 10^4.
long point_count(const WeierstrassCurve& e);

// p | trace of Frobenius, i.e. #E = 1 mod p.
bool is_supersingular(const WeierstrassCurve& e);

struct SupersingularCensus {
  int p;
  QuadModulus modulus;                // presentation of F_{p^2}
  std::vector<FieldElement> js;      // sorted by encoding
};

// All supersingular j-invariants over F_{p^2}, p <= 50. Full long-Weierstrass
// enumeration for p in {2, 3}; short forms y^2 = x^3 + ax + b for p >= 5.
// Every run self-checks that each j-bucket is uniformly supersingular or
// uniformly ordinary. jobs == 1 is the serial reference path.
SupersingularCensus ss_census(int p, int jobs = 1);

}  // namespace cmnorm
