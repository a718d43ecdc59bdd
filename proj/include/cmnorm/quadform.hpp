#pragma once

#include "cmnorm/arith.hpp"

#include <vector>

namespace cmnorm {

// A negative discriminant value = f^2 * fundamental, with fundamental the
// discriminant of the maximal order and f >= 1 the conductor.
struct Discriminant {
  long long value;
  long long fundamental;
  long long conductor;

  bool operator==(const Discriminant&) const = default;
};

// Validates value < 0 and value = 0 or 1 (mod 4), then splits off the
// conductor. Throws std::invalid_argument otherwise.
Discriminant make_discriminant(long long value);

// Primitive positive definite integral form a x^2 + b xy + c y^2.
struct QuadForm {
  long long a, b, c;

  long long discriminant() const { return b * b - 4 * a * c; }
  bool operator==(const QuadForm&) const = default;
};

// All reduced primitive forms of the given discriminant: |b| <= a <= c,
// gcd(a,b,c) = 1, and b >= 0 whenever |b| = a or a = c. Sorted by (a, b).
std::vector<QuadForm> reduced_forms(const Discriminant& d);

// h(d) = number of reduced primitive forms.
long class_number(const Discriminant& d);

enum class Splitting { Split, Inert, Ramified };

// Behaviour of the rational prime p in the maximal order of discriminant d_K.
// d_K must be fundamental (conductor 1); p must be prime.
Splitting splitting(const mpz_class& p, long long d_K);

const char* to_string(Splitting s);

}  // namespace cmnorm
