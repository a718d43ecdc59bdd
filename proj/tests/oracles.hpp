#pragma once

// Independent slow-path implementations used only to validate the library.
// Everything here favours obviousness over speed.

#include "cmnorm/quadform.hpp"

#include <gmpxx.h>

#include <vector>

namespace oracles {

// Legendre symbol for odd prime p by scanning squares mod p.
int legendre_bruteforce(long a, long p);

// Whether z^2 = a x^2 + b y^2 has a nontrivial Q_p-point (odd p), decided by
// searching primitive solutions mod p^5. Square factors of p are stripped
// first (z^2 = a x^2 + b y^2 and z^2 = (a/p^2)(px)^2 + b y^2 are the same
// conic); afterwards one of x, y can be scaled to a unit, so the search runs
// over a single coordinate against a table of squares mod p^5.
bool conic_solvable(long a, long b, long p);

// #{(u, v) in Z^2 : u^2 + uv + v^2 = N} / 6, the invertible-ideal count of
// norm N in the Eisenstein order, counted straight off the lattice.
long long lattice_ideal_count(long long N);

// Trial division primality for small n.
bool naive_is_prime(unsigned long n);

// Gauss reduction of an arbitrary positive definite form (not necessarily
// reduced) to the canonical reduced representative of its class.
cmnorm::QuadForm reduce_form(long long a, long long b, long long c);

// Image of a form under a deterministic pseudo-random word in the modular
// group generators (seeded externally for reproducibility).
cmnorm::QuadForm random_equivalent_form(const cmnorm::QuadForm& f, unsigned seed);

// h(-3 f^2) for f > 1 from the conductor class-number formula
// h = (f / 3) * prod_{p | f} (1 - (-3|p)/p), evaluated in exact arithmetic.
long long eisenstein_class_number(long long f);

}  // namespace oracles
