#include "cmnorm/ffcurves.hpp"

#include "cmnorm/arith.hpp"
#include "cmnorm/parallel.hpp"

#include <algorithm>
#include <sstream>

namespace cmnorm {

namespace {

bool is_small_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

FiniteField::FiniteField(int p, int degree, QuadModulus mod)
    : p_(p), degree_(degree), q_(degree == 1 ? p : p * p), mod_(mod) {}

FiniteField FiniteField::prime_field(int p) {
  if (!is_small_prime(p)) throw std::invalid_argument("prime_field: p must be prime");
  if (p > 10000) throw std::invalid_argument("prime_field: field size beyond naive budget");
  return FiniteField(p, 1, {});
}

FiniteField FiniteField::quadratic(int p) {
  if (!is_small_prime(p)) throw std::invalid_argument("quadratic: p must be prime");
  if (p > 100) throw std::invalid_argument("quadratic: field size beyond naive budget");
  for (int c1 = 0; c1 < p; ++c1) {
    for (int c0 = 0; c0 < p; ++c0) {
      bool has_root = false;
      for (int r = 0; r < p && !has_root; ++r)
        if ((r * r + c1 * r + c0) % p == 0) has_root = true;
      if (!has_root) return FiniteField(p, 2, {c1, c0});
    }
  }
  throw std::logic_error("quadratic: no irreducible modulus found");
}

int FiniteField::add(int a, int b) const {
  if (degree_ == 1) return (a + b) % p_;
  int a0 = a % p_, a1 = a / p_, b0 = b % p_, b1 = b / p_;
  return (a0 + b0) % p_ + ((a1 + b1) % p_) * p_;
}

int FiniteField::sub(int a, int b) const { return add(a, neg(b)); }

int FiniteField::neg(int a) const {
  if (degree_ == 1) return (p_ - a) % p_;
  int a0 = a % p_, a1 = a / p_;
  return (p_ - a0) % p_ + ((p_ - a1) % p_) * p_;
}

int FiniteField::mul(int a, int b) const {
  if (degree_ == 1) return static_cast<int>((static_cast<long>(a) * b) % p_);
  long a0 = a % p_, a1 = a / p_, b0 = b % p_, b1 = b / p_;
  // (a0 + a1 t)(b0 + b1 t) with t^2 = -c1 t - c0
  long t2 = a1 * b1 % p_;
  long r0 = (a0 * b0 % p_ + (p_ - t2 * mod_.c0 % p_)) % p_;
  long r1 = (a0 * b1 % p_ + a1 * b0 % p_ + (p_ - t2 * mod_.c1 % p_)) % p_;
  return static_cast<int>(r0 + r1 * p_);
}

int FiniteField::pow(int a, long e) const {
  if (e < 0) throw std::invalid_argument("pow: negative exponent");
  int acc = from_int(1), base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

int FiniteField::inv(int a) const {
  if (a == 0) throw std::invalid_argument("inv: zero has no inverse");
  return pow(a, q_ - 2);
}

int FiniteField::from_int(long n) const {
  long r = n % p_;
  if (r < 0) r += p_;
  return static_cast<int>(r);
}

std::string FieldElement::to_string() const {
  if (degree == 1 || c1 == 0) return std::to_string(c0);
  std::ostringstream out;
  if (c0 != 0) out << c0 << " + ";
  if (c1 != 1) out << c1 << "*";
  out << "t";
  return out.str();
}

FieldElement decode_element(const FiniteField& f, int code) {
  FieldElement e;
  e.p = f.p();
  e.degree = f.degree();
  e.c0 = code % f.p();
  e.c1 = code / f.p();
  e.modulus = f.modulus();
  return e;
}

int curve_discriminant(const FiniteField& f, int a1, int a2, int a3, int a4, int a6) {
  auto M = [&](int x, int y) { return f.mul(x, y); };
  int b2 = f.add(M(a1, a1), f.mul(f.from_int(4), a2));
  int b4 = f.add(f.mul(f.from_int(2), a4), M(a1, a3));
  int b6 = f.add(M(a3, a3), f.mul(f.from_int(4), a6));
  int b8 = f.add(f.add(f.add(M(M(a1, a1), a6), f.mul(f.from_int(4), M(a2, a6))),
                       f.sub(M(a2, M(a3, a3)), M(M(a1, a3), a4))),
                 f.neg(M(a4, a4)));
  int d = f.sub(
      f.sub(f.neg(M(M(b2, b2), b8)), f.mul(f.from_int(8), M(b4, M(b4, b4)))),
      f.sub(f.mul(f.from_int(27), M(b6, b6)), f.mul(f.from_int(9), M(b2, M(b4, b6)))));
  return d;
}

WeierstrassCurve make_curve(const FiniteField& f, int a1, int a2, int a3, int a4, int a6) {
  for (int a : {a1, a2, a3, a4, a6})
    if (a < 0 || a >= f.size()) throw std::invalid_argument("make_curve: coefficient out of field");
  if (curve_discriminant(f, a1, a2, a3, a4, a6) == 0)
    throw SingularCurveError("make_curve: singular equation");
  return {f, a1, a2, a3, a4, a6};
}

FieldElement j_invariant(const WeierstrassCurve& e) {
  const FiniteField& f = e.field;
  auto M = [&](int x, int y) { return f.mul(x, y); };
  int b2 = f.add(M(e.a1, e.a1), f.mul(f.from_int(4), e.a2));
  int b4 = f.add(f.mul(f.from_int(2), e.a4), M(e.a1, e.a3));
  int c4 = f.sub(M(b2, b2), f.mul(f.from_int(24), b4));
  int disc = curve_discriminant(f, e.a1, e.a2, e.a3, e.a4, e.a6);
  int j = f.mul(f.mul(c4, M(c4, c4)), f.inv(disc));
  return decode_element(f, j);
}

long point_count(const WeierstrassCurve& e) {
  const FiniteField& f = e.field;
  if (f.size() > 10000) throw std::invalid_argument("point_count: field beyond naive budget");
  long count = 1;  // infinity
  for (int x = 0; x < f.size(); ++x) {
    int x2 = f.mul(x, x);
    int rhs = f.add(f.add(f.mul(x2, x), f.mul(e.a2, x2)), f.add(f.mul(e.a4, x), e.a6));
    int a1x_a3 = f.add(f.mul(e.a1, x), e.a3);
    for (int y = 0; y < f.size(); ++y) {
      int lhs = f.add(f.mul(y, y), f.mul(a1x_a3, y));
      if (lhs == rhs) ++count;
    }
  }
  return count;
}

bool is_supersingular(const WeierstrassCurve& e) {
  long n = point_count(e);
  long q = e.field.size();
  long trace = q + 1 - n;
  long t = trace % e.field.p();
  return t == 0;
}

namespace {

// Census kernel for p >= 5: short curves y^2 = x^3 + ax + b, counted with the
// quadratic character chi(u) = u^((q-1)/2) precomputed as a table. O(q) per
// curve instead of the naive O(q^2).
void census_short_curve(const FiniteField& f, const std::vector<signed char>& chi, int a, int b,
                        std::vector<unsigned char>& ss_seen,
                        std::vector<unsigned char>& ord_seen) {
  // delta = -16(4a^3 + 27b^2)
  int da = f.mul(f.from_int(4), f.mul(a, f.mul(a, a)));
  int db = f.mul(f.from_int(27), f.mul(b, b));
  if (f.add(da, db) == 0) return;  // singular

  long sum = 0;
  for (int x = 0; x < f.size(); ++x) {
    int rhs = f.add(f.mul(x, f.mul(x, x)), f.add(f.mul(a, x), b));
    sum += chi[static_cast<std::size_t>(rhs)];
  }
  long n = f.size() + 1 + sum;
  bool ss = ((f.size() + 1 - n) % f.p()) == 0;

  // j = 1728 * 4a^3 / (4a^3 + 27b^2)
  int j = f.mul(f.mul(f.from_int(1728), da), f.inv(f.add(da, db)));
  (ss ? ss_seen : ord_seen)[static_cast<std::size_t>(j)] = 1;
}

}  // namespace

SupersingularCensus ss_census(int p, int jobs) {
  if (!is_small_prime(p) || p > 50)
    throw std::invalid_argument("ss_census: p must be a prime <= 50");
  FiniteField f = FiniteField::quadratic(p);
  const int q = f.size();

  std::vector<unsigned char> ss_seen(static_cast<std::size_t>(q), 0);
  std::vector<unsigned char> ord_seen(static_cast<std::size_t>(q), 0);

  if (p <= 3) {
    // Characteristic 2 and 3 need the long form; the whole coefficient space
    // is tiny (q^5 <= 9^5) and the naive counter is fine here.
    for (int a1 = 0; a1 < q; ++a1)
      for (int a2 = 0; a2 < q; ++a2)
        for (int a3 = 0; a3 < q; ++a3)
          for (int a4 = 0; a4 < q; ++a4)
            for (int a6 = 0; a6 < q; ++a6) {
              if (curve_discriminant(f, a1, a2, a3, a4, a6) == 0) continue;
              WeierstrassCurve e{f, a1, a2, a3, a4, a6};
              bool ss = is_supersingular(e);
              int j = j_invariant(e).encode();
              (ss ? ss_seen : ord_seen)[static_cast<std::size_t>(j)] = 1;
            }
  } else {
    std::vector<signed char> chi(static_cast<std::size_t>(q), -1);
    chi[0] = 0;
    for (int z = 1; z < q; ++z) chi[static_cast<std::size_t>(f.mul(z, z))] = 1;

    if (jobs == 1) {
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) census_short_curve(f, chi, a, b, ss_seen, ord_seen);
    } else {
      // Disjoint per-worker marker arrays, OR-merged afterwards, keep the
      // parallel path free of shared writes.
      int workers = jobs <= 0 ? hardware_jobs() : jobs;
      std::vector<std::vector<unsigned char>> ss_parts, ord_parts;
      for (int w = 0; w < workers; ++w) {
        ss_parts.emplace_back(static_cast<std::size_t>(q), 0);
        ord_parts.emplace_back(static_cast<std::size_t>(q), 0);
      }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers)
      for (int a = 0; a < q; ++a) {
        int w = omp_get_thread_num();
        for (int b = 0; b < q; ++b) census_short_curve(f, chi, a, b, ss_parts[w], ord_parts[w]);
      }
#else
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) census_short_curve(f, chi, a, b, ss_parts[0], ord_parts[0]);
#endif
      for (int w = 0; w < workers; ++w)
        for (int j = 0; j < q; ++j) {
          ss_seen[static_cast<std::size_t>(j)] |= ss_parts[w][static_cast<std::size_t>(j)];
          ord_seen[static_cast<std::size_t>(j)] |= ord_parts[w][static_cast<std::size_t>(j)];
        }
    }
  }

  // A j-invariant determines supersingularity; a mixed bucket means the
  // counting kernel is broken.
  for (int j = 0; j < q; ++j)
    if (ss_seen[static_cast<std::size_t>(j)] && ord_seen[static_cast<std::size_t>(j)])
      throw std::logic_error("ss_census: j-bucket mixes supersingular and ordinary curves");

  SupersingularCensus out;
  out.p = p;
  out.modulus = f.modulus();
  for (int j = 0; j < q; ++j)
    if (ss_seen[static_cast<std::size_t>(j)]) out.js.push_back(decode_element(f, j));
  return out;
}

}  // namespace cmnorm
