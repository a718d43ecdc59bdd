#pragma once

#include "cmnorm/mpfloat.hpp"
#include "cmnorm/quadform.hpp"

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

namespace cmnorm {

// Raised when rounding residuals stay above threshold through every
// precision-doubling retry.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PrecisionBudget {
  long mantissa_bits;  // >= 64
  long series_terms;   // >= 16
};

// Monic integer polynomial prod_i (x - j(tau_i)); coefficients stored from
// degree h down to the constant term, matching the cache file layout.
struct ClassPolynomial {
  Discriminant disc;
  std::vector<mpz_class> coeffs;

  std::size_t degree() const { return coeffs.size() - 1; }
  std::string to_string() const;  // e.g. "x^3 + 3491750*x^2 - ... "

  bool operator==(const ClassPolynomial&) const = default;
};

// Mantissa bits from the standard height bound pi*sqrt(|D|)*sum(1/a) plus
// generous guard bits; series length from the tail bound at the smallest
// imaginary part occurring among the reduced forms.
PrecisionBudget precision_estimate(const Discriminant& d);

// j(tau) for tau = (-b + sqrt(d))/2a via the q-expansion j = E4^3 / Delta.
// The form fixes its own discriminant; the budget fixes working precision.
Complex j_at_form(const QuadForm& form, const PrecisionBudget& budget);

// Disk-backed, write-once-per-discriminant polynomial store with an
// in-memory layer. File format hd_<|D|>.txt:
//   line 1:        "<|D|> <h>"
//   lines 2..h+2:  coefficients, degree h first, constant term last
// Files appear atomically (temp file + rename), so concurrent readers never
// see a partial write.
class HilbertCache {
 public:
  // An empty path disables the disk layer (memory only).
  explicit HilbertCache(std::filesystem::path dir);

  std::optional<ClassPolynomial> lookup(const Discriminant& d);
  void store(const ClassPolynomial& poly);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::optional<ClassPolynomial> read_file(const Discriminant& d) const;
  void write_file(const ClassPolynomial& poly) const;

  std::filesystem::path dir_;
  std::map<long long, ClassPolynomial> memory_;
  std::mutex mutex_;
};

// One synthesis pass at exactly the given budget: roots at all reduced forms,
// coefficient product, rounding with residual threshold 0.25. Throws
// PrecisionError if any residual misses. Also how stability under a doubled
// budget gets tested.
ClassPolynomial hilbert_class_poly_at(const Discriminant& d, const PrecisionBudget& budget);

// hilbert_class_poly_at from the estimated budget, doubling the mantissa on
// a residual miss (at most 5 retries), with cache read/write when a cache is
// supplied.
ClassPolynomial hilbert_class_poly(const Discriminant& d, HilbertCache* cache = nullptr);

// Exact Horner evaluation.
mpz_class eval_at_integer(const ClassPolynomial& poly, const mpz_class& t);

}  // namespace cmnorm
