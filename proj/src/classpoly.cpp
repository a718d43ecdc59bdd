#include "cmnorm/classpoly.hpp"

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cmnorm {

std::string ClassPolynomial::to_string() const {
  std::ostringstream out;
  std::size_t h = degree();
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const mpz_class& c = coeffs[i];
    if (c == 0) continue;
    std::size_t e = h - i;
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    bool unit_coeff = (a == 1) && e > 0;
    if (!unit_coeff) out << a.get_str();
    if (e > 0) {
      if (!unit_coeff) out << "*";
      out << "x";
      if (e > 1) out << "^" << e;
    }
  }
  if (first) out << "0";
  return out.str();
}

namespace {

long series_terms_for(long long D, long long a_max, long mantissa_bits) {
  // Tail of the q-expansions is dominated by |q|^N = exp(-N * pi*sqrt(D)/a).
  // Demand N*theta >= (bits+16)*ln2 + 3*ln(N+2) + 16 at the slowest decay.
  double theta = M_PI * std::sqrt(static_cast<double>(D)) / static_cast<double>(a_max);
  double target = (static_cast<double>(mantissa_bits) + 16.0) * std::log(2.0) + 16.0;
  long n = 16;
  while (n * theta < target + 3.0 * std::log(static_cast<double>(n) + 2.0)) ++n;
  return std::max(n, 16l);
}

}  // namespace

PrecisionBudget precision_estimate(const Discriminant& d) {
  auto forms = reduced_forms(d);
  const long long D = -d.value;
  double sum_inv_a = 0.0;
  long long a_max = 1;
  for (const auto& f : forms) {
    sum_inv_a += 1.0 / static_cast<double>(f.a);
    a_max = std::max(a_max, f.a);
  }
  double height = M_PI * std::sqrt(static_cast<double>(D)) * sum_inv_a;
  long bits = static_cast<long>(height / std::log(2.0)) + 32 * static_cast<long>(forms.size()) + 256;
  bits = std::max(bits, 64l);
  return {bits, series_terms_for(D, a_max, bits)};
}

Complex j_at_form(const QuadForm& form, const PrecisionBudget& budget) {
  const long long D = -form.discriminant();
  if (D <= 0) throw std::invalid_argument("j_at_form: form must be positive definite");
  const mpfr_prec_t prec = budget.mantissa_bits;
  const long N = budget.series_terms;

  // q = exp(2*pi*i*tau), tau = (-b + i*sqrt(D)) / 2a:
  //   |q| = exp(-pi*sqrt(D)/a),  arg q = -pi*b/a.
  Real pi_over_a = Real::pi(prec);
  pi_over_a.div_ui(static_cast<unsigned long>(form.a));
  Real decay = pi_over_a * Real::sqrt_ui(static_cast<unsigned long>(D), prec);
  Real angle = pi_over_a;
  angle.mul_si(-form.b);
  Real radius = exp(-decay);
  Complex q(radius * cos(angle), radius * sin(angle));

  // sigma_3 up to N; 240*sigma_3(n) stays well inside 64 bits for any
  // desk-scale budget.
  std::vector<unsigned long long> sigma3(static_cast<std::size_t>(N) + 1, 0);
  for (long dd = 1; dd <= N; ++dd) {
    unsigned long long cube =
        static_cast<unsigned long long>(dd) * static_cast<unsigned long long>(dd) *
        static_cast<unsigned long long>(dd);
    for (long m = dd; m <= N; m += dd) sigma3[static_cast<std::size_t>(m)] += cube;
  }

  Complex e4 = Complex::from_si(1, prec);
  Complex eta_prod = Complex::from_si(1, prec);  // prod (1 - q^n)
  Complex qn = q;
  const Complex one = Complex::from_si(1, prec);
  for (long n = 1; n <= N; ++n) {
    Complex term = qn;
    term.mul_ui(240ull * sigma3[static_cast<std::size_t>(n)]);
    e4 += term;
    eta_prod *= one - qn;
    if (n < N) qn *= q;
  }

  Complex delta = q * eta_prod.pow_ui(24);
  return e4.pow_ui(3) / delta;
}

namespace {

std::vector<Complex> expand_product(const std::vector<Complex>& roots, mpfr_prec_t prec) {
  // Ascending coefficients of prod (x - r); leading 1 at the end.
  std::vector<Complex> coeff;
  coeff.reserve(roots.size() + 1);
  coeff.push_back(Complex::from_si(1, prec));
  for (const Complex& r : roots) {
    coeff.push_back(Complex::from_si(1, prec));
    for (std::size_t k = coeff.size() - 1; k-- > 0;) {
      Complex t = coeff[k] * r;
      if (k > 0)
        coeff[k] = coeff[k - 1] - t;
      else
        coeff[k] = Complex(prec) - t;
    }
  }
  return coeff;
}

std::optional<ClassPolynomial> round_coefficients(const Discriminant& d,
                                                  const std::vector<Complex>& asc) {
  ClassPolynomial poly;
  poly.disc = d;
  poly.coeffs.resize(asc.size());
  for (std::size_t k = 0; k < asc.size(); ++k) {
    mpz_class z = asc[k].re.round_to_integer();
    double residual = std::max(asc[k].re.distance_from(z), asc[k].im.abs_double());
    if (!(residual <= 0.25)) return std::nullopt;
    poly.coeffs[asc.size() - 1 - k] = z;  // flip ascending -> descending
  }
  return poly;
}

}  // namespace

ClassPolynomial hilbert_class_poly_at(const Discriminant& d, const PrecisionBudget& budget) {
  auto forms = reduced_forms(d);
  std::vector<Complex> roots;
  roots.reserve(forms.size());
  for (const auto& f : forms) roots.push_back(j_at_form(f, budget));
  auto asc = expand_product(roots, budget.mantissa_bits);
  auto poly = round_coefficients(d, asc);
  if (!poly)
    throw PrecisionError("hilbert_class_poly_at: rounding residual above 0.25 (D = " +
                         std::to_string(d.value) + ")");
  if (poly->coeffs.front() != 1)
    throw PrecisionError("hilbert_class_poly_at: rounded polynomial is not monic");
  return *poly;
}

ClassPolynomial hilbert_class_poly(const Discriminant& d, HilbertCache* cache) {
  if (cache) {
    if (auto hit = cache->lookup(d)) return *hit;
  }

  PrecisionBudget budget = precision_estimate(d);
  long long a_max = 1;
  for (const auto& f : reduced_forms(d)) a_max = std::max(a_max, f.a);

  for (int attempt = 0; attempt <= 5; ++attempt) {
    try {
      ClassPolynomial poly = hilbert_class_poly_at(d, budget);
      if (cache) cache->store(poly);
      return poly;
    } catch (const PrecisionError&) {
      if (attempt == 5) break;
      budget.mantissa_bits *= 2;
      budget.series_terms = series_terms_for(-d.value, a_max, budget.mantissa_bits);
    }
  }
  throw PrecisionError("hilbert_class_poly: residuals above 0.25 after 5 precision doublings (D = " +
                       std::to_string(d.value) + ")");
}

mpz_class eval_at_integer(const ClassPolynomial& poly, const mpz_class& t) {
  mpz_class acc = 0;
  for (const mpz_class& c : poly.coeffs) acc = acc * t + c;
  return acc;
}

HilbertCache::HilbertCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::optional<ClassPolynomial> HilbertCache::lookup(const Discriminant& d) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memory_.find(d.value);
    if (it != memory_.end()) return it->second;
  }
  if (dir_.empty()) return std::nullopt;
  auto poly = read_file(d);
  if (poly) {
    std::lock_guard<std::mutex> lock(mutex_);
    memory_.emplace(d.value, *poly);
  }
  return poly;
}

void HilbertCache::store(const ClassPolynomial& poly) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    memory_.emplace(poly.disc.value, poly);
  }
  if (!dir_.empty()) write_file(poly);
}

std::filesystem::path cache_file_path(const std::filesystem::path& dir, long long disc_value) {
  return dir / ("hd_" + std::to_string(-disc_value) + ".txt");
}

std::optional<ClassPolynomial> HilbertCache::read_file(const Discriminant& d) const {
  auto path = cache_file_path(dir_, d.value);
  std::ifstream in(path);
  if (!in) return std::nullopt;

  long long abs_d = 0;
  long h = -1;
  if (!(in >> abs_d >> h) || abs_d != -d.value || h < 1)
    throw std::runtime_error("cache file corrupt (bad header): " + path.string());
  if (h != class_number(d))
    throw std::runtime_error("cache file corrupt (degree mismatch): " + path.string());

  ClassPolynomial poly;
  poly.disc = d;
  poly.coeffs.resize(static_cast<std::size_t>(h) + 1);
  for (auto& c : poly.coeffs) {
    std::string tok;
    if (!(in >> tok)) throw std::runtime_error("cache file corrupt (truncated): " + path.string());
    if (mpz_set_str(c.get_mpz_t(), tok.c_str(), 10) != 0)
      throw std::runtime_error("cache file corrupt (bad coefficient): " + path.string());
  }
  if (poly.coeffs.front() != 1)
    throw std::runtime_error("cache file corrupt (not monic): " + path.string());
  return poly;
}

void HilbertCache::write_file(const ClassPolynomial& poly) const {
  auto path = cache_file_path(dir_, poly.disc.value);
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) return;  // write-once

  static std::atomic<unsigned> tmp_seq{0};
  auto tmp = path;
  tmp += "." + std::to_string(static_cast<long>(getpid())) + "." +
         std::to_string(tmp_seq.fetch_add(1)) + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
    out << (-poly.disc.value) << " " << poly.degree() << "\n";
    for (const auto& c : poly.coeffs) out << c.get_str() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cmnorm
