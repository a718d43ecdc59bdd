#include "cmnorm/analysis.hpp"

#include "cmnorm/parallel.hpp"

#include <algorithm>
#include <sstream>

namespace cmnorm {

namespace {

Factorization factored_eval(const Discriminant& d, const mpz_class& at,
                            unsigned long trial_bound, HilbertCache* cache) {
  ClassPolynomial poly = hilbert_class_poly(d, cache);
  mpz_class value = abs(eval_at_integer(poly, at));
  return factor(value, trial_bound);
}

std::vector<mpz_class> normalize_s_set(const std::vector<mpz_class>& s_set) {
  std::vector<mpz_class> s = s_set;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (const auto& p : s)
    if (!is_prime(p)) throw std::invalid_argument("S must consist of primes (got " + p.get_str() + ")");
  return s;
}

}  // namespace

NormReport norm_of_singular_modulus(const Discriminant& d, HilbertCache* cache) {
  unsigned long bound = std::max<long long>(3 * (-d.value) / 4, 100);
  return {d, NormTarget::J, factored_eval(d, 0, bound, cache)};
}

NormReport norm_of_j_minus_1728(const Discriminant& d, HilbertCache* cache) {
  if (d.value == -4)
    throw DegenerateNormError("norm_of_j_minus_1728: j = 1728 itself at discriminant -4");
  unsigned long bound = std::max<long long>(-d.value, 100);
  return {d, NormTarget::JMinus1728, factored_eval(d, 1728, bound, cache)};
}

SUnitReport s_unit_test(const NormReport& report, const std::vector<mpz_class>& s_set) {
  if (report.norm.is_zero())
    throw std::invalid_argument("s_unit_test: zero norm has no S-unit reading");
  SUnitReport out;
  out.report = report;
  out.s_set = normalize_s_set(s_set);
  for (const auto& [p, e] : report.norm.factors)
    if (!std::binary_search(out.s_set.begin(), out.s_set.end(), p)) out.offenders.push_back(p);
  out.is_s_unit = out.offenders.empty();
  return out;
}

std::vector<long long> discriminant_range(long long D_max) {
  std::vector<long long> out;
  for (long long D = 3; D <= D_max; ++D) {
    long long r = D % 4;
    if (r == 0 || r == 3) out.push_back(-D);
  }
  return out;
}

namespace {

// Shared frame of every range check: one slot per input, filled possibly in
// parallel, violations merged in input order so reports are deterministic.
template <typename Input, typename Fn>
CheckReport run_check(std::string name, long long bound, const std::vector<Input>& inputs,
                      int jobs, Fn&& probe) {
  std::vector<std::vector<Violation>> slots(inputs.size());
  for_range(static_cast<long long>(inputs.size()), jobs,
            [&](long long i) { probe(inputs[static_cast<std::size_t>(i)], slots[static_cast<std::size_t>(i)]); });
  CheckReport report;
  report.name = std::move(name);
  report.bound = bound;
  report.cases_checked = static_cast<long long>(inputs.size());
  for (auto& s : slots)
    report.violations.insert(report.violations.end(), s.begin(), s.end());
  return report;
}

}  // namespace

CheckReport check_mod3_obstruction(long long D_max, HilbertCache* cache, int jobs) {
  auto discs = discriminant_range(D_max);
  return run_check("mod3", D_max, discs, jobs, [&](long long value, std::vector<Violation>& out) {
    Discriminant d = make_discriminant(value);
    NormReport r = norm_of_singular_modulus(d, cache);
    if (r.norm.is_zero()) return;  // H_{-3} = x
    for (const auto& [p, e] : r.norm.factors) {
      if (mpz_fdiv_ui(p.get_mpz_t(), 3) != 1) continue;
      if (d.fundamental != -3) {
        out.push_back({value, "prime " + p.get_str() + " = 1 mod 3 divides the norm"});
      } else if (!mpz_divisible_p(to_mpz(d.conductor).get_mpz_t(), p.get_mpz_t())) {
        out.push_back({value, "prime " + p.get_str() +
                                  " = 1 mod 3 divides the norm but not the conductor " +
                                  std::to_string(d.conductor)});
      }
    }
  });
}

CheckReport check_claim_235(long long f_max, HilbertCache* cache, int jobs) {
  std::vector<long long> conductors;
  for (long long f = 2; f <= f_max; ++f) conductors.push_back(f);
  return run_check("claim235", f_max, conductors, jobs,
                   [&](long long f, std::vector<Violation>& out) {
                     Discriminant d = make_discriminant(-3 * f * f);
                     NormReport r = norm_of_singular_modulus(d, cache);
                     for (long long p : {2ll, 3ll, 5ll})
                       if (!r.norm.divisible_by(to_mpz(p)))
                         out.push_back({f, "prime " + std::to_string(p) +
                                               " does not divide |N(j_" + std::to_string(f) + ")|"});
                   });
}

CheckReport check_square_divisibility(long long D_max, HilbertCache* cache, int jobs) {
  std::vector<long long> discs;
  for (long long value : discriminant_range(D_max))
    if (make_discriminant(value).conductor == 1) discs.push_back(value);
  return run_check("squares", D_max, discs, jobs, [&](long long value, std::vector<Violation>& out) {
    Discriminant d = make_discriminant(value);
    NormReport r = norm_of_singular_modulus(d, cache);
    if (r.norm.is_zero()) return;
    for (long long p : {2ll, 3ll, 5ll}) {
      unsigned e = r.norm.exponent_of(to_mpz(p));
      if (e == 1)
        out.push_back({value, "prime " + std::to_string(p) + " divides the norm exactly once"});
    }
  });
}

CheckReport check_j1728_obstruction(long long D_max, HilbertCache* cache, int jobs) {
  std::vector<long long> discs;
  for (long long value : discriminant_range(D_max))
    if (value != -4) discs.push_back(value);
  return run_check("j1728", D_max, discs, jobs, [&](long long value, std::vector<Violation>& out) {
    Discriminant d = make_discriminant(value);
    NormReport r = norm_of_j_minus_1728(d, cache);
    if (d.fundamental == -4) {
      for (long long p : {2ll, 3ll, 7ll})
        if (!r.norm.divisible_by(to_mpz(p)))
          out.push_back({value, "prime " + std::to_string(p) +
                                    " does not divide |N(j - 1728)| over Q(i)"});
    } else {
      for (const auto& [p, e] : r.norm.factors)
        if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 1)
          out.push_back({value, "prime " + p.get_str() + " = 1 mod 4 divides |N(j - 1728)|"});
    }
  });
}

std::vector<NormReport> norm_table(long long f_max, HilbertCache* cache, int jobs) {
  if (f_max < 1) throw std::invalid_argument("norm_table: f_max must be >= 1");
  std::vector<NormReport> rows(static_cast<std::size_t>(f_max));
  for_range(f_max, jobs, [&](long long i) {
    long long f = i + 1;
    Discriminant d = make_discriminant(-3 * f * f);
    rows[static_cast<std::size_t>(i)] = norm_of_singular_modulus(d, cache);
  });
  return rows;
}

std::vector<mpz_class> deuring_offenders(const NormReport& report) {
  if (report.norm.is_zero())
    throw std::invalid_argument("deuring_offenders: zero norm");
  std::vector<mpz_class> bad;
  for (const auto& [p, e] : report.norm.factors) {
    // Conductor primes are exempt: at p | f the reduction need not be
    // supersingular, and such primes really do show up (7 divides the f = 21
    // norm while splitting in Q(sqrt(-3))).
    if (to_mpz(report.disc.conductor) % p == 0) continue;
    bool split;
    if (report.target == NormTarget::J) {
      // p | |N(j)| forces a reduction with j = 0, supersingular only when p
      // is non-split both in the CM field and in Q(sqrt(-3)).
      split = splitting(p, report.disc.fundamental) == Splitting::Split ||
              splitting(p, -3) == Splitting::Split;
    } else {
      // j = 1728 is the disc -4 CM value; only splitting in Q(i) obstructs.
      split = splitting(p, -4) == Splitting::Split;
    }
    if (split) bad.push_back(p);
  }
  return bad;
}

WitnessResult find_witness(const std::vector<mpz_class>& s_set, HilbertCache* cache,
                           const std::function<void(const mpz_class&)>& progress) {
  WitnessResult out;
  out.s_set = normalize_s_set(s_set);
  if (out.s_set.empty()) throw std::invalid_argument("find_witness: S must be nonempty");

  // q = -1 mod 8 and mod every odd p in S. Such q makes -q a fundamental
  // discriminant = 1 mod 8 in which every element of S splits.
  mpz_class M = 8;
  for (const auto& p : out.s_set)
    if (p != 2) M *= p;

  mpz_class q = 0;
  for (mpz_class k = 1;; ++k) {
    mpz_class candidate = k * M - 1;
    if (progress && mpz_fdiv_ui(k.get_mpz_t(), 1024) == 0) progress(candidate);
    if (is_prime(candidate)) {
      q = candidate;
      break;
    }
  }

  out.q = q;
  for (const auto& p : out.s_set) {
    int sym = kronecker(-q, p);
    out.symbols.emplace_back(p, sym);
    if (sym != 1)
      throw std::logic_error("find_witness: kronecker(-q, " + p.get_str() + ") != +1 at q = " +
                             q.get_str());
  }

  if (q > 2000000)
    throw std::invalid_argument("find_witness: witness prime " + q.get_str() +
                                " is beyond desk scale for class polynomial synthesis");
  out.norm = norm_of_singular_modulus(make_discriminant(-q.get_si()), cache);
  out.norm_coprime_to_s = true;
  for (const auto& [p, e] : out.norm.norm.factors)
    if (std::binary_search(out.s_set.begin(), out.s_set.end(), p)) out.norm_coprime_to_s = false;
  return out;
}

}  // namespace cmnorm
