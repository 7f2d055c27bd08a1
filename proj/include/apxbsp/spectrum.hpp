// Finitely supported almost-periodic spectra.
//
// A function is modelled by its symmetric Fourier series
//
//     f(x) ~ sum_k A_k exp(i lambda_k x),   lambda_0 = 0, lambda_{-k} = -lambda_k,
//
// stored sparsely by index k. Absent indices carry zero coefficients. The
// positive exponents of the present indices form the "ladder" used by every
// index-based operation (best approximations, telescoped sums, scans over
// k >= n).

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace apxbsp {

using Complex = std::complex<double>;

struct SpectrumEntry {
  int k = 0;
  double lambda = 0.0;
  Complex coeff{};
};

/// One rung of the positive exponent ladder: index k > 0 and lambda_k > 0.
struct LadderPoint {
  int k = 0;
  double lambda = 0.0;
};

using ExponentLadder = std::vector<LadderPoint>;

class Spectrum {
 public:
  Spectrum() = default;
  /// Entries are sorted by index; no validation happens here.
  Spectrum(std::vector<SpectrumEntry> entries, double p);

  const std::vector<SpectrumEntry>& entries() const { return entries_; }
  double p() const { return p_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// nullptr when the index is absent.
  const SpectrumEntry* find(int k) const;
  Complex coeff(int k) const;

  /// Positive ladder: every k > 0 such that k or -k is present, ascending.
  ExponentLadder ladder() const;
  /// lambda_k for a present index (or its mirror); throws when neither is present.
  double lambda_at(int k) const;
  /// Largest |k| present, 0 for an empty spectrum.
  int max_index() const;

  Spectrum scaled(Complex c) const;
  Spectrum with_p(double p) const;

 private:
  std::vector<SpectrumEntry> entries_;
  double p_ = 2.0;
};

/// Raised by operations that require a valid spectrum.
class InvalidSpectrum : public std::invalid_argument {
 public:
  explicit InvalidSpectrum(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Empty iff every structural invariant holds.
std::vector<std::string> validate_spectrum(const Spectrum& s);
/// Throws InvalidSpectrum with the report when validation fails.
void require_valid(const Spectrum& s);

double lp_norm(const Spectrum& s);
Complex evaluate(const Spectrum& s, double x);

/// E_{lambda_n}(f)_p: the l_p norm of the coefficients with |k| >= n.
double best_approximation(const Spectrum& s, int n);
/// |A_{-nu}|^p + |A_nu|^p.
double pair_energy(const Spectrum& s, int nu);

/// (1/T) * int_0^T f(x) exp(-i lambda x) dx by composite Simpson on `steps` panels.
Complex estimate_coefficient(const std::function<Complex(double)>& f, double lambda, double period,
                             int steps);
Complex estimate_coefficient(const Spectrum& s, double lambda, double period, int steps);

enum class SpectrumKind { arithmetic, lacunary, perturbed };

SpectrumKind parse_spectrum_kind(const std::string& name);
std::string to_string(SpectrumKind kind);

/// Exponent ladder of the given kind with `size` rungs (lambda_1 = 1 for
/// arithmetic and lacunary ladders).
ExponentLadder make_ladder(SpectrumKind kind, int size, std::uint64_t seed);

/// Seeded test spectrum: A_0 plus pairs A_{+-k} with |A_{+-k}| = lambda_k^{-decay}
/// and uniformly random phases. Deterministic for fixed arguments.
Spectrum generate_spectrum(SpectrumKind kind, int size, double decay, std::uint64_t seed,
                           double p = 2.0);

/// Spectrum supported on the given ladder (both signs) with explicit
/// coefficients for +k and -k; coefficient vectors follow the ladder order.
Spectrum spectrum_on_ladder(const ExponentLadder& ladder, std::span<const Complex> positive,
                            std::span<const Complex> negative, Complex mean, double p);

/// Deterministic 64-bit stream with a platform-independent double conversion.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi);

 private:
  std::uint64_t state_;
};

namespace detail {
/// Sum of nonnegative terms in ascending order with compensation.
double stable_sum(std::vector<double> terms);
}  // namespace detail

}  // namespace apxbsp
