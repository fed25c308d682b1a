#pragma once

// Aperiodic correlations, complementary-set checks and the OFDM envelope.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "ermcode/errors.hpp"
#include "ermcode/gbf.hpp"

namespace ermcode {

using ComplexSequence = std::vector<Complex>;

inline constexpr double kDefaultComplementaryTolerance = 1e-9;
inline constexpr int kDefaultOversampling = 64;

/// C(A,B)(l): sum_i A_{i+l} conj(B_i) for l >= 0, sum_i A_i conj(B_{i-l}) for
/// l < 0, zero once |l| >= n.
inline Complex cross_correlation(std::span<const Complex> a, std::span<const Complex> b, std::int64_t shift) {
  if (a.size() != b.size())
    throw ParameterError("cross-correlation of sequences with lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  const auto n = static_cast<std::int64_t>(a.size());
  if (shift >= n || shift <= -n) return {0.0, 0.0};
  Complex acc{0.0, 0.0};
  if (shift >= 0) {
    for (std::int64_t i = 0; i < n - shift; ++i) acc += a[i + shift] * std::conj(b[i]);
  } else {
    for (std::int64_t i = 0; i < n + shift; ++i) acc += a[i] * std::conj(b[i - shift]);
  }
  return acc;
}

inline Complex auto_correlation(std::span<const Complex> a, std::int64_t shift) { return cross_correlation(a, a, shift); }

inline Complex cross_correlation(const PolyphaseVector& a, const PolyphaseVector& b, std::int64_t shift) {
  return cross_correlation(std::span<const Complex>(a.entries()), std::span<const Complex>(b.entries()), shift);
}

inline Complex auto_correlation(const PolyphaseVector& a, std::int64_t shift) {
  return auto_correlation(std::span<const Complex>(a.entries()), shift);
}

/// N >= 1 sequences of a common length.
class ComplementarySet {
 public:
  explicit ComplementarySet(std::vector<PolyphaseVector> members) : members_(std::move(members)) {
    if (members_.empty()) throw ParameterError("a complementary set needs at least one member");
    for (const auto& s : members_)
      if (s.size() != members_.front().size()) throw ParameterError("complementary set members differ in length");
  }

  std::size_t size() const { return members_.size(); }
  std::size_t length() const { return members_.front().size(); }
  const std::vector<PolyphaseVector>& members() const { return members_; }

 private:
  std::vector<PolyphaseVector> members_;
};

struct ComplementarityReport {
  bool complementary = false;
  double max_residual = 0.0;  ///< max over l != 0 of |sum_i A(A^i)(l)|
  std::int64_t worst_shift = 0;
};

inline ComplementarityReport is_complementary_set(const ComplementarySet& set,
                                                  double tolerance = kDefaultComplementaryTolerance) {
  ComplementarityReport report;
  const auto n = static_cast<std::int64_t>(set.length());
  for (std::int64_t shift = 1; shift < n; ++shift) {
    Complex sum{0.0, 0.0};
    for (const auto& s : set.members()) sum += auto_correlation(s, shift);
    // A(-l) = conj(A(l)), so positive shifts suffice
    if (std::abs(sum) > report.max_residual) {
      report.max_residual = std::abs(sum);
      report.worst_shift = shift;
    }
  }
  report.complementary = report.max_residual <= tolerance;
  return report;
}

/// |A(F)(l) - sum_d A(F|d)(l) - sum_{d1 != d2} C(F|d1, F|d2)(l)|.
inline double expansion_identity_residual(const GeneralizedBooleanFunction& f, std::span<const int> variables,
                                          std::int64_t shift) {
  validate_variable_list(variables, f.num_variables());
  const std::vector<int> vars(variables.begin(), variables.end());
  const std::size_t count = std::size_t{1} << vars.size();
  std::vector<PolyphaseVector> pieces;
  pieces.reserve(count);
  for (std::size_t d = 0; d < count; ++d) pieces.push_back(restricted_polyphase(f, RestrictionSpec::from_index(vars, d)));

  const Complex lhs = auto_correlation(to_polyphase(f), shift);
  Complex rhs{0.0, 0.0};
  for (std::size_t d = 0; d < count; ++d) rhs += auto_correlation(pieces[d], shift);
  for (std::size_t d1 = 0; d1 < count; ++d1)
    for (std::size_t d2 = 0; d2 < count; ++d2)
      if (d1 != d2) rhs += cross_correlation(pieces[d1], pieces[d2], shift);
  return std::abs(lhs - rhs);
}

struct EnvelopeConfig {
  double zeta = 0.0;                       ///< carrier offset
  int oversampling = kDefaultOversampling;  ///< grid points per subcarrier spacing

  void validate() const {
    if (oversampling < 2) throw ParameterError("oversampling factor must be at least 2");
    if (!std::isfinite(zeta) || zeta < 0.0) throw ParameterError("carrier offset must be finite and nonnegative");
  }
};

/// S(C)(theta) = sum_i xi^{c_i} exp(2 pi sqrt(-1) (i + zeta) theta).
inline Complex envelope(const ZqWord& word, double theta, const EnvelopeConfig& cfg = {}) {
  cfg.validate();
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < word.size(); ++i)
    acc += unit_root(word.modulus(), word[i]) *
           std::polar(1.0, 2.0 * std::numbers::pi * (static_cast<double>(i) + cfg.zeta) * theta);
  return acc;
}

struct PmeprReport {
  std::size_t n = 0;
  int oversampling = 0;
  double pmepr = 0.0;
  double argmax_theta = 0.0;
};

/// Samples |S|^2 on the grid theta = j / (n L), 0 <= j < n L, as one
/// zero-padded inverse DFT. The grid maximum is a lower bound on the sup.
/// Holds an FFTW plan; reuse one instance when scanning a codebook.
class EnvelopeSampler {
 public:
  EnvelopeSampler(std::size_t n, EnvelopeConfig cfg = {}) : n_(n), cfg_(cfg) {
    cfg_.validate();
    if (n_ == 0) throw ParameterError("envelope of an empty sequence");
    grid_ = n_ * static_cast<std::size_t>(cfg_.oversampling);
    buffer_.reset(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * grid_)));
    plan_.reset(fftw_plan_dft_1d(static_cast<int>(grid_), buffer_.get(), buffer_.get(), FFTW_BACKWARD, FFTW_ESTIMATE));
  }

  std::size_t length() const { return n_; }
  std::size_t grid_size() const { return grid_; }
  const EnvelopeConfig& config() const { return cfg_; }

  /// |S(theta_j)|^2 for every grid point.
  std::vector<double> power(std::span<const Complex> symbols) {
    transform(symbols);
    std::vector<double> out(grid_);
    for (std::size_t j = 0; j < grid_; ++j) out[j] = buffer_[j][0] * buffer_[j][0] + buffer_[j][1] * buffer_[j][1];
    return out;
  }

  PmeprReport measure(std::span<const Complex> symbols) {
    transform(symbols);
    std::size_t best = 0;
    double peak = -1.0;
    for (std::size_t j = 0; j < grid_; ++j) {
      const double p = buffer_[j][0] * buffer_[j][0] + buffer_[j][1] * buffer_[j][1];
      if (p > peak) {
        peak = p;
        best = j;
      }
    }
    return {n_, cfg_.oversampling, peak / static_cast<double>(n_),
            static_cast<double>(best) / static_cast<double>(grid_)};
  }

  PmeprReport measure(const ZqWord& word) {
    std::vector<Complex> symbols(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) symbols[i] = unit_root(word.modulus(), word[i]);
    return measure(symbols);
  }

  PmeprReport measure(const PolyphaseVector& v) { return measure(std::span<const Complex>(v.entries())); }

 private:
  struct PlanDeleter {
    void operator()(fftw_plan p) const { fftw_destroy_plan(p); }
  };
  struct BufferDeleter {
    void operator()(fftw_complex* p) const { fftw_free(p); }
  };

  // The carrier offset multiplies S by a unimodular factor and drops out of |S|.
  void transform(std::span<const Complex> symbols) {
    if (symbols.size() != n_)
      throw ParameterError("sampler built for length " + std::to_string(n_) + ", got " + std::to_string(symbols.size()));
    for (std::size_t i = 0; i < grid_; ++i) {
      const Complex c = i < n_ ? symbols[i] : Complex{0.0, 0.0};
      buffer_[i][0] = c.real();
      buffer_[i][1] = c.imag();
    }
    fftw_execute(plan_.get());
  }

  std::size_t n_;
  EnvelopeConfig cfg_;
  std::size_t grid_ = 0;
  std::unique_ptr<fftw_complex[], BufferDeleter> buffer_;
  std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter> plan_;
};

inline PmeprReport pmepr(const ZqWord& word, const EnvelopeConfig& cfg = {}) {
  EnvelopeSampler sampler(word.size(), cfg);
  return sampler.measure(word);
}

inline PmeprReport pmepr(const PolyphaseVector& v, const EnvelopeConfig& cfg = {}) {
  EnvelopeSampler sampler(v.size(), cfg);
  return sampler.measure(v);
}

}  // namespace ermcode
