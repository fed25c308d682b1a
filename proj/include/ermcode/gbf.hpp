#pragma once

// Generalized Boolean functions {0,1}^m -> Z_q in algebraic normal form,
// and the sequences associated with them.
//
// Index convention used throughout the library: position i of a length-2^m
// sequence corresponds to the point (i_0, ..., i_{m-1}) with
// i = sum_a i_a 2^a, i.e. x_0 is the least significant axis.

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ermcode/errors.hpp"

namespace ermcode {

using Residue = std::uint32_t;
using Mask = std::uint32_t;
using Complex = std::complex<double>;

inline constexpr int kMaxVariables = 24;

/// Degree of the identically-zero function. Compares below every real degree.
inline constexpr int kBottomDegree = std::numeric_limits<int>::min();

namespace detail {

inline bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline int log2_exact(std::uint64_t v) { return std::countr_zero(v); }

inline Residue mod(std::int64_t v, Residue q) {
  const auto qq = static_cast<std::int64_t>(q);
  std::int64_t r = v % qq;
  return static_cast<Residue>(r < 0 ? r + qq : r);
}

inline Residue add_mod(Residue a, Residue b, Residue q) {
  return static_cast<Residue>((static_cast<std::uint64_t>(a) + b) % q);
}

inline Residue mul_mod(Residue a, Residue b, Residue q) {
  return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % q);
}

inline void check_modulus(Residue q) {
  if (q < 2) throw ParameterError("modulus q must be at least 2, got " + std::to_string(q));
}

inline void check_variable_count(int m) {
  if (m < 1 || m > kMaxVariables)
    throw ParameterError("variable count m must lie in [1, " + std::to_string(kMaxVariables) +
                         "], got " + std::to_string(m));
}

}  // namespace detail

/// xi^k with xi = exp(2 pi i / q). Multiples of a quarter turn are exact.
inline Complex unit_root(Residue q, Residue k) {
  k %= q;
  if ((4ULL * k) % q == 0) {
    switch ((4ULL * k) / q) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q));
}

/// A word over Z_q whose length is a power of two.
class ZqWord {
 public:
  ZqWord() = default;

  ZqWord(Residue q, std::vector<Residue> entries) : q_(q), entries_(std::move(entries)) {
    detail::check_modulus(q_);
    if (!detail::is_power_of_two(entries_.size()))
      throw ParameterError("word length must be a power of two, got " + std::to_string(entries_.size()));
    for (Residue e : entries_)
      if (e >= q_) throw ParameterError("entry " + std::to_string(e) + " not reduced mod " + std::to_string(q_));
  }

  static ZqWord zeros(Residue q, std::size_t n) { return ZqWord(q, std::vector<Residue>(n, 0)); }

  Residue modulus() const { return q_; }
  std::size_t size() const { return entries_.size(); }
  int num_variables() const { return detail::log2_exact(entries_.size()); }
  const std::vector<Residue>& entries() const { return entries_; }
  Residue operator[](std::size_t i) const { return entries_[i]; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](Residue e) { return e == 0; });
  }

  ZqWord operator+(const ZqWord& o) const {
    check_compatible(o);
    std::vector<Residue> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = detail::add_mod(entries_[i], o.entries_[i], q_);
    return ZqWord(q_, std::move(out));
  }

  ZqWord operator-(const ZqWord& o) const {
    check_compatible(o);
    std::vector<Residue> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = detail::add_mod(entries_[i], q_ - o.entries_[i], q_);
    return ZqWord(q_, std::move(out));
  }

  ZqWord scaled(std::int64_t c) const {
    const Residue cr = detail::mod(c, q_);
    std::vector<Residue> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = detail::mul_mod(entries_[i], cr, q_);
    return ZqWord(q_, std::move(out));
  }

  friend bool operator==(const ZqWord&, const ZqWord&) = default;

 private:
  void check_compatible(const ZqWord& o) const {
    if (o.q_ != q_ || o.size() != size()) throw ParameterError("words differ in modulus or length");
  }

  Residue q_ = 2;
  std::vector<Residue> entries_;
};

/// Complex sequence with an explicit support mask; unsupported entries are 0.
class PolyphaseVector {
 public:
  PolyphaseVector() = default;

  /// xi^{w_i} on the support, 0 elsewhere.
  PolyphaseVector(const ZqWord& word, std::vector<bool> support) : support_(std::move(support)) {
    if (support_.size() != word.size()) throw ParameterError("support mask length differs from word length");
    entries_.resize(word.size());
    for (std::size_t i = 0; i < word.size(); ++i)
      entries_[i] = support_[i] ? unit_root(word.modulus(), word[i]) : Complex{0.0, 0.0};
  }

  explicit PolyphaseVector(const ZqWord& word) : PolyphaseVector(word, std::vector<bool>(word.size(), true)) {}

  std::size_t size() const { return entries_.size(); }
  const std::vector<Complex>& entries() const { return entries_; }
  const std::vector<bool>& support() const { return support_; }
  std::size_t support_size() const {
    return static_cast<std::size_t>(std::count(support_.begin(), support_.end(), true));
  }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }

 private:
  std::vector<Complex> entries_;
  std::vector<bool> support_;
};

/// A map {0,1}^m -> Z_q stored as a sparse algebraic normal form
/// (monomial mask -> nonzero coefficient). Bit a of a mask stands for x_a.
class GeneralizedBooleanFunction {
 public:
  using Terms = std::map<Mask, Residue>;

  GeneralizedBooleanFunction() : GeneralizedBooleanFunction(1, 2) {}

  /// The zero function.
  GeneralizedBooleanFunction(int m, Residue q) : m_(m), q_(q) {
    detail::check_variable_count(m);
    detail::check_modulus(q);
  }

  /// Coefficients are reduced mod q, duplicate masks summed, zeros dropped.
  static GeneralizedBooleanFunction from_terms(int m, Residue q,
                                               std::span<const std::pair<Mask, std::int64_t>> terms) {
    GeneralizedBooleanFunction f(m, q);
    for (const auto& [mask, coeff] : terms) f.add_term(mask, coeff);
    return f;
  }

  static GeneralizedBooleanFunction from_terms(int m, Residue q,
                                               std::initializer_list<std::pair<Mask, std::int64_t>> terms) {
    return from_terms(m, q, std::span<const std::pair<Mask, std::int64_t>>(terms.begin(), terms.size()));
  }

  static GeneralizedBooleanFunction monomial(int m, Residue q, Mask mask, std::int64_t coeff = 1) {
    GeneralizedBooleanFunction f(m, q);
    f.add_term(mask, coeff);
    return f;
  }

  static GeneralizedBooleanFunction constant(int m, Residue q, std::int64_t c) { return monomial(m, q, 0, c); }

  /// Inverse of psi: recovers the ANF from the value table by Moebius inversion.
  static GeneralizedBooleanFunction from_values(const ZqWord& values) {
    const int m = values.num_variables();
    const Residue q = values.modulus();
    std::vector<Residue> c(values.entries());
    for (int a = 0; a < m; ++a) {
      const std::size_t bit = std::size_t{1} << a;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (i & bit) c[i] = detail::add_mod(c[i], q - c[i ^ bit], q);
    }
    GeneralizedBooleanFunction f(std::max(m, 1), q);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) f.terms_.emplace(static_cast<Mask>(i), c[i]);
    return f;
  }

  int num_variables() const { return m_; }
  Residue modulus() const { return q_; }
  const Terms& anf() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Residue coefficient(Mask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? 0 : it->second;
  }

  /// Union of the variables occurring in any monomial.
  Mask support_variables() const {
    Mask s = 0;
    for (const auto& [mask, c] : terms_) s |= mask;
    return s;
  }

  bool depends_on(int variable) const { return (support_variables() >> variable) & 1U; }

  Residue evaluate(std::span<const std::uint8_t> point) const {
    if (point.size() != static_cast<std::size_t>(m_))
      throw ParameterError("point has " + std::to_string(point.size()) + " coordinates, expected " +
                           std::to_string(m_));
    Mask x = 0;
    for (int a = 0; a < m_; ++a) {
      if (point[a] > 1) throw ParameterError("point coordinates must be binary");
      x |= static_cast<Mask>(point[a]) << a;
    }
    return at_index(x);
  }

  /// f evaluated at the binary expansion of i.
  Residue at_index(std::uint64_t i) const {
    std::uint64_t acc = 0;
    for (const auto& [mask, c] : terms_)
      if ((i & mask) == mask) acc += c;
    return static_cast<Residue>(acc % q_);
  }

  int degree() const {
    int d = kBottomDegree;
    for (const auto& [mask, c] : terms_) d = std::max(d, std::popcount(mask));
    return d;
  }

  /// Coefficientwise reduction into Z_{q'}; q' must divide q.
  GeneralizedBooleanFunction reduced_mod(Residue q_prime) const {
    if (q_prime < 2 || q_ % q_prime != 0)
      throw ParameterError("cannot reduce mod " + std::to_string(q_prime) + " from Z_" + std::to_string(q_));
    GeneralizedBooleanFunction g(m_, q_prime);
    for (const auto& [mask, c] : terms_) g.add_term(mask, c);
    return g;
  }

  GeneralizedBooleanFunction operator+(const GeneralizedBooleanFunction& o) const {
    check_compatible(o);
    GeneralizedBooleanFunction g = *this;
    for (const auto& [mask, c] : o.terms_) g.add_term(mask, c);
    return g;
  }

  GeneralizedBooleanFunction operator-() const { return scaled(-1); }

  GeneralizedBooleanFunction operator-(const GeneralizedBooleanFunction& o) const { return *this + (-o); }

  /// Product of functions; x_a^2 = x_a, so monomials multiply by mask union.
  GeneralizedBooleanFunction operator*(const GeneralizedBooleanFunction& o) const {
    check_compatible(o);
    GeneralizedBooleanFunction g(m_, q_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) g.add_term(ma | mb, static_cast<std::int64_t>(detail::mul_mod(ca, cb, q_)));
    return g;
  }

  GeneralizedBooleanFunction scaled(std::int64_t c) const {
    GeneralizedBooleanFunction g(m_, q_);
    const Residue cr = detail::mod(c, q_);
    for (const auto& [mask, coeff] : terms_) g.add_term(mask, detail::mul_mod(coeff, cr, q_));
    return g;
  }

  friend bool operator==(const GeneralizedBooleanFunction&, const GeneralizedBooleanFunction&) = default;

 private:
  void add_term(Mask mask, std::int64_t coeff) {
    if (m_ < 32 && (mask >> m_) != 0)
      throw ParameterError("monomial mask " + std::to_string(mask) + " out of range for m = " + std::to_string(m_));
    const Residue c = detail::add_mod(coefficient(mask), detail::mod(coeff, q_), q_);
    if (c == 0)
      terms_.erase(mask);
    else
      terms_[mask] = c;
  }

  void check_compatible(const GeneralizedBooleanFunction& o) const {
    if (o.m_ != m_ || o.q_ != q_) throw ParameterError("functions differ in variable count or modulus");
  }

  int m_;
  Residue q_;
  Terms terms_;
};

/// max over 0 <= i < h of deg(f mod 2^{i+1}) - i, for q = 2^h.
/// The zero function has effective degree kBottomDegree.
inline int effective_degree(const GeneralizedBooleanFunction& f) {
  const Residue q = f.modulus();
  if (!detail::is_power_of_two(q))
    throw ParameterError("effective degree needs q = 2^h, got q = " + std::to_string(q));
  const int h = detail::log2_exact(q);
  int best = kBottomDegree;
  for (int i = 0; i < h; ++i) {
    const int d = f.reduced_mod(Residue{1} << (i + 1)).degree();
    if (d != kBottomDegree) best = std::max(best, d - i);
  }
  return best;
}

/// Restriction x_{j_0..j_{k-1}} = d. Indices strictly increasing.
struct RestrictionSpec {
  std::vector<int> variables;
  std::vector<std::uint8_t> assignment;

  std::size_t size() const { return variables.size(); }

  Mask variable_mask() const {
    Mask s = 0;
    for (int v : variables) s |= Mask{1} << v;
    return s;
  }

  void validate(int m) const {
    if (assignment.size() != variables.size())
      throw ParameterError("restriction assignment length differs from variable count");
    for (std::size_t a = 0; a < variables.size(); ++a) {
      if (variables[a] < 0 || variables[a] >= m)
        throw ParameterError("restriction variable x" + std::to_string(variables[a]) + " out of range");
      if (a > 0 && variables[a] <= variables[a - 1])
        throw ParameterError("restriction variables must be strictly increasing");
      if (assignment[a] > 1) throw ParameterError("restriction assignment must be binary");
    }
  }

  /// The assignment whose bit a (LSB first) is d_a.
  static RestrictionSpec from_index(std::vector<int> variables, std::uint64_t d) {
    RestrictionSpec s{std::move(variables), {}};
    s.assignment.resize(s.variables.size());
    for (std::size_t a = 0; a < s.variables.size(); ++a) s.assignment[a] = static_cast<std::uint8_t>((d >> a) & 1U);
    return s;
  }
};

inline void validate_variable_list(std::span<const int> variables, int m) {
  for (std::size_t a = 0; a < variables.size(); ++a) {
    if (variables[a] < 0 || variables[a] >= m)
      throw ParameterError("variable x" + std::to_string(variables[a]) + " out of range for m = " + std::to_string(m));
    if (a > 0 && variables[a] <= variables[a - 1]) throw ParameterError("variable list must be strictly increasing");
  }
}

/// Substitutes x_{j_a} := d_a symbolically. The result keeps the ambient
/// m-variable signature; the restricted variables no longer occur.
inline GeneralizedBooleanFunction restrict(const GeneralizedBooleanFunction& f, const RestrictionSpec& spec) {
  spec.validate(f.num_variables());
  Mask zeros = 0, ones = 0;
  for (std::size_t a = 0; a < spec.size(); ++a) (spec.assignment[a] ? ones : zeros) |= Mask{1} << spec.variables[a];
  std::vector<std::pair<Mask, std::int64_t>> terms;
  for (const auto& [mask, c] : f.anf())
    if ((mask & zeros) == 0) terms.emplace_back(mask & ~ones, c);
  return GeneralizedBooleanFunction::from_terms(f.num_variables(), f.modulus(), terms);
}

/// prod_a x_{j_a}^{d_a} (1 - x_{j_a})^{1 - d_a}, expanded into ANF.
inline GeneralizedBooleanFunction indicator(int m, Residue q, const RestrictionSpec& spec) {
  spec.validate(m);
  Mask ones = 0;
  std::vector<Mask> zero_vars;
  for (std::size_t a = 0; a < spec.size(); ++a) {
    if (spec.assignment[a])
      ones |= Mask{1} << spec.variables[a];
    else
      zero_vars.push_back(Mask{1} << spec.variables[a]);
  }
  std::vector<std::pair<Mask, std::int64_t>> terms;
  const std::size_t subsets = std::size_t{1} << zero_vars.size();
  for (std::size_t s = 0; s < subsets; ++s) {
    Mask mask = ones;
    for (std::size_t b = 0; b < zero_vars.size(); ++b)
      if ((s >> b) & 1U) mask |= zero_vars[b];
    terms.emplace_back(mask, (std::popcount(s) & 1) ? -1 : 1);
  }
  return GeneralizedBooleanFunction::from_terms(m, q, terms);
}

struct RestrictedPiece {
  std::vector<std::uint8_t> assignment;
  GeneralizedBooleanFunction function;
};

/// f = sum_d f|_{x=d} prod_a x_{j_a}^{d_a} (1 - x_{j_a})^{1 - d_a}.
inline GeneralizedBooleanFunction reconstruct(std::span<const RestrictedPiece> pieces, std::span<const int> variables) {
  if (pieces.empty()) throw ParameterError("reconstruction needs at least one piece");
  const int m = pieces.front().function.num_variables();
  const Residue q = pieces.front().function.modulus();
  validate_variable_list(variables, m);
  const std::size_t k = variables.size();
  if (k >= 63) throw ParameterError("too many restriction variables");
  const std::vector<int> vars(variables.begin(), variables.end());
  Mask restricted = 0;
  for (int v : vars) restricted |= Mask{1} << v;

  std::vector<bool> seen(std::size_t{1} << k, false);
  GeneralizedBooleanFunction f(m, q);
  for (const auto& piece : pieces) {
    if (piece.assignment.size() != k) throw ParameterError("piece assignment length differs from variable count");
    if (piece.function.num_variables() != m || piece.function.modulus() != q)
      throw ParameterError("pieces differ in variable count or modulus");
    std::uint64_t d = 0;
    for (std::size_t a = 0; a < k; ++a) {
      if (piece.assignment[a] > 1) throw ParameterError("piece assignment must be binary");
      d |= std::uint64_t{piece.assignment[a]} << a;
    }
    if (seen[d]) throw ParameterError("assignment " + std::to_string(d) + " supplied twice");
    seen[d] = true;
    if (piece.function.support_variables() & restricted)
      throw ParameterError("piece for assignment " + std::to_string(d) + " depends on a restricted variable");
    f = f + piece.function * indicator(m, q, RestrictionSpec{vars, piece.assignment});
  }
  for (std::size_t d = 0; d < seen.size(); ++d)
    if (!seen[d]) throw ParameterError("assignment " + std::to_string(d) + " missing from reconstruction");
  return f;
}

/// psi(f) = (f_0, ..., f_{2^m - 1}).
inline ZqWord to_zq_word(const GeneralizedBooleanFunction& f) {
  const int m = f.num_variables();
  const Residue q = f.modulus();
  std::vector<Residue> v(std::size_t{1} << m, 0);
  for (const auto& [mask, c] : f.anf()) v[mask] = c;
  // subset-sum transform: v[i] = sum of c_S over S contained in i
  for (int a = 0; a < m; ++a) {
    const std::size_t bit = std::size_t{1} << a;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (i & bit) v[i] = detail::add_mod(v[i], v[i ^ bit], q);
  }
  return ZqWord(q, std::move(v));
}

/// Psi(f) = (xi^{f_0}, ..., xi^{f_{2^m - 1}}).
inline PolyphaseVector to_polyphase(const GeneralizedBooleanFunction& f) { return PolyphaseVector(to_zq_word(f)); }

/// F|_{x=d}: Psi(f) on positions consistent with d, zero elsewhere.
inline PolyphaseVector restricted_polyphase(const GeneralizedBooleanFunction& f, const RestrictionSpec& spec) {
  spec.validate(f.num_variables());
  const ZqWord w = to_zq_word(f);
  std::vector<bool> support(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    bool in = true;
    for (std::size_t a = 0; a < spec.size() && in; ++a) in = ((i >> spec.variables[a]) & 1U) == spec.assignment[a];
    support[i] = in;
  }
  return PolyphaseVector(w, std::move(support));
}

}  // namespace ermcode
