#pragma once

// Linear codes over Z_{2^h} spanned by (scaled) monomial words: effective-degree
// Reed-Muller codes, RM/ZRM, the base codes A(k,r,m,h), and unions of their cosets.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ermcode/construction.hpp"
#include "ermcode/errors.hpp"
#include "ermcode/gbf.hpp"

namespace ermcode {

inline constexpr int kExhaustiveBudgetBits = 26;
inline constexpr int kMaxAlphabetBits = 16;

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// log2 |F(r,m,h)| = sum_{i=0}^{r} h C(m,i) + sum_{i=1}^{h-1} (h-i) C(m, r+i).
/// Valid for negative r as well (only the scaled monomials survive).
inline std::int64_t log2_function_count(int r, int m, int h) {
  std::int64_t bits = 0;
  for (int i = 0; i <= r; ++i) bits += h * binomial(m, i);
  for (int i = 1; i <= h - 1; ++i) bits += (h - i) * binomial(m, r + i);
  return bits;
}

namespace detail {

inline void check_alphabet(int h) {
  if (h < 1 || h > kMaxAlphabetBits)
    throw ParameterError("h must lie in [1, " + std::to_string(kMaxAlphabetBits) + "], got " + std::to_string(h));
}

inline bool degree_then_mask(const GeneralizedBooleanFunction& a, const GeneralizedBooleanFunction& b) {
  const Mask ma = a.anf().begin()->first, mb = b.anf().begin()->first;
  const int da = std::popcount(ma), db = std::popcount(mb);
  return da != db ? da < db : ma < mb;
}

inline int word_valuation(const ZqWord& w, int h) {
  int v = h;
  for (Residue e : w.entries())
    if (e != 0) v = std::min(v, std::countr_zero(e));
  return v;
}

}  // namespace detail

/// Generators of F(r, ., h) on the given variables: x^S for |S| <= r, and
/// 2^i x^S for |S| = r + i, 1 <= i < h. Ordered by degree, then mask.
inline std::vector<GeneralizedBooleanFunction> effective_degree_basis(int r, std::span<const int> variables, int m,
                                                                     int h) {
  detail::check_alphabet(h);
  const Residue q = Residue{1} << h;
  std::vector<GeneralizedBooleanFunction> out;
  const std::size_t nv = variables.size();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << nv); ++s) {
    const int deg = std::popcount(s);
    const int scale = std::max(0, deg - r);
    if (scale > h - 1) continue;
    Mask mask = 0;
    for (std::size_t b = 0; b < nv; ++b)
      if ((s >> b) & 1U) mask |= Mask{1} << variables[b];
    out.push_back(GeneralizedBooleanFunction::monomial(m, q, mask, std::int64_t{1} << scale));
  }
  std::sort(out.begin(), out.end(), detail::degree_then_mask);
  return out;
}

enum class CodeFamily { Erm, Rm, Zrm, A, Custom };

inline std::string to_string(CodeFamily f) {
  switch (f) {
    case CodeFamily::Erm: return "ERM";
    case CodeFamily::Rm: return "RM";
    case CodeFamily::Zrm: return "ZRM";
    case CodeFamily::A: return "A";
    default: return "custom";
  }
}

inline CodeFamily code_family_from_string(const std::string& s) {
  std::string u;
  for (char c : s) u.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (u == "ERM") return CodeFamily::Erm;
  if (u == "RM") return CodeFamily::Rm;
  if (u == "ZRM") return CodeFamily::Zrm;
  if (u == "A") return CodeFamily::A;
  if (u == "CUSTOM") return CodeFamily::Custom;
  throw ParameterError("unknown code family '" + s + "'");
}

struct CodeParams {
  CodeFamily family = CodeFamily::Custom;
  int r = 0;
  int m = 1;
  int h = 1;
  int k = 0;  ///< A codes only
};

struct Generator {
  GeneralizedBooleanFunction label;
  ZqWord word;
  int bits = 0;  ///< h minus the 2-adic valuation of the word
};

namespace detail {

inline Residue inverse_odd(Residue u, Residue q) {
  std::uint32_t x = u;
  for (int i = 0; i < 5; ++i) x *= 2U - u * x;
  return x & (q - 1);
}

/// Echelon form over Z_{2^h} with the Howell property: after column c is
/// processed the remaining rows span exactly the subcode vanishing on columns
/// <= c. Greedy reduction against the pivots then yields a canonical coset
/// representative.
class HowellForm {
 public:
  struct Pivot {
    std::size_t column;
    int exponent;
    std::vector<Residue> row;
  };

  HowellForm(std::vector<std::vector<Residue>> rows, std::size_t n, int h) : q_(Residue{1} << h), h_(h) {
    const Residue mask = q_ - 1;
    auto nonzero = [](const std::vector<Residue>& r) {
      return std::any_of(r.begin(), r.end(), [](Residue e) { return e != 0; });
    };
    std::erase_if(rows, [&](const auto& r) { return !nonzero(r); });
    for (std::size_t col = 0; col < n && !rows.empty(); ++col) {
      std::size_t best = rows.size();
      int best_val = h;
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i][col] != 0 && std::countr_zero(rows[i][col]) < best_val) {
          best_val = std::countr_zero(rows[i][col]);
          best = i;
        }
      if (best == rows.size()) continue;
      std::vector<Residue> p = std::move(rows[best]);
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
      const Residue inv = inverse_odd(p[col] >> best_val, q_);
      for (auto& e : p) e = (e * inv) & mask;
      for (auto& r : rows) {
        if (r[col] == 0) continue;
        const Residue f = r[col] >> best_val;
        for (std::size_t j = 0; j < n; ++j) r[j] = (r[j] - f * p[j]) & mask;
      }
      std::vector<Residue> extra(p);
      for (auto& e : extra) e = (e << (h - best_val)) & mask;
      std::erase_if(rows, [&](const auto& r) { return !nonzero(r); });
      if (nonzero(extra)) rows.push_back(std::move(extra));
      log2_size_ += h - best_val;
      pivots_.push_back({col, best_val, std::move(p)});
    }
  }

  int log2_size() const { return log2_size_; }

  std::vector<Residue> reduce(std::vector<Residue> w) const {
    const Residue mask = q_ - 1;
    for (const auto& pv : pivots_) {
      const Residue f = w[pv.column] >> pv.exponent;
      if (f == 0) continue;
      for (std::size_t j = 0; j < w.size(); ++j) w[j] = (w[j] - f * pv.row[j]) & mask;
    }
    return w;
  }

 private:
  Residue q_;
  int h_;
  int log2_size_ = 0;
  std::vector<Pivot> pivots_;
};

}  // namespace detail

/// A Z_{2^h}-linear code given by labelled generator rows. Codewords are the
/// combinations sum_j c_j g_j with 0 <= c_j < 2^{bits_j}; each such combination
/// is a distinct codeword (checked against the echelon form on construction).
class LinearCode {
 public:
  LinearCode(CodeParams params, std::vector<GeneralizedBooleanFunction> labels) : params_(params) {
    detail::check_alphabet(params_.h);
    detail::check_variable_count(params_.m);
    const Residue q = modulus();
    std::vector<std::vector<Residue>> rows;
    for (auto& label : labels) {
      if (label.num_variables() != params_.m || label.modulus() != q)
        throw ParameterError("generator label does not match code parameters");
      ZqWord w = to_zq_word(label);
      if (w.is_zero()) throw ParameterError("zero generator");
      const int bits = params_.h - detail::word_valuation(w, params_.h);
      size_bits_ += bits;
      rows.push_back(w.entries());
      generators_.push_back({std::move(label), std::move(w), bits});
    }
    howell_ = std::make_shared<const detail::HowellForm>(std::move(rows), length(), params_.h);
    if (howell_->log2_size() != size_bits_)
      throw ParameterError("generators are not independent: coefficient box has 2^" + std::to_string(size_bits_) +
                           " points but the code has 2^" + std::to_string(howell_->log2_size()) + " words");
  }

  const CodeParams& params() const { return params_; }
  int m() const { return params_.m; }
  int h() const { return params_.h; }
  Residue modulus() const { return Residue{1} << params_.h; }
  std::size_t length() const { return std::size_t{1} << params_.m; }
  const std::vector<Generator>& generators() const { return generators_; }
  int size_bits() const { return size_bits_; }

  std::vector<std::vector<Residue>> generator_matrix() const {
    std::vector<std::vector<Residue>> g;
    for (const auto& gen : generators_) g.push_back(gen.word.entries());
    return g;
  }

  ZqWord combine(std::span<const Residue> coefficients) const {
    if (coefficients.size() != generators_.size())
      throw ParameterError("expected " + std::to_string(generators_.size()) + " coefficients");
    std::vector<Residue> w(length(), 0);
    const Residue mask = modulus() - 1;
    for (std::size_t j = 0; j < generators_.size(); ++j) {
      if (coefficients[j] == 0) continue;
      const auto& g = generators_[j].word.entries();
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = (w[i] + coefficients[j] * g[i]) & mask;
    }
    return ZqWord(modulus(), std::move(w));
  }

  /// Coefficients from message bits: generator j takes bits_j bits, least
  /// significant digit first, generators in order.
  std::vector<Residue> coefficients_from_bits(std::span<const std::uint8_t> bits) const {
    if (bits.size() != static_cast<std::size_t>(size_bits_))
      throw ParameterError("expected " + std::to_string(size_bits_) + " message bits, got " +
                           std::to_string(bits.size()));
    std::vector<Residue> c(generators_.size(), 0);
    std::size_t pos = 0;
    for (std::size_t j = 0; j < generators_.size(); ++j)
      for (int b = 0; b < generators_[j].bits; ++b) c[j] |= static_cast<Residue>(bits[pos++] & 1U) << b;
    return c;
  }

  ZqWord encode_bits(std::span<const std::uint8_t> bits) const { return combine(coefficients_from_bits(bits)); }

  /// Canonical representative of w + C.
  ZqWord reduce(const ZqWord& w) const {
    check_word(w);
    return ZqWord(modulus(), howell_->reduce(w.entries()));
  }

  bool contains(const ZqWord& w) const { return reduce(w).is_zero(); }

  /// Largest effective degree among the generator labels; the code lies in
  /// ERM(rho, m, h) for this rho.
  int max_effective_degree() const {
    int rho = kBottomDegree;
    for (const auto& g : generators_) rho = std::max(rho, effective_degree(g.label));
    return rho;
  }

 private:
  void check_word(const ZqWord& w) const {
    if (w.modulus() != modulus() || w.size() != length()) throw ParameterError("word does not match the code");
  }

  CodeParams params_;
  std::vector<Generator> generators_;
  int size_bits_ = 0;
  std::shared_ptr<const detail::HowellForm> howell_;
};

namespace detail {

inline std::vector<int> all_variables(int m) {
  std::vector<int> v(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

inline void check_order(int r, int m) {
  if (r < 0 || r > m) throw ParameterError("order r must lie in [0, m], got r = " + std::to_string(r));
}

}  // namespace detail

/// ERM(r,m,h) = { psi(f) : f has effective degree <= r }.
inline LinearCode erm_code(int r, int m, int h) {
  detail::check_variable_count(m);
  detail::check_alphabet(h);
  detail::check_order(r, m);
  const auto vars = detail::all_variables(m);
  return LinearCode({CodeFamily::Erm, r, m, h, 0}, effective_degree_basis(r, vars, m, h));
}

/// RM_{2^h}(r,m): monomials of degree <= r with unrestricted coefficients.
inline LinearCode rm_code(int r, int m, int h) {
  detail::check_variable_count(m);
  detail::check_alphabet(h);
  detail::check_order(r, m);
  const auto vars = detail::all_variables(m);
  std::vector<GeneralizedBooleanFunction> labels;
  for (auto& g : effective_degree_basis(r, vars, m, h))
    if (std::popcount(g.anf().begin()->first) <= r) labels.push_back(std::move(g));
  return LinearCode({CodeFamily::Rm, r, m, h, 0}, std::move(labels));
}

/// ZRM_{2^h}(r,m): monomials of degree < r, plus 2 times those of degree r.
inline LinearCode zrm_code(int r, int m, int h) {
  detail::check_variable_count(m);
  detail::check_alphabet(h);
  detail::check_order(r, m);
  const Residue q = Residue{1} << h;
  std::vector<GeneralizedBooleanFunction> labels;
  for (Mask s = 0; s < (Mask{1} << m); ++s) {
    const int deg = std::popcount(s);
    if (deg < r)
      labels.push_back(GeneralizedBooleanFunction::monomial(m, q, s));
    else if (deg == r && h >= 2)
      labels.push_back(GeneralizedBooleanFunction::monomial(m, q, s, 2));
  }
  std::sort(labels.begin(), labels.end(), detail::degree_then_mask);
  return LinearCode({CodeFamily::Zrm, r, m, h, 0}, std::move(labels));
}

/// A(k,r,m,h): sum_{a < m-k} x_a g_a(y) + g(y) over the tail variables
/// y = (x_{m-k}, ..., x_{m-1}), g_a in F(r-1,k,h), g in F(r,k,h).
inline LinearCode a_code(int k, int r, int m, int h) {
  detail::check_variable_count(m);
  detail::check_alphabet(h);
  if (k < 0 || k >= m) throw ParameterError("A code needs 0 <= k < m");
  if (r < 0 || r > k + 1) throw ParameterError("A code needs 0 <= r <= k + 1");
  const Residue q = Residue{1} << h;
  std::vector<int> tail;
  for (int j = m - k; j < m; ++j) tail.push_back(j);
  std::vector<GeneralizedBooleanFunction> labels = effective_degree_basis(r, tail, m, h);
  const auto lower = effective_degree_basis(r - 1, tail, m, h);
  for (int a = 0; a < m - k; ++a)
    for (const auto& g : lower) labels.push_back(GeneralizedBooleanFunction::monomial(m, q, Mask{1} << a) * g);
  std::sort(labels.begin(), labels.end(), detail::degree_then_mask);
  return LinearCode({CodeFamily::A, r, m, h, k}, std::move(labels));
}

/// s = (m-k) log2|F(r-1,k,h)| + log2|F(r,k,h)|.
inline std::int64_t a_code_size_bits(int k, int r, int m, int h) {
  return (m - k) * log2_function_count(r - 1, k, h) + log2_function_count(r, k, h);
}

// ---------------------------------------------------------------------------
// Weights

inline int lee_value(Residue a, Residue q) { return static_cast<int>(std::min(a, q - a)); }

inline std::int64_t lee_weight(const ZqWord& a) {
  std::int64_t w = 0;
  for (Residue e : a.entries()) w += lee_value(e, a.modulus());
  return w;
}

inline double euclid_sq_weight(const ZqWord& a) {
  double w = 0.0;
  for (Residue e : a.entries()) w += std::norm(unit_root(a.modulus(), e) - Complex{1.0, 0.0});
  return w;
}

struct WeightProfile {
  std::vector<std::int64_t> counts;  ///< counts[w] = number of entries of Lee weight w

  std::int64_t total() const {
    std::int64_t s = 0;
    for (auto c : counts) s += c;
    return s;
  }
  std::int64_t lee_weight() const {
    std::int64_t s = 0;
    for (std::size_t w = 0; w < counts.size(); ++w) s += static_cast<std::int64_t>(w) * counts[w];
    return s;
  }
  /// 4 sum_w N(w) sin^2(w pi / q).
  double euclid_sq_weight(Residue q) const {
    double s = 0.0;
    for (std::size_t w = 1; w < counts.size(); ++w) {
      const double sn = std::sin(static_cast<double>(w) * std::numbers::pi / q);
      s += 4.0 * static_cast<double>(counts[w]) * sn * sn;
    }
    return s;
  }
};

inline WeightProfile weight_profile(const ZqWord& a) {
  WeightProfile p;
  p.counts.assign(a.modulus() / 2 + 1, 0);
  for (Residue e : a.entries()) ++p.counts[static_cast<std::size_t>(lee_value(e, a.modulus()))];
  return p;
}

/// 2^{m-r+2} sin^2(pi / 2^h).
inline double erm_euclid_sq_distance(int r, int m, int h) {
  const double s = std::sin(std::numbers::pi / static_cast<double>(Residue{1} << h));
  return std::ldexp(s * s, m - r + 2);
}

inline std::int64_t erm_lee_distance(int r, int m) { return std::int64_t{1} << (m - r); }

// ---------------------------------------------------------------------------
// Exhaustive traversal of a coset w0 + C

namespace detail {

struct BitGenerator {
  std::vector<std::uint32_t> positions;
  std::vector<Residue> values;
  int message_bit = 0;
};

/// One row per message bit: 2^b g_j for digit b of coefficient j. Sparse rows
/// first, so the Gray-code walk touches few entries per step.
inline std::vector<BitGenerator> bit_generators(const LinearCode& code) {
  std::vector<BitGenerator> out;
  const Residue mask = code.modulus() - 1;
  int pos = 0;
  for (const auto& g : code.generators()) {
    for (int b = 0; b < g.bits; ++b, ++pos) {
      BitGenerator bg;
      bg.message_bit = pos;
      for (std::size_t i = 0; i < g.word.size(); ++i) {
        const Residue v = (g.word[i] << b) & mask;
        if (v != 0) {
          bg.positions.push_back(static_cast<std::uint32_t>(i));
          bg.values.push_back(v);
        }
      }
      out.push_back(std::move(bg));
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const BitGenerator& a, const BitGenerator& b) { return a.positions.size() < b.positions.size(); });
  return out;
}

}  // namespace detail

/// Visits every word of offset + C exactly once in binary-reflected Gray code
/// order over the message bits. The accumulator sees each changed entry
/// (acc.reset(word) first, then acc.change(i, old, new)); the visitor is called
/// as visit(acc, message, word) where `message` is the base-code message value.
template <class Accumulator, class Visitor>
void walk_coset(const LinearCode& code, const ZqWord& offset, Accumulator& acc, Visitor&& visit) {
  if (code.size_bits() > 62) throw BudgetError("code too large to traverse");
  if (offset.size() != code.length() || offset.modulus() != code.modulus())
    throw ParameterError("coset offset does not match the code");
  const auto gens = detail::bit_generators(code);
  const Residue mask = code.modulus() - 1;
  std::vector<Residue> word = offset.entries();
  std::vector<bool> active(gens.size(), false);
  std::uint64_t message = 0;
  acc.reset(std::span<const Residue>(word));
  visit(acc, message, std::span<const Residue>(word));
  const std::uint64_t total = std::uint64_t{1} << gens.size();
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto b = static_cast<std::size_t>(std::countr_zero(step));
    const auto& bg = gens[b];
    const bool on = !active[b];
    active[b] = on;
    message ^= std::uint64_t{1} << bg.message_bit;
    for (std::size_t t = 0; t < bg.positions.size(); ++t) {
      const std::uint32_t i = bg.positions[t];
      const Residue old = word[i];
      word[i] = on ? (old + bg.values[t]) & mask : (old - bg.values[t]) & mask;
      acc.change(i, old, word[i]);
    }
    visit(acc, message, std::span<const Residue>(word));
  }
}

namespace detail {

inline constexpr double kFixedPointScale = 1099511627776.0;  // 2^40

/// Running Lee weight and (fixed-point) squared Euclidean weight.
class WeightAccumulator {
 public:
  explicit WeightAccumulator(Residue q) : lee_(q), euclid_(q) {
    for (Residue v = 0; v < q; ++v) {
      lee_[v] = lee_value(v, q);
      euclid_[v] = std::llround(std::norm(unit_root(q, v) - Complex{1.0, 0.0}) * kFixedPointScale);
    }
  }
  void reset(std::span<const Residue> w) {
    lee = 0;
    euclid = 0;
    for (Residue v : w) {
      lee += lee_[v];
      euclid += euclid_[v];
    }
  }
  void change(std::uint32_t, Residue old, Residue now) {
    lee += lee_[now] - lee_[old];
    euclid += euclid_[now] - euclid_[old];
  }

  std::int64_t lee = 0;
  std::int64_t euclid = 0;

 private:
  std::vector<std::int64_t> lee_;
  std::vector<std::int64_t> euclid_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Minimum distances

enum class DistanceMethod { Exhaustive, Sampled };

struct SamplingOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
};

struct DistanceReport {
  DistanceMethod method = DistanceMethod::Exhaustive;
  bool exact = false;            ///< false: lee/euclid_sq are upper bounds from sampling
  std::int64_t lee = 0;
  double euclid_sq = 0.0;
  std::int64_t lee_lower_bound = 0;  ///< from the effective degree of the generators
  double euclid_sq_lower_bound = 0.0;
  std::uint64_t words_examined = 0;
};

namespace detail {

class MinTracker {
 public:
  void offer(const ZqWord& w) {
    const std::int64_t l = lee_weight(w);
    if (!have_ || l < lee_) lee_ = l;
    const double e = euclid_sq_weight(w);
    if (!have_ || e < euclid_) euclid_ = e;
    have_ = true;
  }
  bool have() const { return have_; }
  std::int64_t lee() const { return lee_; }
  double euclid() const { return euclid_; }

 private:
  bool have_ = false;
  std::int64_t lee_ = 0;
  double euclid_ = 0.0;
};

/// Minimum weights over offset + C, skipping the zero word when skip_zero.
inline void scan_coset_minimum(const LinearCode& code, const ZqWord& offset, bool skip_zero, MinTracker& best,
                               std::uint64_t& examined) {
  WeightAccumulator acc(code.modulus());
  std::int64_t best_lee = -1, best_euclid = -1;
  std::vector<Residue> lee_word, euclid_word;
  walk_coset(code, offset, acc, [&](const WeightAccumulator& a, std::uint64_t, std::span<const Residue> w) {
    ++examined;
    if (skip_zero && a.lee == 0) return;
    if (best_lee < 0 || a.lee < best_lee) {
      best_lee = a.lee;
      lee_word.assign(w.begin(), w.end());
    }
    if (best_euclid < 0 || a.euclid < best_euclid) {
      best_euclid = a.euclid;
      euclid_word.assign(w.begin(), w.end());
    }
  });
  if (best_lee < 0) return;
  // recompute the winners in floating point; the fixed-point sums only rank
  best.offer(ZqWord(code.modulus(), lee_word));
  best.offer(ZqWord(code.modulus(), euclid_word));
}

inline void fill_lower_bounds(DistanceReport& r, int m, int h, int rho) {
  if (rho == kBottomDegree) rho = 0;
  r.lee_lower_bound = erm_lee_distance(rho, m);
  r.euclid_sq_lower_bound = erm_euclid_sq_distance(rho, m, h);
}

}  // namespace detail

inline DistanceReport min_distance(const LinearCode& code, DistanceMethod method, SamplingOptions sampling = {}) {
  DistanceReport r;
  r.method = method;
  detail::fill_lower_bounds(r, code.m(), code.h(), code.max_effective_degree());
  detail::MinTracker best;
  if (method == DistanceMethod::Exhaustive) {
    if (code.size_bits() > kExhaustiveBudgetBits)
      throw BudgetError("exhaustive search over 2^" + std::to_string(code.size_bits()) + " codewords exceeds 2^" +
                        std::to_string(kExhaustiveBudgetBits));
    detail::scan_coset_minimum(code, ZqWord::zeros(code.modulus(), code.length()), true, best, r.words_examined);
    r.exact = true;
  } else {
    std::mt19937_64 rng(sampling.seed);
    std::vector<Residue> c(code.generators().size());
    for (std::uint64_t s = 0; s < sampling.samples; ++s) {
      for (std::size_t j = 0; j < c.size(); ++j)
        c[j] = static_cast<Residue>(rng() & ((std::uint64_t{1} << code.generators()[j].bits) - 1));
      const ZqWord w = code.combine(c);
      ++r.words_examined;
      if (!w.is_zero()) best.offer(w);
    }
  }
  if (!best.have()) throw ParameterError("code has no nonzero codeword to measure");
  r.lee = best.lee();
  r.euclid_sq = best.euclid();
  return r;
}

inline std::int64_t min_lee_distance(const LinearCode& code, DistanceMethod method = DistanceMethod::Exhaustive) {
  return min_distance(code, method).lee;
}

inline double min_euclid_sq_distance(const LinearCode& code, DistanceMethod method = DistanceMethod::Exhaustive) {
  return min_distance(code, method).euclid_sq;
}

// ---------------------------------------------------------------------------
// Coset codes

/// A union of 2^t cosets reps[i] + base.
struct CosetCode {
  LinearCode base;
  std::vector<ZqWord> reps;
  std::vector<GeneralizedBooleanFunction> rep_functions;
  int construction = 1;  ///< 1 or 2; 0 for a bare linear code
  int k = 0;
  int r = 0;
  int r_prime = 0;
  int m = 0;
  int h = 1;
  int t = 0;

  int s() const { return base.size_bits(); }
  int message_bits() const { return s() + t; }
  std::size_t length() const { return base.length(); }
  Residue modulus() const { return base.modulus(); }

  int max_effective_degree() const {
    int rho = base.max_effective_degree();
    for (const auto& f : rep_functions) rho = std::max(rho, effective_degree(f));
    return rho;
  }

  /// Throws unless |reps| = 2^t and the reps lie in pairwise distinct cosets.
  void validate() const {
    if (t < 0 || t > 30 || reps.size() != (std::size_t{1} << t))
      throw ParameterError("coset code needs exactly 2^t representatives");
    if (!rep_functions.empty() && rep_functions.size() != reps.size())
      throw ParameterError("representative functions do not match representative words");
    std::set<std::vector<Residue>> seen;
    for (const auto& rep : reps)
      if (!seen.insert(base.reduce(rep).entries()).second)
        throw ParameterError("two coset representatives lie in the same coset of the base code");
  }
};

/// The whole linear code viewed as a single coset.
inline CosetCode as_coset_code(const LinearCode& code) {
  CosetCode c{code, {ZqWord::zeros(code.modulus(), code.length())}, {}, 0};
  const auto& p = code.params();
  c.k = p.k;
  c.r = c.r_prime = p.r;
  c.m = p.m;
  c.h = p.h;
  c.t = 0;
  return c;
}

/// One coset of A(k,r,m,h) containing the R(k,m,h) word given by `spec`.
inline CosetCode construction1(int k, int r, int m, int h, const CosetRepSpec& spec) {
  LinearCode base = a_code(k, r, m, h);
  if (spec.m != m || spec.k != k || spec.h != h)
    throw ParameterError("representative spec parameters differ from the code parameters");
  GeneralizedBooleanFunction rep = coset_rep(spec);
  CosetCode c{std::move(base), {to_zq_word(rep)}, {rep}, 1, k, r, r, m, h, 0};
  return c;
}

struct ConstructionSize {
  int s = 0;
  int t = 0;
  int r_prime = 0;
};

namespace detail {

inline void check_construction2(int k, int r, int m, int h) {
  check_alphabet(h);
  check_variable_count(m);
  if (k < 0 || m - k <= 1) throw HypothesisError("need m - k > 1");
  if (h == 1 && (r < 2 || r > k + 2)) throw HypothesisError("for h = 1 need 2 <= r <= k + 2");
  if (h > 1 && (r < 1 || r > k + 1)) throw HypothesisError("for h > 1 need 1 <= r <= k + 1");
}

}  // namespace detail

inline ConstructionSize construction2_size(int k, int r, int m, int h) {
  detail::check_construction2(k, r, m, h);
  ConstructionSize z;
  z.r_prime = std::min(r, k + 1);
  z.s = static_cast<int>(a_code_size_bits(k, z.r_prime, m, h));
  z.t = floor_log2(rep_count(m, k, h, r));
  return z;
}

/// Union of 2^t cosets of A(k, r', m, h), r' = min(r, k+1), whose
/// representatives are the first 2^t members of enumerate_reps(m, k, h, r).
inline CosetCode construction2(int k, int r, int m, int h, int max_t = 20) {
  const ConstructionSize z = construction2_size(k, r, m, h);
  if (z.t > max_t)
    throw BudgetError("construction needs 2^" + std::to_string(z.t) + " representatives; limit is 2^" +
                      std::to_string(max_t));
  const std::uint64_t count = std::uint64_t{1} << z.t;
  RepEnumeration reps = enumerate_reps(m, k, h, r, count, count);
  CosetCode c{a_code(k, z.r_prime, m, h), {}, {}, 2, k, r, z.r_prime, m, h, z.t};
  for (auto& f : reps.reps) {
    if (effective_degree(f) > r) throw std::logic_error("representative exceeds the effective degree bound");
    c.reps.push_back(to_zq_word(f));
    c.rep_functions.push_back(std::move(f));
  }
  c.validate();
  return c;
}

inline DistanceReport min_distance(const CosetCode& code, DistanceMethod method, SamplingOptions sampling = {}) {
  DistanceReport r;
  r.method = method;
  detail::fill_lower_bounds(r, code.base.m(), code.base.h(), code.max_effective_degree());
  detail::MinTracker best;
  const std::size_t nreps = code.reps.size();
  if (method == DistanceMethod::Exhaustive) {
    const double pairs = static_cast<double>(nreps) * static_cast<double>(nreps + 1) / 2.0;
    if (std::ldexp(pairs, code.s()) > std::ldexp(1.0, kExhaustiveBudgetBits + 1))
      throw BudgetError("exhaustive pairwise search exceeds the budget");
    for (std::size_t i = 0; i < nreps; ++i)
      for (std::size_t j = i; j < nreps; ++j)
        detail::scan_coset_minimum(code.base, code.reps[i] - code.reps[j], i == j, best, r.words_examined);
    r.exact = true;
  } else {
    std::mt19937_64 rng(sampling.seed);
    const auto& gens = code.base.generators();
    std::vector<Residue> c(gens.size());
    for (std::uint64_t s = 0; s < sampling.samples; ++s) {
      for (std::size_t j = 0; j < c.size(); ++j)
        c[j] = static_cast<Residue>(rng() & ((std::uint64_t{1} << gens[j].bits) - 1));
      const std::size_t i = rng() % nreps, jj = rng() % nreps;
      const ZqWord w = code.reps[i] - code.reps[jj] + code.base.combine(c);
      ++r.words_examined;
      if (!w.is_zero()) best.offer(w);
    }
  }
  if (!best.have()) throw ParameterError("code has fewer than two codewords");
  r.lee = best.lee();
  r.euclid_sq = best.euclid();
  return r;
}

// ---------------------------------------------------------------------------
// Coding-option tables

struct TableRow {
  int m = 0, h = 1, r = 0, k = 0;
  int s = 0, t = 0;
  std::optional<double> rate1;  ///< s / 2^m, present only when r = r'
  double rate2 = 0.0;           ///< (s + t) / 2^m
  std::int64_t lee_distance = 0;
  double euclid_sq_distance = 0.0;

  /// n / 2^m rounded half-up to two decimals, computed exactly.
  static std::string rate_string(std::int64_t numerator, int m) {
    const std::int64_t den = std::int64_t{1} << m;
    const std::int64_t hundredths = (200 * numerator + den) / (2 * den);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld.%02lld", static_cast<long long>(hundredths / 100),
                  static_cast<long long>(hundredths % 100));
    return buf;
  }

  std::string rate1_string() const { return rate1 ? rate_string(s, m) : "---"; }
  std::string rate2_string() const { return rate_string(s + t, m); }
  std::string euclid_string() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", std::floor(euclid_sq_distance * 100.0 + 0.5) / 100.0);
    return buf;
  }
};

inline TableRow table_row(int m, int h, int r, int k) {
  const ConstructionSize z = construction2_size(k, r, m, h);
  TableRow row;
  row.m = m;
  row.h = h;
  row.r = r;
  row.k = k;
  row.s = z.s;
  row.t = z.t;
  const double n = std::ldexp(1.0, m);
  if (z.r_prime == r) row.rate1 = z.s / n;
  row.rate2 = (z.s + z.t) / n;
  row.lee_distance = erm_lee_distance(r, m);
  row.euclid_sq_distance = erm_euclid_sq_distance(r, m, h);
  return row;
}

/// Coding options with PMEPR at most `pmepr_bound` = 2^{k+1}: every
/// Construction 2 parameter set with m in [k+3, max_m] and h in [1, max_h].
inline std::vector<TableRow> coding_options(int pmepr_bound, int max_m = 6, int max_h = 3) {
  if (pmepr_bound < 2 || !detail::is_power_of_two(static_cast<std::uint64_t>(pmepr_bound)))
    throw ParameterError("PMEPR bound must be a power of two >= 2");
  const int k = detail::log2_exact(static_cast<std::uint64_t>(pmepr_bound)) - 1;
  std::vector<TableRow> rows;
  for (int m = k + 3; m <= max_m; ++m)
    for (int h = 1; h <= max_h; ++h) {
      const int lo = h == 1 ? 2 : 1, hi = h == 1 ? k + 2 : k + 1;
      for (int r = lo; r <= hi; ++r) rows.push_back(table_row(m, h, r, k));
    }
  return rows;
}

}  // namespace ermcode
