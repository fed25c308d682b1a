#pragma once

// Path graphs of quadratic forms, Golay pairs, complementary sets built from
// functions whose restrictions are paths, and the coset representatives R(k,m,h).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ermcode/correlation.hpp"
#include "ermcode/errors.hpp"
#include "ermcode/gbf.hpp"

namespace ermcode {

using BigCount = boost::multiprecision::cpp_int;

struct PathAnalysis {
  bool is_quadratic = false;
  bool is_path = false;
  std::map<std::pair<int, int>, Residue> edge_labels;  ///< (j, k), j < k -> b_jk
  std::pair<int, int> end_vertices{-1, -1};             ///< ascending; equal for a lone vertex
  std::vector<int> visiting_order;                      ///< starts at the smaller end vertex
};

/// Reads the labelled graph G(f) off the ANF. Vertices are the variables not
/// listed in `excluded`; f must not involve an excluded variable to be a path.
inline PathAnalysis analyze_graph(const GeneralizedBooleanFunction& f, std::span<const int> excluded = {}) {
  PathAnalysis out;
  const int m = f.num_variables();
  const Residue q = f.modulus();
  Mask excluded_mask = 0;
  for (int v : excluded) {
    if (v < 0 || v >= m) throw ParameterError("excluded vertex x" + std::to_string(v) + " out of range");
    excluded_mask |= Mask{1} << v;
  }

  out.is_quadratic = f.degree() <= 2;
  if (!out.is_quadratic) return out;
  for (const auto& [mask, c] : f.anf())
    if (std::popcount(mask) == 2) {
      const int j = std::countr_zero(mask);
      const int k = 31 - std::countl_zero(mask);
      out.edge_labels[{j, k}] = c;
    }

  if (q % 2 != 0 || (f.support_variables() & excluded_mask) != 0) return out;

  std::vector<int> vertices;
  for (int v = 0; v < m; ++v)
    if (!((excluded_mask >> v) & 1U)) vertices.push_back(v);
  if (vertices.empty()) return out;

  if (vertices.size() == 1) {
    if (out.edge_labels.empty()) {
      out.is_path = true;
      out.end_vertices = {vertices[0], vertices[0]};
      out.visiting_order = vertices;
    }
    return out;
  }

  if (out.edge_labels.size() != vertices.size() - 1) return out;
  std::map<int, std::vector<int>> adjacency;
  for (const auto& [edge, label] : out.edge_labels) {
    if (label != q / 2) return out;
    adjacency[edge.first].push_back(edge.second);
    adjacency[edge.second].push_back(edge.first);
  }
  std::vector<int> ends;
  for (int v : vertices) {
    const std::size_t deg = adjacency.count(v) ? adjacency[v].size() : 0;
    if (deg == 0 || deg > 2) return out;
    if (deg == 1) ends.push_back(v);
  }
  if (ends.size() != 2) return out;

  // walk from the smaller end; n-1 edges with max degree 2 and two ends is a
  // path iff the walk reaches every vertex
  std::vector<int> order{ends[0]};
  int prev = -1, cur = ends[0];
  while (order.size() < vertices.size()) {
    int next = -1;
    for (int w : adjacency[cur])
      if (w != prev) next = w;
    if (next < 0) break;
    prev = cur;
    cur = next;
    order.push_back(cur);
  }
  if (order.size() != vertices.size() || order.back() != ends[1]) return out;

  out.is_path = true;
  out.end_vertices = {ends[0], ends[1]};
  out.visiting_order = std::move(order);
  return out;
}

namespace detail {

inline std::vector<int> complement_vertices(int m, std::span<const int> variables) {
  std::vector<int> rest;
  for (int v = 0; v < m; ++v)
    if (std::find(variables.begin(), variables.end(), v) == variables.end()) rest.push_back(v);
  return rest;
}

inline std::string assignment_string(const RestrictionSpec& spec) {
  std::string s;
  for (auto b : spec.assignment) s.push_back(b ? '1' : '0');
  return s.empty() ? "()" : s;
}

inline PathAnalysis require_path_restriction(const GeneralizedBooleanFunction& f, const RestrictionSpec& spec) {
  const GeneralizedBooleanFunction g = restrict(f, spec);
  PathAnalysis pa = analyze_graph(g, spec.variables);
  if (!pa.is_quadratic)
    throw HypothesisError("restriction at d = " + assignment_string(spec) + " is not quadratic");
  if (!pa.is_path)
    throw HypothesisError("graph of the restriction at d = " + assignment_string(spec) + " is not a path in " +
                          std::to_string(f.num_variables() - static_cast<int>(spec.size())) + " vertices");
  return pa;
}

inline void require_even_modulus(Residue q) {
  if (q % 2 != 0) throw HypothesisError("construction needs even q, got q = " + std::to_string(q));
}

}  // namespace detail

/// F|_{x=d} and F'|_{x=d} with F' = Psi(f + (q/2) x_a + c'), a an end vertex of
/// the path G(f|_{x=d}). Defaults to the smaller end vertex and c' = 0.
inline std::pair<PolyphaseVector, PolyphaseVector> golay_pair(const GeneralizedBooleanFunction& f,
                                                              const RestrictionSpec& spec,
                                                              std::optional<int> end_vertex = std::nullopt,
                                                              Residue offset = 0) {
  detail::require_even_modulus(f.modulus());
  spec.validate(f.num_variables());
  if (static_cast<int>(spec.size()) >= f.num_variables()) throw HypothesisError("need m > k");
  const PathAnalysis pa = detail::require_path_restriction(f, spec);
  const int a = end_vertex.value_or(pa.end_vertices.first);
  if (a != pa.end_vertices.first && a != pa.end_vertices.second)
    throw HypothesisError("x" + std::to_string(a) + " is not an end vertex of the path");
  const int m = f.num_variables();
  const Residue q = f.modulus();
  const GeneralizedBooleanFunction partner =
      f + GeneralizedBooleanFunction::monomial(m, q, Mask{1} << a, q / 2) + GeneralizedBooleanFunction::constant(m, q, offset);
  return {restricted_polyphase(f, spec), restricted_polyphase(partner, spec)};
}

/// The 2^{k+1} functions f + (q/2) sum_a c_a x_{j_a} + (q/2) c' e, with
/// e = sum_d x_{a_d} prod_a x_{j_a}^{d_a} (1 - x_{j_a})^{1 - d_a}.
///
/// Assignments d are indexed by integers with d_a = bit a. Members are ordered
/// lexicographically in (c, c'), c read as a big-endian bit word, so
/// members[0] is f itself.
struct ComplementarySetWitness {
  GeneralizedBooleanFunction base;
  std::vector<int> variables;
  std::vector<int> end_vertex_choice;  ///< a_d, indexed by d
  GeneralizedBooleanFunction selector;  ///< e
  std::vector<GeneralizedBooleanFunction> members;

  std::size_t k() const { return variables.size(); }

  static std::size_t member_index(std::uint64_t c_big_endian, unsigned c_prime) {
    return static_cast<std::size_t>((c_big_endian << 1) | c_prime);
  }

  std::vector<PolyphaseVector> sequences() const {
    std::vector<PolyphaseVector> out;
    out.reserve(members.size());
    for (const auto& g : members) out.push_back(to_polyphase(g));
    return out;
  }

  ComplementarySet as_set() const { return ComplementarySet(sequences()); }
};

/// Builds the witness set containing Psi(f). Every restriction f|_{x=d} must be
/// quadratic with a path graph on the m - k free vertices. `end_vertices`, when
/// given, overrides a_d (indexed by d); otherwise the smaller end is used.
inline ComplementarySetWitness build_complementary_set(const GeneralizedBooleanFunction& f,
                                                       std::span<const int> variables,
                                                       std::span<const int> end_vertices = {}) {
  const int m = f.num_variables();
  const Residue q = f.modulus();
  detail::require_even_modulus(q);
  validate_variable_list(variables, m);
  const std::size_t k = variables.size();
  if (static_cast<int>(k) >= m) throw HypothesisError("need m > k");
  const std::size_t count = std::size_t{1} << k;
  if (!end_vertices.empty() && end_vertices.size() != count)
    throw ParameterError("need one end-vertex choice per assignment");

  ComplementarySetWitness w{f, std::vector<int>(variables.begin(), variables.end()), {}, GeneralizedBooleanFunction(m, q), {}};
  std::vector<RestrictedPiece> selector_pieces;
  for (std::size_t d = 0; d < count; ++d) {
    const RestrictionSpec spec = RestrictionSpec::from_index(w.variables, d);
    const PathAnalysis pa = detail::require_path_restriction(f, spec);
    int a = pa.end_vertices.first;
    if (!end_vertices.empty()) {
      a = end_vertices[d];
      if (a != pa.end_vertices.first && a != pa.end_vertices.second)
        throw HypothesisError("x" + std::to_string(a) + " is not an end vertex of the path at d = " +
                              detail::assignment_string(spec));
    }
    w.end_vertex_choice.push_back(a);
    selector_pieces.push_back({spec.assignment, GeneralizedBooleanFunction::monomial(m, q, Mask{1} << a)});
  }
  w.selector = reconstruct(selector_pieces, w.variables);

  const GeneralizedBooleanFunction half_e = w.selector.scaled(q / 2);
  w.members.reserve(2 * count);
  for (std::uint64_t c = 0; c < count; ++c) {
    GeneralizedBooleanFunction g = f;
    for (std::size_t a = 0; a < k; ++a)
      if ((c >> (k - 1 - a)) & 1U) g = g + GeneralizedBooleanFunction::monomial(m, q, Mask{1} << w.variables[a], q / 2);
    w.members.push_back(g);
    w.members.push_back(g + half_e);
  }
  return w;
}

/// Permutation table for one member of R(k,m,h): perms[d] = pi_d, a
/// permutation of {0, ..., m-k-1}, with d_j = bit j of the index.
struct CosetRepSpec {
  int m = 0;
  int k = 0;
  int h = 1;
  std::vector<std::vector<int>> perms;

  void validate() const {
    if (h < 1 || h > 30) throw ParameterError("h must lie in [1, 30]");
    if (k < 0 || m - k < 2) throw ParameterError("coset representatives need k >= 0 and m - k >= 2");
    detail::check_variable_count(m);
    if (perms.size() != (std::size_t{1} << k))
      throw ParameterError("need 2^k = " + std::to_string(std::size_t{1} << k) + " permutations, got " +
                           std::to_string(perms.size()));
    for (const auto& p : perms) {
      std::vector<int> sorted = p;
      std::sort(sorted.begin(), sorted.end());
      std::vector<int> expected(static_cast<std::size_t>(m - k));
      std::iota(expected.begin(), expected.end(), 0);
      if (sorted != expected)
        throw ParameterError("each pi_d must be a permutation of {0, ..., " + std::to_string(m - k - 1) + "}");
    }
  }

  static CosetRepSpec identity(int m, int k, int h) {
    std::vector<int> id(static_cast<std::size_t>(std::max(m - k, 0)));
    std::iota(id.begin(), id.end(), 0);
    return {m, k, h, std::vector<std::vector<int>>(std::size_t{1} << std::max(k, 0), id)};
  }
};

/// 2^{h-1} sum_d sum_i x_{pi_d(i)} x_{pi_d(i+1)} prod_j x_{m-k+j}^{d_j} (1 - x_{m-k+j})^{1 - d_j}.
inline GeneralizedBooleanFunction coset_rep(const CosetRepSpec& spec) {
  spec.validate();
  const int m = spec.m, k = spec.k;
  const Residue q = Residue{1} << spec.h;
  const std::int64_t half = std::int64_t{1} << (spec.h - 1);
  std::vector<int> tail(static_cast<std::size_t>(k));
  std::iota(tail.begin(), tail.end(), m - k);
  std::vector<RestrictedPiece> pieces;
  for (std::size_t d = 0; d < spec.perms.size(); ++d) {
    const auto& p = spec.perms[d];
    std::vector<std::pair<Mask, std::int64_t>> terms;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) terms.emplace_back((Mask{1} << p[i]) | (Mask{1} << p[i + 1]), half);
    pieces.push_back({RestrictionSpec::from_index(tail, d).assignment, GeneralizedBooleanFunction::from_terms(m, q, terms)});
  }
  return reconstruct(pieces, tail);
}

/// Permutations of {0, ..., n-1} with pi(0) < pi(n-1), in lexicographic order:
/// one representative per path up to reversal.
inline std::vector<std::vector<int>> canonical_paths(int n) {
  std::vector<std::vector<int>> out;
  if (n < 1) return out;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    if (n == 1 || p.front() < p.back()) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline BigCount factorial(int n) {
  BigCount r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// floor(log2 v) for v >= 1.
inline int floor_log2(const BigCount& v) {
  if (v < 1) throw ParameterError("floor_log2 of a non-positive count");
  return static_cast<int>(boost::multiprecision::msb(v));
}

namespace detail {

inline void check_rep_hypotheses(int m, int k, int h, int r) {
  if (h < 1 || h > 30) throw ParameterError("h must lie in [1, 30]");
  if (k < 0 || m - k <= 1) throw HypothesisError("need m - k > 1");
  detail::check_variable_count(m);
  if (r <= 2 - h) throw HypothesisError("need r > 2 - h");
}

inline int free_slot_exponent(int k, int h, int r) { return std::min(r + h - 3, k); }

}  // namespace detail

/// [(m-k)!/2]^{2^{min(r+h-3, k)}}: number of R(k,m,h) words of effective
/// degree at most r produced by enumerate_reps.
inline BigCount rep_count(int m, int k, int h, int r) {
  detail::check_rep_hypotheses(m, k, h, r);
  const BigCount paths = factorial(m - k) / 2;
  return boost::multiprecision::pow(paths, 1U << detail::free_slot_exponent(k, h, r));
}

struct RepEnumeration {
  std::vector<GeneralizedBooleanFunction> reps;
  std::vector<CosetRepSpec> specs;
  BigCount predicted_count;
};

/// The index-th representative in canonical order. Slot s < 2^l (l = min(r+h-3, k))
/// holds a canonical path; pi_d uses the slot given by the low l bits of d,
/// so the function does not involve x_{m-k+l}, ..., x_{m-1}. Slot 0 is the
/// least significant digit of the index in base (m-k)!/2.
inline CosetRepSpec rep_spec_at(int m, int k, int h, int r, std::uint64_t index,
                                const std::vector<std::vector<int>>& paths) {
  const int l = detail::free_slot_exponent(k, h, r);
  const std::size_t slots = std::size_t{1} << l;
  std::vector<std::vector<int>> slot_perm(slots);
  for (std::size_t s = 0; s < slots; ++s) {
    slot_perm[s] = paths[index % paths.size()];
    index /= paths.size();
  }
  CosetRepSpec spec{m, k, h, {}};
  const std::size_t count = std::size_t{1} << k;
  for (std::size_t d = 0; d < count; ++d) spec.perms.push_back(slot_perm[d & (slots - 1)]);
  return spec;
}

/// Distinct members of R(k,m,h) with effective degree <= r. `limit` caps the
/// number materialized (the first `limit` in canonical order).
inline RepEnumeration enumerate_reps(int m, int k, int h, int r, std::optional<std::uint64_t> limit = std::nullopt,
                                     std::uint64_t budget = std::uint64_t{1} << 20) {
  RepEnumeration out;
  out.predicted_count = rep_count(m, k, h, r);
  BigCount want = out.predicted_count;
  if (limit && BigCount(*limit) < want) want = *limit;
  if (want > budget)
    throw BudgetError("enumerating " + want.str() + " representatives exceeds the budget of " + std::to_string(budget));
  const auto total = static_cast<std::uint64_t>(want);
  const auto paths = canonical_paths(m - k);
  out.reps.reserve(total);
  out.specs.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) {
    out.specs.push_back(rep_spec_at(m, k, h, r, i, paths));
    out.reps.push_back(coset_rep(out.specs.back()));
  }
  return out;
}

struct GolayCensus {
  int m = 0;
  Residue q = 2;
  std::uint64_t functions = 0;      ///< path forms times affine parts
  std::uint64_t pairs_checked = 0;  ///< (function, end vertex, offset) triples
  BigCount expected;                ///< (m!/2) q^{m+1}
  double max_residual = 0.0;
  double max_pmepr = 0.0;
  std::vector<ZqWord> sequences;  ///< distinct psi(f), sorted
};

/// Every (q/2) sum_i x_{pi(i)} x_{pi(i+1)} + sum_i c_i x_i + c over paths up to
/// reversal, each checked against its partners for both end vertices and every
/// constant offset.
inline GolayCensus golay_census(int m, Residue q, int oversampling = kDefaultOversampling,
                                std::uint64_t budget = std::uint64_t{1} << 22) {
  detail::check_variable_count(m);
  if (m < 2) throw ParameterError("census needs m >= 2");
  if (q < 2) throw ParameterError("modulus must be at least 2");
  detail::require_even_modulus(q);
  GolayCensus out;
  out.m = m;
  out.q = q;
  out.expected = factorial(m) / 2 * boost::multiprecision::pow(BigCount(q), static_cast<unsigned>(m + 1));
  if (out.expected * 2 * q > budget)
    throw BudgetError("census of " + out.expected.str() + " sequences exceeds the budget");
  const auto affine_count = static_cast<std::uint64_t>(boost::multiprecision::pow(BigCount(q), static_cast<unsigned>(m + 1)));
  const RestrictionSpec whole{};
  EnvelopeSampler sampler(std::size_t{1} << m, {0.0, oversampling});
  std::set<std::vector<Residue>> seen;
  for (const auto& path : canonical_paths(m)) {
    std::vector<std::pair<Mask, std::int64_t>> quad;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) quad.emplace_back((Mask{1} << path[i]) | (Mask{1} << path[i + 1]), q / 2);
    const auto form = GeneralizedBooleanFunction::from_terms(m, q, quad);
    for (std::uint64_t a = 0; a < affine_count; ++a) {
      GeneralizedBooleanFunction f = form;
      std::uint64_t rest = a;
      for (int v = 0; v <= m; ++v, rest /= q) {
        const auto c = static_cast<std::int64_t>(rest % q);
        if (c == 0) continue;
        f = f + (v == m ? GeneralizedBooleanFunction::constant(m, q, c)
                        : GeneralizedBooleanFunction::monomial(m, q, Mask{1} << v, c));
      }
      ++out.functions;
      const ZqWord word = to_zq_word(f);
      out.max_pmepr = std::max(out.max_pmepr, sampler.measure(word).pmepr);
      seen.insert(word.entries());
      for (int end : {path.front(), path.back()})
        for (Residue offset = 0; offset < q; ++offset) {
          const auto [first, second] = golay_pair(f, whole, end, offset);
          out.max_residual = std::max(out.max_residual, is_complementary_set(ComplementarySet({first, second})).max_residual);
          ++out.pairs_checked;
        }
    }
  }
  for (const auto& e : seen) out.sequences.emplace_back(q, e);
  return out;
}

}  // namespace ermcode
