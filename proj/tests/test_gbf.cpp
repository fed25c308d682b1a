#include <gtest/gtest.h>

#include <random>

#include "ermcode/gbf.hpp"
#include "oracles.hpp"

using namespace ermcode;
using F = GeneralizedBooleanFunction;

namespace {

// x0x1x2 + x0x1x3 + x0x2 + x1x3 + x2x3 over Z_2
F example_function() {
  return F::from_terms(4, 2, {{0b0111, 1}, {0b1011, 1}, {0b0101, 1}, {0b1010, 1}, {0b1100, 1}});
}

}  // namespace

TEST(Gbf, CoefficientsReducedAndMerged) {
  const F a = F::from_terms(2, 4, {{0b11, 5}});
  EXPECT_EQ(a.anf().size(), 1u);
  EXPECT_EQ(a.coefficient(0b11), 1u);

  const F b = F::from_terms(2, 2, {{0b01, 1}, {0b01, 1}});
  EXPECT_TRUE(b.anf().empty());

  EXPECT_EQ(example_function().anf().size(), 5u);
}

TEST(Gbf, RejectsBadInput) {
  EXPECT_THROW(F::from_terms(2, 4, {{0b100, 1}}), ParameterError);
  EXPECT_THROW(F(0, 2), ParameterError);
  EXPECT_THROW(F(2, 1), ParameterError);
}

TEST(Gbf, EvaluateMatchesIndexConvention) {
  // f = x0 + 2 x1 over Z_4: index i = i_0 + 2 i_1
  const F f = F::from_terms(2, 4, {{0b01, 1}, {0b10, 2}});
  const std::vector<std::uint8_t> p{1, 0};
  EXPECT_EQ(f.evaluate(p), 1u);
  EXPECT_EQ(to_zq_word(f).entries(), (std::vector<Residue>{0, 1, 2, 3}));
  EXPECT_THROW(f.evaluate(std::vector<std::uint8_t>{1}), ParameterError);
}

TEST(Gbf, ValuesAgreeWithDirectSummation) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 7);
    const Residue q = Residue{2} << (rng() % 4);
    std::vector<std::pair<Mask, std::int64_t>> terms;
    for (int t = 0; t < 6; ++t) terms.emplace_back(static_cast<Mask>(rng() % (1U << m)), static_cast<std::int64_t>(rng() % 50) - 25);
    const F f = F::from_terms(m, q, terms);
    EXPECT_EQ(to_zq_word(f).entries(), oracle::values_from_function(f));
  }
}

TEST(Gbf, FromValuesInvertsEvaluation) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 6);
    const Residue q = 2 + static_cast<Residue>(rng() % 9);
    std::vector<Residue> v(std::size_t{1} << m);
    for (auto& e : v) e = static_cast<Residue>(rng() % q);
    const F f = F::from_values(ZqWord(q, v));
    EXPECT_EQ(to_zq_word(f).entries(), v);
    const auto c = oracle::anf_from_values(v, q);
    for (std::size_t s = 0; s < c.size(); ++s) EXPECT_EQ(f.coefficient(static_cast<Mask>(s)), c[s]);
  }
}

TEST(Gbf, Degrees) {
  EXPECT_EQ(example_function().degree(), 3);
  const F g = F::from_terms(3, 8, {{0b111, 4}, {0b010, 1}});
  EXPECT_EQ(g.degree(), 3);
  EXPECT_EQ(effective_degree(g), 1);
  EXPECT_EQ(effective_degree(F(3, 8)), kBottomDegree);
  EXPECT_EQ(effective_degree(F::constant(3, 8, 4)), -2);
  EXPECT_EQ(effective_degree(F::from_terms(2, 2, {{0b11, 1}})), 2);
  EXPECT_THROW(effective_degree(F(2, 6)), ParameterError);
}

TEST(Gbf, EffectiveDegreeMatchesOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 5);
    const int h = 1 + static_cast<int>(rng() % 4);
    const F f = oracle::random_function(m, Residue{1} << h, rng);
    EXPECT_EQ(effective_degree(f), oracle::effective_degree(to_zq_word(f).entries(), h));
  }
}

TEST(Gbf, RestrictionOfExample) {
  const F f = example_function();
  const F at0 = restrict(f, {{0}, {0}});
  const F at1 = restrict(f, {{0}, {1}});
  EXPECT_EQ(at0, F::from_terms(4, 2, {{0b1010, 1}, {0b1100, 1}}));
  EXPECT_EQ(at1, F::from_terms(4, 2, {{0b0110, 1}, {0b1100, 1}, {0b0100, 1}}));
  EXPECT_FALSE(at1.depends_on(0));
}

TEST(Gbf, RestrictionMatchesValues) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 5);
    const F f = oracle::random_function(m, 4, rng);
    const int v = static_cast<int>(rng() % m);
    const std::uint8_t d = rng() & 1U;
    const F g = restrict(f, {{v}, {d}});
    for (std::uint64_t x = 0; x < (1ULL << m); ++x)
      if (((x >> v) & 1U) == d) {
        EXPECT_EQ(g.at_index(x), f.at_index(x));
      }
  }
}

TEST(Gbf, RestrictionSpecValidation) {
  const F f = example_function();
  EXPECT_THROW(restrict(f, {{0, 0}, {0, 1}}), ParameterError);
  EXPECT_THROW(restrict(f, {{4}, {0}}), ParameterError);
  EXPECT_THROW(restrict(f, {{1}, {2}}), ParameterError);
  EXPECT_THROW(restrict(f, {{1, 2}, {0}}), ParameterError);
}

TEST(Gbf, ReconstructRoundTrip) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 4);
    const F f = oracle::random_function(m, 8, rng);
    std::vector<int> vars{0, m - 1};
    if (rng() & 1U) vars = {static_cast<int>(rng() % m)};
    std::vector<RestrictedPiece> pieces;
    for (std::uint64_t d = 0; d < (1ULL << vars.size()); ++d) {
      const auto spec = RestrictionSpec::from_index(vars, d);
      pieces.push_back({spec.assignment, restrict(f, spec)});
    }
    EXPECT_EQ(reconstruct(pieces, vars), f);
  }
}

TEST(Gbf, ReconstructRejectsBadPieces) {
  const F g(3, 2);
  const std::vector<int> vars{0};
  std::vector<RestrictedPiece> missing{{{0}, g}};
  EXPECT_THROW(reconstruct(missing, vars), ParameterError);
  std::vector<RestrictedPiece> dup{{{0}, g}, {{0}, g}};
  EXPECT_THROW(reconstruct(dup, vars), ParameterError);
  std::vector<RestrictedPiece> dependent{{{0}, F::monomial(3, 2, 0b001)}, {{1}, g}};
  EXPECT_THROW(reconstruct(dependent, vars), ParameterError);
}

TEST(Gbf, RestrictedPolyphaseSupport) {
  const F f = example_function();
  const PolyphaseVector p = restricted_polyphase(f, {{0}, {1}});
  EXPECT_EQ(p.support_size(), 8u);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i & 1U)
      EXPECT_NEAR(std::abs(p[i]), 1.0, 1e-12);
    else
      EXPECT_EQ(p[i], Complex(0.0, 0.0));
  }
}

TEST(Gbf, UnitRootExactAtQuarterTurns) {
  EXPECT_EQ(unit_root(4, 1), Complex(0.0, 1.0));
  EXPECT_EQ(unit_root(2, 1), Complex(-1.0, 0.0));
  EXPECT_EQ(unit_root(8, 6), Complex(0.0, -1.0));
}

TEST(Gbf, ZqWordValidation) {
  EXPECT_THROW(ZqWord(4, {0, 1, 2}), ParameterError);
  EXPECT_THROW(ZqWord(4, {0, 4}), ParameterError);
  const ZqWord a(4, {1, 3}), b(4, {3, 3});
  EXPECT_EQ((a + b).entries(), (std::vector<Residue>{0, 2}));
  EXPECT_EQ((a - b).entries(), (std::vector<Residue>{2, 0}));
}
