#include <gtest/gtest.h>

#include <random>

#include "ermcode/correlation.hpp"
#include "oracles.hpp"

using namespace ermcode;
using F = GeneralizedBooleanFunction;

namespace {

F example_function() {
  return F::from_terms(4, 2, {{0b0111, 1}, {0b1011, 1}, {0b0101, 1}, {0b1010, 1}, {0b1100, 1}});
}

std::vector<Complex> random_sequence(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> a(n);
  for (auto& z : a) z = {g(rng), g(rng)};
  return a;
}

}  // namespace

TEST(Correlation, MatchesDoubleLoop) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 17;
    const auto a = random_sequence(n, rng), b = random_sequence(n, rng);
    for (std::int64_t l = -static_cast<std::int64_t>(n) - 1; l <= static_cast<std::int64_t>(n) + 1; ++l)
      EXPECT_LT(std::abs(cross_correlation(a, b, l) - oracle::correlation(a, b, l)), 1e-9);
  }
}

TEST(Correlation, ConjugateSymmetry) {
  std::mt19937_64 rng(2);
  const auto a = random_sequence(12, rng), b = random_sequence(12, rng);
  for (std::int64_t l = -11; l < 12; ++l)
    EXPECT_LT(std::abs(cross_correlation(a, b, l) - std::conj(cross_correlation(b, a, -l))), 1e-12);
}

TEST(Correlation, LengthMismatchThrows) {
  const std::vector<Complex> a(3), b(4);
  EXPECT_THROW(cross_correlation(a, b, 0), ParameterError);
}

TEST(Correlation, TrivialGolayPair) {
  const ComplementarySet set({PolyphaseVector(ZqWord(2, {0, 0})), PolyphaseVector(ZqWord(2, {0, 1}))});
  const auto rep = is_complementary_set(set);
  EXPECT_TRUE(rep.complementary);
  EXPECT_EQ(rep.max_residual, 0.0);
}

TEST(Correlation, NonComplementaryDetected) {
  const ComplementarySet set({PolyphaseVector(ZqWord(2, {0, 0})), PolyphaseVector(ZqWord(2, {0, 0}))});
  const auto rep = is_complementary_set(set);
  EXPECT_FALSE(rep.complementary);
  EXPECT_NEAR(rep.max_residual, 2.0, 1e-12);
  EXPECT_EQ(rep.worst_shift, 1);
}

TEST(Correlation, SetRequiresEqualLengths) {
  EXPECT_THROW(ComplementarySet({PolyphaseVector(ZqWord(2, {0, 0})), PolyphaseVector(ZqWord(2, {0, 0, 0, 0}))}),
               ParameterError);
  EXPECT_THROW(ComplementarySet({}), ParameterError);
}

TEST(Correlation, ExpansionIdentity) {
  const std::vector<int> none;
  EXPECT_EQ(expansion_identity_residual(example_function(), none, 3), 0.0);
  const std::vector<int> x0{0};
  for (std::int64_t l = -15; l < 16; ++l) EXPECT_LT(expansion_identity_residual(example_function(), x0, l), 1e-9);
  std::mt19937_64 rng(4);
  const std::vector<int> x13{1, 3};
  for (int t = 0; t < 20; ++t) {
    const F f = oracle::random_function(5, 4, rng);
    const auto l = static_cast<std::int64_t>(rng() % 63) - 31;
    EXPECT_LT(expansion_identity_residual(f, x13, l), 1e-9);
  }
}

TEST(Envelope, AllOnesPeaksAtN) {
  for (std::size_t n : {1u, 2u, 8u, 32u}) {
    const auto r = pmepr(ZqWord::zeros(4, n));
    EXPECT_NEAR(r.pmepr, static_cast<double>(n), 1e-9);
    EXPECT_EQ(r.oversampling, kDefaultOversampling);
  }
}

TEST(Envelope, ExampleFunction) {
  // Psi(f) has weight 4, so the sum at theta = 0 is 8 and |8|^2 / 16 = 4 meets the bound
  const auto r = pmepr(to_zq_word(example_function()));
  EXPECT_NEAR(r.pmepr, 4.0, 1e-9);
  EXPECT_EQ(r.argmax_theta, 0.0);
}

TEST(Envelope, GridMatchesDirectSum) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 5; ++t) {
    const F f = oracle::random_function(4, 8, rng);
    const ZqWord w = to_zq_word(f);
    EXPECT_NEAR(pmepr(w, {0.0, 8}).pmepr, oracle::pmepr(oracle::polyphase(w.entries(), 8), 8), 1e-9);
    EnvelopeSampler s(w.size(), {0.0, 8});
    const auto power = s.power(PolyphaseVector(w).entries());
    for (std::size_t j = 0; j < power.size(); j += 7)
      EXPECT_NEAR(power[j], std::norm(envelope(w, static_cast<double>(j) / power.size())), 1e-9);
  }
}

TEST(Envelope, CarrierOffsetDoesNotChangePmepr) {
  std::mt19937_64 rng(8);
  const ZqWord w = to_zq_word(oracle::random_function(5, 4, rng));
  EXPECT_NEAR(pmepr(w, {0.0, 16}).pmepr, pmepr(w, {0.37, 16}).pmepr, 1e-9);
  EXPECT_NEAR(std::abs(envelope(w, 0.123, {0.0, 2})), std::abs(envelope(w, 0.123, {0.8, 2})), 1e-9);
}

TEST(Envelope, RejectsBadConfig) {
  EXPECT_THROW(pmepr(ZqWord::zeros(2, 4), {0.0, 1}), ParameterError);
  EXPECT_THROW(pmepr(ZqWord::zeros(2, 4), {-1.0, 4}), ParameterError);
}
