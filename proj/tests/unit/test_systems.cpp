#include <gtest/gtest.h>

#include <cmath>

#include "ergodesk/mixing.hpp"
#include "ergodesk/systems.hpp"
#include "gen.hpp"

using namespace ergodesk;

namespace {

std::vector<SystemSpec> four_systems() {
  auto g = RotationNumber::silver();
  auto p = BernoulliSpec::make({0.3, 0.7});
  return {SystemSpec::rotation(g), SystemSpec::skew(g), SystemSpec::bernoulli(p), SystemSpec::product(g, p)};
}

// A random test set fitting the system.
TestSet random_set(const SystemSpec& s, gen::Gen& g) {
  double a = g.real(0, 0.8);
  double b = a + g.real(0.05, 1.0 - a);
  if (b > 1.0) b = 1.0;
  auto cyl = [&] {
    CylinderSet c;
    std::int64_t pos = g.integer(-3, 0);
    int n = static_cast<int>(g.integer(1, 3));
    for (int j = 0; j < n; ++j) {
      c.constraints.push_back({pos, g.integer(0, 1) ? 1 : -1});
      pos += g.integer(1, 3);
    }
    return c;
  };
  switch (s.kind()) {
    case SystemKind::rotation:
      return UInterval{a, b};
    case SystemKind::skew: {
      double c = g.real(0, 0.7);
      return TorusRect{a, b, c, c + 0.3};
    }
    case SystemKind::bernoulli:
      return CylinderTest{cyl()};
    case SystemKind::product:
      return ProductTest{UInterval{a, b}, cyl()};
  }
  return UInterval{};
}

}  // namespace

TEST(Systems, SpecValidation) {
  EXPECT_THROW(BernoulliSpec::make({0.5, 0.6}).validate(), std::invalid_argument);
  EXPECT_THROW(BernoulliSpec::make({1.0}).validate(), std::invalid_argument);
  EXPECT_THROW(BernoulliSpec::make({0.5, 0.5}, {1, 1}).validate(), std::invalid_argument);
  EXPECT_NO_THROW(BernoulliSpec::make({0.25, 0.25, 0.5}).validate());
  EXPECT_EQ(BernoulliSpec::fair_coin().symbols, (std::vector<int>{-1, 1}));
  EXPECT_EQ(BernoulliSpec::make({0.2, 0.3, 0.5}).symbols, (std::vector<int>{0, 1, 2}));
  auto rot = SystemSpec::rotation(RotationNumber::silver());
  EXPECT_THROW(rot.shift(), std::logic_error);
  EXPECT_THROW(SystemSpec::bernoulli(BernoulliSpec::fair_coin()).gamma(), std::logic_error);
}

TEST(Systems, KindNames) {
  for (auto k : {SystemKind::rotation, SystemKind::skew, SystemKind::bernoulli, SystemKind::product}) {
    EXPECT_EQ(system_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(system_kind_from_string("baker"), std::invalid_argument);
}

TEST(Systems, SkewStepFormula) {
  auto g = RotationNumber::silver();
  TorusPoint p{0.3, 0.9};
  TorusPoint q = skew_step(p, g);
  EXPECT_NEAR(q.u, std::fmod(0.3 + g.value(), 1.0), 1e-15);
  EXPECT_NEAR(q.v, 0.2, 1e-15);
}

TEST(Systems, ShiftIsLeftShift) {
  SymbolWindow w{0, {1, -1, -1, 1}};
  SymbolWindow s = shift_step(w);
  for (std::int64_t i = s.first(); i < s.last(); ++i) EXPECT_EQ(s.at(i), w.at(i + 1));
  EXPECT_EQ(shift_inverse(s), w);
  EXPECT_EQ(shift_power(w, 3), shift_step(shift_step(shift_step(w))));
  EXPECT_THROW(w.at(4), std::out_of_range);
}

TEST(Systems, StepInverseRoundTrip) {
  gen::Gen g(21);
  Rng rng(21);
  for (const auto& s : four_systems()) {
    for (int t = 0; t < 200; ++t) {
      SystemPoint x = sample_point(s, rng, 8);
      SystemPoint y = inverse_step(s, step(s, x));
      if (auto* p = std::get_if<TorusPoint>(&x)) {
        auto q = std::get<TorusPoint>(y);
        EXPECT_NEAR(std::remainder(q.u - p->u, 1.0), 0.0, 1e-12);
        EXPECT_NEAR(std::remainder(q.v - p->v, 1.0), 0.0, 1e-12);
      } else if (auto* c = std::get_if<CirclePoint>(&x)) {
        EXPECT_NEAR(std::remainder(std::get<CirclePoint>(y).u - c->u, 1.0), 0.0, 1e-12);
      } else if (auto* w = std::get_if<SymbolWindow>(&x)) {
        EXPECT_EQ(std::get<SymbolWindow>(y), *w);
      } else {
        const auto& p0 = std::get<ProductPoint>(x);
        const auto& p1 = std::get<ProductPoint>(y);
        EXPECT_EQ(p1.w, p0.w);
        EXPECT_NEAR(std::remainder(p1.u - p0.u, 1.0), 0.0, 1e-12);
      }
      SystemPoint z = x;
      advance(s, z);
      EXPECT_EQ(z, step(s, x));
    }
  }
}

TEST(Systems, WrongPointShapeRejected) {
  auto rot = SystemSpec::rotation(RotationNumber::silver());
  EXPECT_THROW(step(rot, TorusPoint{}), std::invalid_argument);
}

TEST(Systems, RotationPowerMatchesIteration) {
  auto g = RotationNumber::silver();
  double u = 0.123;
  double it = u;
  for (int k = 1; k <= 1000; ++k) {
    it = rotation_step(it, g);
    if (k % 97 == 0) EXPECT_NEAR(std::remainder(rotation_power(u, g, k) - it, 1.0), 0.0, 1e-11);
  }
  EXPECT_NEAR(rotation_power(rotation_power(u, g, 12345), g, -12345), u, 1e-12);
}

// mu(S^-1 A) = mu(A): the fraction of sampled x with S x in A agrees with the
// exact measure of A within four standard deviations, for random sets.
TEST(Systems, MeasurePreservationFourSigma) {
  gen::Gen g(22);
  const int n = 40000;
  for (const auto& s : four_systems()) {
    for (int trial = 0; trial < 10; ++trial) {
      TestSet a = random_set(s, g);
      double mu = measure(s, a);
      Rng rng(1000 + trial);
      int fwd = 0, back = 0;
      for (int j = 0; j < n; ++j) {
        SystemPoint x = sample_point(s, rng, 8);
        fwd += contains(s, a, step(s, x)) ? 1 : 0;
        back += contains(s, a, inverse_step(s, x)) ? 1 : 0;
      }
      double sd = std::sqrt(mu * (1 - mu) / n);
      EXPECT_NEAR(fwd / double(n), mu, 4 * sd) << s.name() << " " << to_string(a);
      EXPECT_NEAR(back / double(n), mu, 4 * sd) << s.name() << " " << to_string(a);
    }
  }
}

TEST(Systems, CylinderMeasure) {
  auto p = BernoulliSpec::make({0.3, 0.7});
  CylinderSet c{{{0, -1}, {2, 1}, {5, 1}}};
  EXPECT_NEAR(cylinder_measure(p, c), 0.3 * 0.7 * 0.7, 1e-15);
  EXPECT_EQ(cylinder_measure(p, {}), 1.0);
  CylinderSet bad{{{2, 1}, {1, 1}}};
  EXPECT_THROW(bad.validate(p), std::invalid_argument);
  CylinderSet alien{{{0, 3}}};
  EXPECT_THROW(alien.validate(p), std::invalid_argument);
}
