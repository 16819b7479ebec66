#include <gtest/gtest.h>

#include <cmath>

#include "hillmono/cover_group.hpp"
#include "hillmono/errors.hpp"
#include "hillmono/numerics.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace hillmono;

namespace {

constexpr int kSamples = 1000;

void expect_mat_near(const Mat2& m, const Mat2& n, double tol) {
  EXPECT_LE(max_abs_diff(m, n), tol) << "[[" << m.a << ", " << m.b << "], [" << m.c << ", "
                                     << m.d << "]]";
}

const Mat2 kShear{1.0, two_pi, 0.0, 1.0};

}  // namespace

TEST(LeftIwasawa, Examples) {
  const CoverElement id = from_left_iwasawa({0.0, 1.0, 0.0});
  expect_mat_near(id.mat(), Mat2::identity(), 0.0);
  EXPECT_EQ(id.omega(), 0.0);

  const CoverElement quarter = from_left_iwasawa({half_pi, 1.0, 0.0});
  expect_mat_near(quarter.mat(), Mat2{0.0, 1.0, -1.0, 0.0}, 1e-15);
  EXPECT_EQ(quarter.omega(), -half_pi);

  const CoverElement full = from_left_iwasawa({two_pi, 1.0, 0.0});
  expect_mat_near(full.mat(), Mat2::identity(), 1e-15);
  EXPECT_EQ(full.omega(), -two_pi);
  // Independent dense unwrap along the same path.
  EXPECT_NEAR(oracles::column_winding_by_path(two_pi, 1.0, 0.0), -two_pi, 1e-12);
}

TEST(LeftIwasawa, RejectsNonpositiveRho) {
  EXPECT_THROW(from_left_iwasawa({0.0, 0.0, 0.0}), DomainError);
  EXPECT_THROW(from_left_iwasawa({0.0, -1.0, 0.0}), DomainError);
}

TEST(LeftIwasawa, InverseExamples) {
  const auto a = to_left_iwasawa(CoverElement::identity());
  EXPECT_EQ(a.theta, 0.0);
  EXPECT_NEAR(a.rho, 1.0, 1e-15);
  EXPECT_NEAR(a.nu, 0.0, 1e-15);

  const auto b = to_left_iwasawa(CoverElement({0.0, 1.0, -1.0, 0.0}, -half_pi));
  EXPECT_NEAR(b.theta, half_pi, 1e-15);
  EXPECT_NEAR(b.rho, 1.0, 1e-15);
  EXPECT_NEAR(b.nu, 0.0, 1e-15);

  const auto c = to_left_iwasawa(center_power(1));
  EXPECT_NEAR(c.theta, pi, 1e-15);
  EXPECT_NEAR(c.rho, 1.0, 1e-15);
  EXPECT_NEAR(c.nu, 0.0, 1e-15);
}

TEST(LeftIwasawa, ThetaIsMinusOmegaAndRoundTrips) {
  test_support::Rng rng(11);
  for (int i = 0; i < kSamples; ++i) {
    const auto x = test_support::random_left_coords(rng);
    const CoverElement g = from_left_iwasawa(x);
    const auto y = to_left_iwasawa(g);
    EXPECT_NEAR(y.theta, -g.omega(), 1e-12);
    const CoverElement h = from_left_iwasawa(y);
    expect_mat_near(h.mat(), g.mat(), 1e-10);
    EXPECT_NEAR(h.omega(), g.omega(), 1e-10);
    EXPECT_NEAR(oracles::column_winding_by_path(x.theta, x.rho, x.nu), g.omega(), 1e-9);
  }
}

TEST(RightIwasawa, Examples) {
  const CoverElement id = from_right_iwasawa({0.0, 1.0, 0.0});
  expect_mat_near(id.mat(), Mat2::identity(), 0.0);
  EXPECT_EQ(id.omega(), 0.0);

  const CoverElement full = from_right_iwasawa({two_pi, 1.0, 0.0});
  expect_mat_near(full.mat(), Mat2::identity(), 1e-15);
  EXPECT_NEAR(full.omega(), -two_pi, 1e-12);

  const auto r = to_right_iwasawa(center_power(2));
  EXPECT_NEAR(r.theta, two_pi, 1e-12);
  EXPECT_NEAR(r.rho, 1.0, 1e-15);
  EXPECT_NEAR(r.nu, 0.0, 1e-12);

  // The q = 0 monodromy [[1, 2 pi], [0, 1]] has right angle arctan(2 pi).
  const CoverElement shear(kShear, -std::atan(two_pi));
  const auto s = to_right_iwasawa(shear);
  EXPECT_NEAR(s.theta, std::atan(two_pi), 1e-14);
  const CoverElement back = from_right_iwasawa(s);
  expect_mat_near(back.mat(), kShear, 1e-12);
  EXPECT_NEAR(back.omega(), shear.omega(), 1e-12);
}

TEST(RightIwasawa, ExactWindowAtMultiplesOfPi) {
  for (int n = -4; n <= 4; ++n) {
    const auto r = to_right_iwasawa(center_power(n));
    EXPECT_EQ(r.theta, n * pi) << n;
  }
}

TEST(RightIwasawa, RoundTripAndWindowAgainstPathOracle) {
  test_support::Rng rng(12);
  for (int i = 0; i < kSamples; ++i) {
    const auto x = test_support::random_left_coords(rng);
    const CoverElement g = from_left_iwasawa(x);
    const auto r = to_right_iwasawa(g);
    const double oracle = oracles::right_angle_by_path(x.theta, x.rho, x.nu);
    EXPECT_NEAR(r.theta, oracle, 1e-9);
    EXPECT_EQ(std::floor(r.theta / pi), std::floor(-g.omega() / pi));
    const CoverElement h = from_right_iwasawa(r);
    expect_mat_near(h.mat(), g.mat(), 1e-9);
    EXPECT_NEAR(h.omega(), g.omega(), 1e-8);
  }
}

TEST(RightIwasawa, ChartRoundTripFromRightCoordinates) {
  test_support::Rng rng(13);
  for (int i = 0; i < kSamples; ++i) {
    const IwasawaCoords x{test_support::uniform(rng, -12.0, 12.0),
                          std::exp(test_support::uniform(rng, -2.0, 2.0)),
                          test_support::uniform(rng, -4.0, 4.0)};
    const CoverElement g = from_right_iwasawa(x);
    EXPECT_TRUE(g.is_valid());
    const auto y = to_right_iwasawa(g);
    EXPECT_NEAR(y.theta, x.theta, 1e-9);
    EXPECT_NEAR(y.rho, x.rho, 1e-9 * x.rho);
    EXPECT_NEAR(y.nu, x.nu, 1e-8);
  }
}

TEST(Cartan, ExamplesAndTrace) {
  const CoverElement id = from_cartan({0.0, 0.0, 0.0});
  expect_mat_near(id.mat(), Mat2::identity(), 0.0);
  EXPECT_EQ(id.omega(), 0.0);

  const CoverElement iota = from_cartan({pi, 0.0, 0.0});
  expect_mat_near(iota.mat(), center_power(1).mat(), 1e-15);
  EXPECT_NEAR(iota.omega(), -pi, 1e-15);

  test_support::Rng rng(14);
  for (int i = 0; i < kSamples; ++i) {
    const double alpha = test_support::uniform(rng, -12.0, 12.0);
    const double r = test_support::uniform(rng, 0.0, 2.5);
    const double eta = test_support::uniform(rng, -pi, pi);
    const CoverElement g = from_cartan({alpha, r * std::cos(eta), r * std::sin(eta)});
    EXPECT_NEAR(g.trace(), 2.0 * std::cos(alpha) * std::cosh(r), 1e-10);
    EXPECT_TRUE(g.is_valid());
    const auto c = to_cartan(g);
    EXPECT_NEAR(c.alpha, alpha, 1e-9);
    const CoverElement h = from_cartan(c);
    expect_mat_near(h.mat(), g.mat(), 1e-9);
    EXPECT_NEAR(h.omega(), g.omega(), 1e-8);
  }
}

TEST(PhiX, LimitsAtZero) {
  EXPECT_NEAR(phi_x_f1(0.0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(phi_x_f2(0.0), std::sqrt(2.0), 1e-15);
  // Continuity across the series switch.
  for (double x : {0.99e-4, 1.01e-4, -1.01e-4}) {
    EXPECT_NEAR(phi_x_f1(x), std::acos(std::exp(-x * x)) / std::abs(x), 1e-8);
    EXPECT_NEAR(phi_x_f2(x), std::acosh(std::exp(x * x)) / std::abs(x), 1e-8);
  }
}

TEST(PhiX, TraceIdentityAndCone) {
  const CoverElement id = phi_x(0.0, 0.0, 0.0);
  expect_mat_near(id.mat(), Mat2::identity(), 1e-15);
  EXPECT_NEAR(phi_x(1.0, 0.0, 0.0).trace(), 2.0 / std::exp(1.0), 1e-12);

  test_support::Rng rng(15);
  for (int i = 0; i < kSamples; ++i) {
    const double x = test_support::uniform(rng, -2.0, 2.0);
    const double y = test_support::uniform(rng, -1.5, 1.5);
    const double z = test_support::uniform(rng, -1.5, 1.5);
    const CoverElement g = phi_x(x, y, z);
    EXPECT_NEAR(g.trace(), 2.0 * std::exp(-x * x + y * y + z * z), 1e-10);
    EXPECT_EQ(classify(g).component_index, 0);

    const double eta = test_support::uniform(rng, -pi, pi);
    const double xc = std::abs(x) + 1e-3;
    EXPECT_NEAR(phi_x(xc, xc * std::cos(eta), xc * std::sin(eta)).trace(), 2.0, 1e-10);
  }
}

TEST(PhiY, TraceAndTheta) {
  EXPECT_NEAR(phi_y(half_pi, 1.0, 0.0).trace(), 0.0, 1e-15);
  const CoverElement g = phi_y(half_pi, 1.0, 2.0);
  EXPECT_NEAR(g.trace(), 2.0, 1e-15);
  EXPECT_THROW(phi_y(0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(phi_y(pi, 1.0, 1.0), DomainError);
  EXPECT_THROW(phi_y(1.0, 0.0, 1.0), DomainError);

  test_support::Rng rng(16);
  for (int i = 0; i < kSamples; ++i) {
    const int n = static_cast<int>(test_support::uniform(rng, -3.0, 3.0));
    const double theta = n * pi + test_support::uniform(rng, 0.05, pi - 0.05);
    const double rho = std::exp(test_support::uniform(rng, -1.0, 1.0));
    const double c = test_support::uniform(rng, -4.0, 4.0);
    const CoverElement h = phi_y(theta, rho, c);
    EXPECT_NEAR(h.trace(), c, 1e-10);
    EXPECT_NEAR(to_left_iwasawa(h).theta, theta, 1e-12);
  }
}

TEST(Schur, BaseTraceAndComponent) {
  const CoverElementPM base = from_schur(0.0, 1.0, 0.0);
  EXPECT_EQ(base.component(), Component::minus);
  expect_mat_near(base.mat(), Mat2::diag(-1.0, 1.0), 0.0);
  EXPECT_EQ(base.omega(), 0.0);
  EXPECT_THROW(from_schur(0.0, 0.0, 0.0), DomainError);

  test_support::Rng rng(17);
  for (int i = 0; i < kSamples; ++i) {
    const double alpha = test_support::uniform(rng, -10.0, 10.0);
    const double lambda = std::exp(test_support::uniform(rng, -2.0, 2.0));
    const double nu = test_support::uniform(rng, -3.0, 3.0);
    const CoverElementPM g = from_schur(alpha, lambda, nu);
    EXPECT_NEAR(g.trace(), lambda - 1.0 / lambda, 1e-10);
    EXPECT_NEAR(from_schur(alpha, 1.0, nu).trace(), 0.0, 1e-10);
    EXPECT_TRUE(g.is_valid());
    EXPECT_NEAR(g.mat().det(), -1.0, 1e-9);
  }
}

TEST(Multiply, CenterAndIdentity) {
  const CoverElement iota = center_power(1);
  const CoverElement iota2 = multiply(iota, iota);
  expect_mat_near(iota2.mat(), Mat2::identity(), 0.0);
  EXPECT_NEAR(iota2.omega(), -two_pi, 1e-14);
  EXPECT_EQ(center_power(0).omega(), 0.0);
  EXPECT_EQ(center_power(2).omega(), -two_pi);

  test_support::Rng rng(18);
  for (int i = 0; i < 200; ++i) {
    const CoverElement g = test_support::random_element(rng);
    const CoverElement h = multiply(g, CoverElement::identity());
    EXPECT_EQ(h.mat(), g.mat());
    EXPECT_NEAR(h.omega(), g.omega(), 1e-12);
    for (int n = -2; n <= 2; ++n) {
      const CoverElement k = multiply(center_power(n), g);
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      expect_mat_near(k.mat(), sign * g.mat(), 1e-12);
      EXPECT_NEAR(k.omega(), g.omega() - n * pi, 1e-9);
      const CoverElement kr = multiply(g, center_power(n));
      EXPECT_NEAR(kr.omega(), g.omega() - n * pi, 1e-9);
    }
  }
}

TEST(Multiply, HomomorphismCongruenceAndAssociativity) {
  test_support::Rng rng(19);
  for (int i = 0; i < 500; ++i) {
    const CoverElement a = test_support::random_element(rng);
    const CoverElement b = test_support::random_element(rng);
    const CoverElement c = test_support::random_element(rng);
    const CoverElement ab = multiply(a, b);
    expect_mat_near(ab.mat(), a.mat() * b.mat(), 0.0);
    EXPECT_LE(congruence_defect(ab.mat(), ab.omega()), 1e-7);
    const CoverElement l = multiply(ab, c);
    const CoverElement r = multiply(a, multiply(b, c));
    EXPECT_NEAR(l.omega(), r.omega(), 1e-8);
    // Composition matches concatenation of paths: theta_L adds for pure rotations.
    const CoverElement inv = inverse(a);
    const CoverElement e = multiply(a, inv);
    expect_mat_near(e.mat(), Mat2::identity(), 1e-8 * std::max(1.0, max_abs(a.mat()) * max_abs(a.mat())));
    EXPECT_NEAR(e.omega(), 0.0, 1e-8);
  }
}

TEST(Multiply, PlusMinusComponents) {
  const CoverElementPM R = CoverElementPM::reflection_base();
  const CoverElementPM RR = multiply(R, R);
  EXPECT_EQ(RR.component(), Component::plus);
  expect_mat_near(RR.mat(), Mat2::identity(), 0.0);
  EXPECT_NEAR(RR.omega(), 0.0, 1e-15);

  test_support::Rng rng(20);
  for (int i = 0; i < 300; ++i) {
    const CoverElement g = test_support::random_element(rng);
    // omega(R~ g) = -omega(g), and theta_L(R~^{-1} (R~ g)) recovers omega of R~ g negated.
    const CoverElementPM rg = multiply(R, CoverElementPM(g));
    EXPECT_EQ(rg.component(), Component::minus);
    EXPECT_NEAR(rg.omega(), -g.omega(), 1e-9);
    EXPECT_TRUE(rg.is_valid());
    const CoverElementPM back = multiply(R, rg);
    EXPECT_NEAR(back.omega(), g.omega(), 1e-9);

    const CoverElementPM s = from_schur(test_support::uniform(rng, -6.0, 6.0),
                                        std::exp(test_support::uniform(rng, -1.0, 1.0)),
                                        test_support::uniform(rng, -2.0, 2.0));
    const CoverElementPM sg = multiply(s, CoverElementPM(g));
    const CoverElementPM gs = multiply(CoverElementPM(g), s);
    EXPECT_TRUE(sg.is_valid());
    EXPECT_TRUE(gs.is_valid());
    const CoverElementPM ss = multiply(s, s);
    EXPECT_EQ(ss.component(), Component::plus);
    EXPECT_TRUE(ss.is_valid());
    const CoverElementPM si = inverse(s);
    const CoverElementPM e = multiply(s, si);
    EXPECT_NEAR(e.omega(), 0.0, 1e-8);
  }
}

TEST(ArgVariation, Examples) {
  EXPECT_EQ(arg_variation(CoverElement::identity(), {1.0, 0.0}), 0.0);
  EXPECT_NEAR(arg_variation(CoverElement::identity(), {0.6, 0.8}), 0.0, 1e-15);
  EXPECT_NEAR(arg_variation(center_power(2), {1.0, 0.0}), -two_pi, 1e-12);
  EXPECT_THROW(arg_variation(CoverElement::identity(), {1.0, 1.0}), DomainError);

  test_support::Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const CoverElement g = test_support::random_element(rng);
    EXPECT_EQ(arg_variation(g, {0.0, 1.0}), g.omega());
    const double phi = test_support::uniform(rng, -pi, pi);
    const Vec2 v{std::cos(phi), std::sin(phi)};
    const double var = arg_variation(g, v);
    EXPECT_LE(std::abs(wrap_angle((g.mat() * v).arg() - phi - var)), 1e-9);
    // Windings of different vectors differ by less than pi.
    EXPECT_LT(std::abs(var - g.omega()), pi);
  }
}

TEST(Classify, Examples) {
  const Stratum id = classify(CoverElement::identity());
  EXPECT_EQ(id.kind, StratumKind::parabolic_vertex);
  EXPECT_EQ(id.component_index, 0);

  const Stratum shear = classify(CoverElement(kShear, -std::atan(two_pi)));
  EXPECT_EQ(shear.kind, StratumKind::parabolic_leaf_plus);
  EXPECT_EQ(shear.component_index, 0);

  const Stratum lower = classify(CoverElement({1.0, -two_pi, 0.0, 1.0}, std::atan(two_pi)));
  EXPECT_EQ(lower.kind, StratumKind::parabolic_leaf_minus);

  const Stratum iota2 = classify(center_power(2));
  EXPECT_EQ(iota2.kind, StratumKind::parabolic_vertex);
  EXPECT_EQ(iota2.component_index, 2);

  const Stratum iota = classify(center_power(1));
  EXPECT_EQ(iota.kind, StratumKind::parabolic_vertex);
  EXPECT_EQ(iota.component_index, 1);

  EXPECT_EQ(classify(phi_y(half_pi, 1.0, 0.0)).kind, StratumKind::trace_zero_boundary);
  EXPECT_THROW(classify(CoverElement::identity(), 0.0), DomainError);
}

TEST(Classify, TraceSignMatchesComponentParity) {
  test_support::Rng rng(22);
  for (int i = 0; i < kSamples; ++i) {
    const CoverElement g = test_support::random_element(rng);
    const Stratum st = classify(g);
    if (st.kind == StratumKind::trace_zero_boundary) continue;
    const double expected_sign = st.component_index % 2 == 0 ? 1.0 : -1.0;
    EXPECT_GT(st.trace * expected_sign, 0.0);
    const double tr = std::abs(st.trace);
    if (st.kind == StratumKind::elliptic) { EXPECT_LT(tr, 2.0); }
    if (st.kind == StratumKind::hyperbolic) { EXPECT_GT(tr, 2.0); }
  }
}

TEST(Classify, LeafSignIsConjugationInvariant) {
  test_support::Rng rng(23);
  const CoverElement shear(kShear, -std::atan(two_pi));
  for (int i = 0; i < 200; ++i) {
    const CoverElement h = test_support::random_element(rng);
    const CoverElement conj = multiply(multiply(h, shear), inverse(h));
    const Stratum st = classify(conj, 1e-6);
    EXPECT_EQ(st.kind, StratumKind::parabolic_leaf_plus);
    EXPECT_EQ(st.component_index, 0);
  }
}

TEST(GTheta, Membership) {
  EXPECT_FALSE(in_G_theta(CoverElement::identity(), 0.0));
  EXPECT_TRUE(in_G_theta(center_power(2), 0.0));
  EXPECT_TRUE(in_G_theta(CoverElement(kShear, -std::atan(two_pi)), 0.0));
  EXPECT_FALSE(in_G_theta(CoverElement(kShear, -std::atan(two_pi)), 1.5));

  const CoverElementPM R = CoverElementPM::reflection_base();
  EXPECT_FALSE(in_G_theta(R, 0.0));
  EXPECT_TRUE(in_G_theta(R, -0.1));
  const CoverElementPM Rg = multiply(R, CoverElementPM(center_power(2)));
  EXPECT_TRUE(in_G_theta(Rg, 6.0));
  EXPECT_FALSE(in_G_theta(Rg, 6.3));
}

TEST(Validity, CongruenceOfConstructedElements) {
  test_support::Rng rng(24);
  for (int i = 0; i < kSamples; ++i) {
    EXPECT_TRUE(test_support::random_element(rng).is_valid());
  }
  EXPECT_FALSE(CoverElement(Mat2::identity(), 1.0).is_valid());
  EXPECT_FALSE(CoverElement(Mat2::diag(2.0, 1.0), 0.0).is_valid());
  EXPECT_TRUE(CoverElement(Mat2::identity(), -two_pi).is_valid());
}
