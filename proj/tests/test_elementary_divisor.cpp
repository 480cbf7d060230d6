#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rmf/elementary_divisor.hpp"
#include "rmf/random_instances.hpp"

#include "fixtures.hpp"

using namespace rmf;
using namespace rmf::testing;

TEST_CASE("make_divisor normalizes the column against the row") {
  ElementaryDivisor e = fixture_e();
  CHECK(std::abs((e.q * e.p).value() - (e.z0 - e.zeta0)) < 1e-15);
  CHECK(maxabs(e.p - vec2(1.0, 0.0)) < 1e-15);

  ElementaryDivisor scaled =
      make_divisor(Complex(0.0, 0.0), Complex(1.0, 0.0), vec2(2.0, 0.0), row2(-1.0, 0.0));
  CHECK(approx_equal(scaled, e));
  CHECK(maxabs(scaled.p - vec2(1.0, 0.0)) < 1e-15);

  CHECK(thrown_code([] {
          make_divisor(Complex(0.0, 0.0), Complex(1.0, 0.0), vec2(0.0, 1.0), row2(-1.0, 0.0));
        }) == "DegenerateAction");
  CHECK(thrown_code([] {
          make_divisor(Complex(1.0, 0.0), Complex(1.0, 0.0), vec2(1.0, 0.0), row2(-1.0, 0.0));
        }) == "CoincidentPoints");
}

TEST_CASE("evaluate matches the diagonal closed form") {
  ElementaryDivisor e = fixture_e();
  CHECK(maxabs(evaluate(e, Complex(2.0, 0.0)) - mat2(0.5, 0.0, 0.0, 1.0)) < 1e-15);
  CHECK(maxabs(evaluate(e, Complex(1e9, 0.0)) - CMat::Identity(2, 2)) < 1e-8);
  CHECK(thrown_code([&] { evaluate(e, Complex(0.0, 0.0)); }) == "AtPole");
}

TEST_CASE("inverse swaps pole and zero") {
  ElementaryDivisor e = fixture_e();
  ElementaryDivisor inv = inverse(e);
  CHECK(inv.z0 == e.zeta0);
  CHECK(inv.zeta0 == e.z0);
  CHECK(maxabs(evaluate(inv, Complex(2.0, 0.0)) - mat2(2.0, 0.0, 0.0, 1.0)) < 1e-15);
  CHECK(approx_equal(inverse(inv), e));
  CMat prod = evaluate(e, Complex(5.0, 0.0)) * evaluate(inv, Complex(5.0, 0.0));
  CHECK(maxabs(prod - CMat::Identity(2, 2)) < 1e-14);
}

TEST_CASE("eigen_action is the scalar multiplier on both invariant lines") {
  ElementaryDivisor e = fixture_e();
  Complex lam = eigen_action(e, Complex(2.0, 0.0));
  CHECK(std::abs(lam - Complex(0.5, 0.0)) < 1e-15);
  CHECK(maxabs(evaluate(e, Complex(2.0, 0.0)) * e.p - lam * e.p) < 1e-15);
  CHECK(maxabs(e.q * evaluate(e, Complex(2.0, 0.0)) - lam * e.q) < 1e-15);
  CHECK(std::abs(eigen_action(e, e.zeta0)) < 1e-15);
  CHECK(std::abs(eigen_action(e, Complex(1e12, 0.0)) - Complex(1.0, 0.0)) < 1e-11);
  CHECK(thrown_code([&] { eigen_action(e, e.z0); }) == "AtPole");
}

TEST_CASE("from_action rebuilds the divisor from one sample") {
  ElementaryDivisor got =
      from_action(Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(2.0, 0.0), row2(-1.0, 0.0),
                  vec2(1.0, 0.0), vec2(0.5, 0.0));
  CHECK(approx_equal(got, fixture_e()));

  // Generic probe direction: v = B(2) w.
  CVec w = vec2(1.0, 1.0);
  CVec v = evaluate(fixture_e(), Complex(2.0, 0.0)) * w;
  ElementaryDivisor generic =
      from_action(Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(2.0, 0.0), row2(-1.0, 0.0), w, v);
  CHECK(approx_equal(generic, fixture_e()));

  CHECK(thrown_code([] {
          from_action(Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(2.0, 0.0), row2(-1.0, 0.0),
                      vec2(0.0, 1.0), vec2(0.0, 1.0));
        }) == "DegenerateAction");
}

TEST_CASE("from_action_left mirrors with rows") {
  ElementaryDivisor got =
      from_action_left(Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(2.0, 0.0), vec2(1.0, 0.0),
                       row2(-1.0, 0.0), row2(-0.5, 0.0));
  CHECK(approx_equal(got, fixture_e()));

  CRow w = row2(1.0, 1.0);
  CRow v = w * evaluate(fixture_e(), Complex(2.0, 0.0));
  ElementaryDivisor generic =
      from_action_left(Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(2.0, 0.0), vec2(1.0, 0.0), w, v);
  CHECK(approx_equal(generic, fixture_e()));
}

TEST_CASE("twist conjugates the projector and keeps the points") {
  ElementaryDivisor e = fixture_e();
  ElementaryDivisor flipped = twist(e, mat2(0.0, 1.0, 1.0, 0.0));
  CHECK(flipped.z0 == e.z0);
  CHECK(flipped.zeta0 == e.zeta0);
  CHECK(maxabs(evaluate(flipped, Complex(2.0, 0.0)) - mat2(1.0, 0.0, 0.0, 0.5)) < 1e-15);

  CHECK(approx_equal(twist(e, CMat::Identity(2, 2)), e));
  CHECK(approx_equal(twist(e, 2.0 * CMat::Identity(2, 2)), e));
  CHECK(thrown_code([&] { twist(e, mat2(1.0, 0.0, 0.0, 0.0)); }) == "SingularTwist");
}

TEST_CASE("random divisors satisfy the determinant and involution contracts") {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    int m = 2 + static_cast<int>(rng.next() % 3);
    ElementaryDivisor b = random_divisor(rng, m);
    Complex z = rng.box(6.0);
    if (std::abs(z - b.z0) < 0.2 || std::abs(z - b.zeta0) < 0.2) continue;

    CMat bz = evaluate(b, z);
    Complex lam = eigen_action(b, z);
    CHECK(std::abs(bz.determinant() - lam) < 1e-10 * std::max(1.0, std::abs(lam)));
    CHECK(maxabs(bz * evaluate(inverse(b), z) - CMat::Identity(m, m)) < 1e-9);
    CHECK(maxabs(bz * b.p - lam * b.p) < 1e-10 * b.p.norm());
    CHECK(maxabs(b.q * bz - lam * b.q) < 1e-10 * b.q.norm());

    CMat a = random_well_conditioned(rng, m);
    ElementaryDivisor tw = twist(b, a);
    CHECK(std::abs(evaluate(tw, z).determinant() - lam) < 1e-9);
    CHECK(maxabs(evaluate(tw, z) - a * bz * a.inverse()) < 1e-9);

    CVec w(m);
    for (int i = 0; i < m; ++i) w(i) = rng.box(2.0);
    if (std::abs((b.q * w).value()) < 0.05 * b.q.norm() * w.norm()) continue;
    ElementaryDivisor back = from_action(b.z0, b.zeta0, z, b.q, w, CVec(bz * w));
    CHECK(approx_equal(back, b, 1e-9));
  }
}
