#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "weil/scalars.hpp"

using namespace weil;

TEST_CASE("root of unity angles reduce") {
  CHECK(RootOfUnity::of(2, 4) == RootOfUnity::of(1, 2));
  CHECK(RootOfUnity::of(0, 7) == RootOfUnity::of(0, 1));
  CHECK(RootOfUnity::of(0, 7).is_one());
  auto i = RootOfUnity::of(1, 4);
  CHECK(i * i == RootOfUnity::of(1, 2));
  CHECK_THROWS_AS(RootOfUnity::of(1, 0), weil_error);
}

TEST_CASE("angle group laws") {
  auto z = RootOfUnity::of(3, 8);
  CHECK((z * z.inverse()).is_one());
  CHECK(z.pow(8).is_one());
  CHECK(z.pow(3) == RootOfUnity::of(9, 8));
  CHECK(RootOfUnity::of(-1, 4) == RootOfUnity::of(3, 4));
}

TEST_CASE("to_cyclotomic basics") {
  // zeta_4^2 = -1, Phi_4 = x^2 + 1
  auto m1 = Cyclotomic::from_root(RootOfUnity::of(1, 2), 4);
  CHECK(m1.coeff(0) == -1);
  CHECK(m1.coeff(1) == 0);
  auto one = Cyclotomic::from_root(RootOfUnity::of(0, 1), 8);
  CHECK(one.coeff(0) == 1);
  for (long k = 1; k < 4; ++k) CHECK(one.coeff(k) == 0);
  CHECK_THROWS_AS(Cyclotomic::from_root(RootOfUnity::of(1, 3), 4), weil_error);
}

TEST_CASE("sum of all p-th roots of unity vanishes") {
  for (long p : {3, 5, 7}) {
    Cyclotomic s = Cyclotomic::zero(p);
    for (long k = 0; k < p; ++k) s += Cyclotomic::from_root(RootOfUnity::of(k, p), p);
    CHECK(s.is_zero());
  }
}

TEST_CASE("ring operations") {
  auto z4 = Cyclotomic::from_root(RootOfUnity::of(1, 4), 4);
  auto one = Cyclotomic::integer(1, 4);
  CHECK((z4 + one) * (z4 - one) == Cyclotomic::integer(-2, 4));

  auto z8 = Cyclotomic::from_root(RootOfUnity::of(1, 8), 8);
  auto inv = z8.inverse();
  CHECK(inv * z8 == Cyclotomic::integer(1, 8));
  CHECK(inv == Cyclotomic::from_root(RootOfUnity::of(7, 8), 8));
  CHECK_THROWS_AS(Cyclotomic::zero(4).inverse(), weil_error);
}

TEST_CASE("a + (-a) = 0 for assorted values") {
  for (long n = 1; n < 30; ++n) {
    auto a = Cyclotomic::from_root(RootOfUnity::of(n, 30), 30) +
             Cyclotomic::rational(mpq_class(n, 7), 30);
    CHECK((a + (-a)).is_zero());
  }
}

TEST_CASE("equality independent of common order") {
  auto a = Cyclotomic::from_root(RootOfUnity::of(1, 6), 6);
  auto b = Cyclotomic::from_root(RootOfUnity::of(2, 12), 12);
  CHECK(a == b);
  CHECK(a.lifted(24) == b.lifted(36).lifted(72).lifted(72));
  // embedding commutes with ring operations
  auto x = Cyclotomic::from_root(RootOfUnity::of(1, 5), 5);
  auto y = Cyclotomic::from_root(RootOfUnity::of(3, 5), 5);
  CHECK((x * y).lifted(20) == x.lifted(20) * y.lifted(20));
  CHECK((x + y).lifted(20) == x.lifted(20) + y.lifted(20));
}

TEST_CASE("z^d = 1 exactly") {
  for (long d : {2, 3, 4, 6, 8, 9, 27}) {
    auto z = Cyclotomic::from_root(RootOfUnity::of(1, d), d);
    auto acc = Cyclotomic::integer(1, d);
    for (long k = 0; k < d; ++k) acc = acc * z;
    CHECK(acc == Cyclotomic::integer(1, d));
  }
}

TEST_CASE("canonical form: reduce twice and compare") {
  // feed an unreduced coefficient vector twice through reduction
  std::vector<mpq_class> v(15, 0);
  v[0] = 2;
  v[7] = -3;
  v[11] = 1;
  v[14] = 5;
  auto a = Cyclotomic::from_coeffs(16, v);
  std::vector<mpq_class> w(euler_phi(16), 0);
  for (long k = 0; k < euler_phi(16); ++k) w[k] = a.coeff(k);
  CHECK(Cyclotomic::from_coeffs(16, w) == a);
}

TEST_CASE("root sums match term-by-term addition") {
  RootSum acc(24);
  Cyclotomic direct = Cyclotomic::zero(24);
  long long k = 1;
  for (int it = 0; it < 50; ++it) {
    k = (k * 17 + 5) % 24;
    auto z = RootOfUnity::of(k, 24);
    acc.add(z, it % 4 + 1);
    for (int m = 0; m <= it % 4; ++m) direct += Cyclotomic::from_root(z, 24);
  }
  CHECK(acc.value() == direct);
}
