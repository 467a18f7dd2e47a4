#include <doctest.h>

#include <complex>
#include <random>

#include "mtc/cyc.hpp"

using namespace mtc;

namespace {

// Deterministic small random scalars for property checks.
CycScalar random_scalar(const RingPtr& ring, std::mt19937& rng, bool with_d) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<Rat> base(ring->degree()), dp;
  for (auto& c : base) c = Rat(num(rng), den(rng));
  if (with_d) {
    dp.resize(ring->degree());
    for (auto& c : dp) c = Rat(num(rng), den(rng));
  }
  return CycScalar::from_parts(ring, base, dp);
}

} // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
  CHECK(cyclotomic_polynomial(2) == std::vector<Int>{1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<Int>{1, 0, 1});
  CHECK(cyclotomic_polynomial(5) == std::vector<Int>{1, 1, 1, 1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<Int>{1, 0, -1, 0, 1});
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(20) == 8);
}

TEST_CASE("ring axioms on random triples, exact") {
  auto ring = CycRing::make(5);
  ring->ground(std::vector<Rat>{Rat(5), Rat(0), Rat(0), Rat(0)}); // d^2 = 5
  std::mt19937 rng(20240811);
  for (int t = 0; t < 1000; ++t) {
    CycScalar x = random_scalar(ring, rng, t % 2 == 0);
    CycScalar y = random_scalar(ring, rng, t % 3 == 0);
    CycScalar z = random_scalar(ring, rng, true);
    CHECK((x + y) * z == x * z + y * z);
    CHECK(x * y == y * x);
    CHECK((x * y) * z == x * (y * z));
  }
  CycScalar d = CycScalar::dee(ring);
  CHECK(d * d == CycScalar::rational(ring, Rat(5)));
}

TEST_CASE("d*d before grounding raises") {
  auto ring = CycRing::make(3);
  CycScalar d = CycScalar::dee(ring);
  CHECK_THROWS_AS((void)(d * d), error);
  // base arithmetic is fine before grounding
  CycScalar z = CycScalar::zeta_pow(ring, 1);
  CHECK((z * z * z).is_one());
}

TEST_CASE("zeta relations") {
  auto ring = CycRing::make(5);
  CycScalar z = CycScalar::zeta_pow(ring, 1);
  CycScalar sum = CycScalar::zero(ring);
  for (int k = 0; k < 5; ++k) sum += z.pow(k);
  CHECK(sum.is_zero()); // 1 + z + z^2 + z^3 + z^4 = 0
  CHECK(z.pow(5).is_one());
  CHECK(z.pow(-1) == z.pow(4));
}

TEST_CASE("base field inverses") {
  auto ring = CycRing::make(7);
  std::mt19937 rng(7);
  for (int t = 0; t < 50; ++t) {
    CycScalar x = random_scalar(ring, rng, false);
    if (x.is_zero()) continue;
    CHECK((x * x.inverse()).is_one());
  }
}

TEST_CASE("d-ring zero divisors when zeta is a square") {
  auto ring = CycRing::make(1);
  ring->ground(std::vector<Rat>{Rat(4)}); // d^2 = 4, so (d-2)(d+2) = 0
  CycScalar d = CycScalar::dee(ring);
  CycScalar two = CycScalar::integer(ring, 2);
  CHECK(((d - two) * (d + two)).is_zero());
  CHECK(!(d - two).try_inverse().has_value());
  CHECK((d.inverse() * d).is_one());
}

TEST_CASE("float bridge commutes with arithmetic to 1e-12") {
  auto ring = CycRing::make(12);
  ring->ground(CycRing::make(12)->reduce(std::vector<Rat>{Rat(3)})); // d = sqrt(3)
  std::mt19937 rng(99);
  for (int t = 0; t < 200; ++t) {
    CycScalar x = random_scalar(ring, rng, true);
    CycScalar y = random_scalar(ring, rng, t % 2 == 1);
    std::complex<double> lhs = (x * y + x).to_complex();
    std::complex<double> rhs = x.to_complex() * y.to_complex() + x.to_complex();
    CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("literal grammar: bit-exact round trip") {
  auto ring = CycRing::make(5);
  ring->ground(std::vector<Rat>{Rat(5), Rat(0), Rat(0), Rat(0)});
  std::mt19937 rng(5);
  for (int t = 0; t < 300; ++t) {
    CycScalar x = random_scalar(ring, rng, t % 2 == 0);
    std::string s = x.to_string();
    CycScalar back = CycScalar::parse(ring, s);
    CHECK(back == x);
    CHECK(back.to_string() == s);
  }
  CHECK(CycScalar::parse(ring, "0").is_zero());
  CHECK(CycScalar::parse(ring, "3/2 + -1/3*z^2") ==
        CycScalar::from_parts(ring, {Rat(3, 2), Rat(0), Rat(-1, 3), Rat(0)}, {}));
  CHECK(CycScalar::parse(ring, "d*(1/2)") ==
        CycScalar::from_parts(ring, {Rat(0), Rat(0), Rat(0), Rat(0)}, {Rat(1, 2), Rat(0), Rat(0), Rat(0)}));
  CHECK_THROWS_AS(CycScalar::parse(ring, "1 + q"), error);
}

TEST_CASE("level-1 ring is plain rationals") {
  auto ring = CycRing::make(1);
  CycScalar half = CycScalar::rational(ring, Rat(1, 2));
  CHECK((half + half).is_one());
  CHECK(half.to_string() == "1/2");
}
