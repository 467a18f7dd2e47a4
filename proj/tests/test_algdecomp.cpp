#include <doctest.h>

#include "mtc/algdecomp.hpp"

using namespace mtc;

namespace {

// Q[Z/n] as an AlgebraModel over the given ring (basis = group elements).
AlgebraModel group_algebra(const RingPtr& ring, size_t n) {
  AlgebraModel alg;
  alg.ring = ring;
  for (size_t i = 0; i < n; ++i) {
    Matrix l(ring, n, n);
    for (size_t j = 0; j < n; ++j) l.at((i + j) % n, j) = CycScalar::one(ring);
    alg.left_mult.push_back(l);
  }
  alg.unit = Matrix(ring, n, 1);
  alg.unit.at(0, 0) = CycScalar::one(ring);
  return alg;
}

// Sweedler's 4-dim Hopf algebra as a bare algebra: basis {1, g, x, gx},
// g^2 = 1, x^2 = 0, x g = -g x.
AlgebraModel sweedler_algebra(const RingPtr& ring) {
  size_t n = 4;
  // multiplication table: b_i * b_j = sum_k c[i][j][k] b_k (signs only)
  auto mul = [&](size_t i, size_t j) {
    // encode basis as (g-exponent, x-exponent)
    int gi = (i == 1 || i == 3), xi = (i == 2 || i == 3);
    int gj = (j == 1 || j == 3), xj = (j == 2 || j == 3);
    std::pair<int, long> out{-1, 0}; // (basis index, coefficient)
    if (xi && xj) return out;        // x^2 = 0
    // (g^gi x^xi)(g^gj x^xj): move x past g: x g = -g x
    long sign = (xi && gj) ? -1 : 1;
    int gk = (gi + gj) % 2, xk = xi + xj;
    int k = gk + 2 * xk;
    out = {k, sign};
    return out;
  };
  AlgebraModel alg;
  alg.ring = ring;
  for (size_t i = 0; i < n; ++i) {
    Matrix l(ring, n, n);
    for (size_t j = 0; j < n; ++j) {
      auto [k, s] = mul(i, j);
      if (k >= 0) l.at(static_cast<size_t>(k), j) = CycScalar::integer(ring, s);
    }
    alg.left_mult.push_back(l);
  }
  alg.unit = Matrix(ring, n, 1);
  alg.unit.at(0, 0) = CycScalar::one(ring);
  return alg;
}

} // namespace

TEST_CASE("field_sqrt basics") {
  auto ring = CycRing::make(5);
  auto r = field_sqrt(CycScalar::integer(ring, 4));
  REQUIRE(r.has_value());
  CHECK(*r == CycScalar::integer(ring, 2));

  // 5 is a square in Q(zeta5): sqrt(5) = 1 + 2*(z + z^4)
  auto s5 = field_sqrt(CycScalar::integer(ring, 5));
  REQUIRE(s5.has_value());
  CHECK((*s5) * (*s5) == CycScalar::integer(ring, 5));

  // 2 is not a square in Q(zeta5)
  CHECK(!field_sqrt(CycScalar::integer(ring, 2)).has_value());

  auto quarter = field_sqrt(CycScalar::rational(ring, Rat(9, 4)));
  REQUIRE(quarter.has_value());
  CHECK(*quarter == CycScalar::rational(ring, Rat(3, 2)));
}

TEST_CASE("field_roots of split polynomials") {
  auto ring = CycRing::make(5);
  CycScalar z = CycScalar::zeta_pow(ring, 1);
  // p(x) = x^5 - 1 splits completely in Q(zeta5)
  std::vector<CycScalar> p(6, CycScalar::zero(ring));
  p[0] = -CycScalar::one(ring);
  p[5] = CycScalar::one(ring);
  auto roots = field_roots(p, ring);
  CHECK(roots.size() == 5);
  for (const auto& r : roots) CHECK(r.pow(5).is_one());

  // x^2 + x + 1 has no roots in Q(zeta5)
  std::vector<CycScalar> q{CycScalar::one(ring), CycScalar::one(ring), CycScalar::one(ring)};
  CHECK(field_roots(q, ring).empty());
}

TEST_CASE("radical of group algebra is zero, of Sweedler is 2-dim") {
  auto ring = CycRing::make(1);
  CHECK(algebra_radical(group_algebra(ring, 5)).cols() == 0);
  Matrix rad = algebra_radical(sweedler_algebra(ring));
  CHECK(rad.cols() == 2); // span{x, gx}
}

TEST_CASE("find_simples: Q[Z/2] has two 1-dim simples") {
  auto ring = CycRing::make(1);
  auto simples = find_simples(group_algebra(ring, 2));
  CHECK(simples.simples.size() == 2);
  for (const auto& s : simples.simples) CHECK(s.dim() == 1);
}

TEST_CASE("find_simples: Q(zeta5)[Z/5] has five 1-dim simples") {
  auto ring = CycRing::make(5);
  auto simples = find_simples(group_algebra(ring, 5));
  CHECK(simples.simples.size() == 5);
  for (const auto& s : simples.simples) CHECK(s.dim() == 1);
}

TEST_CASE("find_simples: Q[Z/5] over level 1 has a non-split simple") {
  auto ring = CycRing::make(1);
  auto simples = find_simples(group_algebra(ring, 5));
  REQUIRE(simples.simples.size() == 2);
  // the 4-dim piece is simple but its endomorphism algebra is Q(zeta5),
  // which the category layer reports as split_field_required
  bool saw_nonsplit = false;
  for (const auto& s : simples.simples) {
    auto endos = module_hom_basis(s, s);
    if (s.dim() == 4) {
      CHECK(endos.size() == 4);
      saw_nonsplit = true;
    } else {
      CHECK(endos.size() == 1);
    }
  }
  CHECK(saw_nonsplit);
}

TEST_CASE("find_simples: Sweedler algebra has two 1-dim simples") {
  auto ring = CycRing::make(1);
  auto simples = find_simples(sweedler_algebra(ring));
  CHECK(simples.simples.size() == 2);
  for (const auto& s : simples.simples) CHECK(s.dim() == 1);
}

TEST_CASE("decompose_semisimple splits regular Q(zeta5)[Z/5]") {
  auto ring = CycRing::make(5);
  auto alg = group_algebra(ring, 5);
  ModuleModel reg{ring, alg.left_mult};
  std::vector<ModuleModel> classes;
  auto parts = decompose_semisimple(reg, classes);
  CHECK(parts.size() == 5);
  CHECK(classes.size() == 5);
  // inclusion/projection pairs are exact idempotent data
  for (const auto& s : parts) {
    CHECK((s.projection * s.inclusion).is_identity());
  }
}

TEST_CASE("commutative primitive idempotents of Q(zeta5)[Z/5]") {
  auto ring = CycRing::make(5);
  auto alg = group_algebra(ring, 5);
  auto idems = commutative_primitive_idempotents(alg);
  CHECK(idems.size() == 5);
  for (const auto& e : idems) CHECK(alg.multiply(e, e) == e);
}

TEST_CASE("commutative primitive idempotents lift along the radical") {
  auto ring = CycRing::make(1);
  // k[t]/(t^2): one primitive idempotent (the unit)
  AlgebraModel alg;
  alg.ring = ring;
  Matrix l0 = Matrix::identity(ring, 2);
  Matrix l1(ring, 2, 2);
  l1.at(1, 0) = CycScalar::one(ring); // t * 1 = t, t * t = 0
  alg.left_mult = {l0, l1};
  alg.unit = Matrix(ring, 2, 1);
  alg.unit.at(0, 0) = CycScalar::one(ring);
  auto idems = commutative_primitive_idempotents(alg);
  CHECK(idems.size() == 1);
  CHECK(idems[0] == alg.unit);
}

TEST_CASE("module hom basis matches commutant dimension") {
  auto ring = CycRing::make(1);
  auto alg = group_algebra(ring, 2);
  ModuleModel reg{ring, alg.left_mult};
  auto endos = module_hom_basis(reg, reg);
  CHECK(endos.size() == 2);
}
