#include <doctest.h>

#include <sstream>

#include "mtc/hopf.hpp"

using namespace mtc;

TEST_CASE("trivial Hopf algebra passes all axioms") {
  auto [h, r] = builtin("trivial");
  CHECK(h.dim == 1);
  CHECK(check_hopf_axioms(h).all_pass());
  CHECK(check_ribbon(h, r).all_pass());
  CHECK(factorizability_precheck(h, r));
}

TEST_CASE("group algebra Q[Z/5] passes axioms (brute force over triples)") {
  auto [h, r] = builtin("group", {5});
  CHECK(check_hopf_axioms(h).all_pass());
  // independent oracle: associativity of the group directly
  for (size_t i = 0; i < 5; ++i)
    for (size_t j = 0; j < 5; ++j)
      for (size_t k = 0; k < 5; ++k) CHECK((i + j + k) % 5 == ((i + j) % 5 + k) % 5);
  CHECK(check_ribbon(h, r).all_pass());
}

TEST_CASE("corrupted structure constant is reported with a witness") {
  auto [h, r] = builtin("group", {5});
  (void)r;
  h.mult.at(0, 1 * 5 + 2) = CycScalar::one(h.ring); // corrupt b1*b2
  Report rep = check_hopf_axioms(h);
  CHECK(!rep.all_pass());
  bool assoc_failed = false;
  for (const auto& c : rep.checks)
    if (c.name == "associativity" && !c.pass) {
      assoc_failed = true;
      CHECK(!c.witness.empty());
    }
  CHECK(assoc_failed);
}

TEST_CASE("Gauss data on Q(zeta5)[Z/5] is ribbon and factorizable") {
  auto [h, r] = builtin("group", {5, 1, -1});
  CHECK(h.ring->level() == 5);
  CHECK(check_hopf_axioms(h).all_pass());
  CHECK(check_ribbon(h, r).all_pass());
  CHECK(factorizability_precheck(h, r));
}

TEST_CASE("trivial R on Q[Z/2] is not factorizable") {
  auto [h, r] = builtin("group", {2});
  CHECK(check_hopf_axioms(h).all_pass());
  CHECK(check_ribbon(h, r).all_pass());
  CHECK(!factorizability_precheck(h, r)); // M = 1 tensor 1 has rank 1
}

TEST_CASE("wrong ribbon element fails the square condition") {
  auto [h, r] = builtin("group", {5, 1, -1});
  RibbonDatum bad = r;
  bad.ribbon = h.unit; // v = 1
  Report rep = check_ribbon(h, bad);
  bool square_failed = false;
  for (const auto& c : rep.checks)
    if ((c.name == "ribbon_square" || c.name == "ribbon_comult") && !c.pass) square_failed = true;
  CHECK(square_failed);
}

TEST_CASE("find_ribbon_elements recovers the Gauss ribbon") {
  auto [h, r] = builtin("group", {5, 1, -1});
  auto found = find_ribbon_elements(h, r.rmatrix);
  CHECK(!found.empty());
  bool has_gauss = false;
  for (const auto& v : found)
    if (v == r.ribbon) has_gauss = true;
  CHECK(has_gauss);
  for (const auto& v : found) {
    RibbonDatum cand{r.rmatrix, v, drinfeld_element(h, r.rmatrix)};
    CHECK(check_ribbon(h, cand).all_pass());
  }
}

TEST_CASE("sweedler4 passes axioms and has a ribbon element") {
  auto [h, r] = builtin("sweedler4");
  CHECK(h.dim == 4);
  CHECK(check_hopf_axioms(h).all_pass());
  CHECK(check_ribbon(h, r).all_pass());
}

TEST_CASE("double of the trivial algebra is trivial") {
  auto [h, r] = builtin("trivial");
  (void)r;
  auto [dh, rm] = drinfeld_double(h);
  CHECK(dh.dim == 1);
  CHECK(check_hopf_axioms(dh).all_pass());
  CHECK(rm.at(0, 0).is_one());
}

TEST_CASE("double of Q[Z/2] has dim 4 and passes all checks") {
  auto [h, r] = builtin("group", {2});
  (void)r;
  auto [dh, rm] = drinfeld_double(h);
  CHECK(dh.dim == 4);
  CHECK(check_hopf_axioms(dh).all_pass());
  auto ribbons = find_ribbon_elements(dh, rm);
  CHECK(!ribbons.empty());
  RibbonDatum dr{rm, ribbons[0], drinfeld_element(dh, rm)};
  CHECK(check_ribbon(dh, dr).all_pass());
  CHECK(factorizability_precheck(dh, dr));
}

TEST_CASE("double of sweedler4 has dim 16, ribbon, factorizable") {
  auto [dh, dr] = builtin_double("sweedler4");
  CHECK(dh.dim == 16);
  CHECK(check_hopf_axioms(dh).all_pass());
  CHECK(check_ribbon(dh, dr).all_pass());
  CHECK(factorizability_precheck(dh, dr));
}

TEST_CASE("HOPF v1 round trip is bit-exact") {
  auto [h, r] = builtin("group", {5, 1, -1});
  std::ostringstream out;
  save_hopf(out, h, r);
  std::string text = out.str();
  std::istringstream in(text);
  auto [h2, r2] = load_hopf(in);
  std::ostringstream out2;
  save_hopf(out2, h2, r2);
  CHECK(out2.str() == text);
  CHECK(h2.mult == h.mult);
  CHECK(r2.rmatrix == r.rmatrix);
  CHECK(r2.ribbon == r.ribbon);
}

TEST_CASE("algebra generators span") {
  auto [h, r] = builtin("group", {5});
  (void)r;
  auto gens = h.algebra_generators();
  CHECK(gens.size() == 1); // one group generator suffices
}
