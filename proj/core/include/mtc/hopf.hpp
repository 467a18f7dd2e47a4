#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mtc/matrix.hpp"

namespace mtc {

/// Structure tensors of a finite-dimensional Hopf algebra over Q(zeta_N).
/// Shapes: mult is n x n^2 (column i*n+j holds the coefficients of b_i b_j),
/// comult is n^2 x n, counit 1 x n, antipode n x n, unit n x 1.
struct HopfDatum {
  RingPtr ring;
  size_t dim = 0;
  std::string name;
  Matrix mult;
  Matrix unit;
  Matrix comult;
  Matrix counit;
  Matrix antipode;
  std::vector<std::string> basis_labels;

  /// Left/right multiplication operator of an element (n x 1).
  Matrix left_mult_op(const Matrix& x) const;
  Matrix right_mult_op(const Matrix& x) const;
  /// Product of two elements of H^{tensor m}.
  Matrix elem_mul(const Matrix& x, const Matrix& y, size_t tensor_power = 1) const;
  /// Unit of H^{tensor m}.
  Matrix elem_unit(size_t tensor_power = 1) const;
  /// Place an element of H^{tensor 2} into slots (s1, s2) of H^{tensor m}.
  Matrix lift_pair(const Matrix& r, size_t s1, size_t s2, size_t m) const;
  /// Apply the antipode (or its matrix power) slotwise: (S^e tensor ...).
  Matrix counit_of(const Matrix& x) const; // scalar epsilon(x)
  /// Greedily chosen basis indices that generate H as an algebra.
  std::vector<size_t> algebra_generators() const;
};

/// Quasitriangular + ribbon data for a HopfDatum. rmatrix is an element of
/// H tensor H (n^2 x 1), ribbon and drinfeld are elements of H.
struct RibbonDatum {
  Matrix rmatrix;
  Matrix ribbon;
  Matrix drinfeld;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness; // first violating index, empty when passing
};

struct Report {
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Exact verification of all Hopf axioms; each failure carries the first
/// violating index tuple.
Report check_hopf_axioms(const HopfDatum& h);

/// Quasitriangular hexagons, intertwining, invertibility, and the ribbon
/// conditions on v (centrality, S(v)=v, eps(v)=1, v^2 = u S(u),
/// Delta(v) = (R21 R)^{-1} (v tensor v)).
Report check_ribbon(const HopfDatum& h, const RibbonDatum& r);

/// Drinfeld element u = sum S(R_2) R_1.
Matrix drinfeld_element(const HopfDatum& h, const Matrix& rmatrix);

/// All ribbon elements for the given R-matrix, found by an exhaustive search
/// over the center (sign choices of block square roots), deterministic order.
std::vector<Matrix> find_ribbon_elements(const HopfDatum& h, const Matrix& rmatrix);

/// Monodromy nondegeneracy: the map H* -> H induced by R21 R is invertible.
bool factorizability_precheck(const HopfDatum& h, const RibbonDatum& r);

/// Drinfeld double D(H) with its canonical R-matrix. Basis order: index
/// i*n + j is (b_i^* tensor b_j) with the H^{*cop} factor first.
std::pair<HopfDatum, Matrix> drinfeld_double(const HopfDatum& h);

/// Built-in families:
///   builtin("trivial")                     - the ground field
///   builtin("group", {n})                  - k[Z/n], R = 1 tensor 1
///   builtin("group", {n, s, t})            - R = sum zeta^(s a b) e_a e_b,
///                                            v = sum zeta^(t a^2) e_a
///   builtin("sweedler4", {})               - Sweedler's H_4
///   builtin("double", {})/named doubles via builtin_double()
std::pair<HopfDatum, RibbonDatum> builtin(const std::string& name, const std::vector<long>& params = {});
std::pair<HopfDatum, RibbonDatum> builtin_double(const std::string& base_name, const std::vector<long>& params = {});

/// HOPF v1 text format, bit-exact round trip.
void save_hopf(std::ostream& out, const HopfDatum& h, const RibbonDatum& r);
std::pair<HopfDatum, RibbonDatum> load_hopf(std::istream& in);

} // namespace mtc
