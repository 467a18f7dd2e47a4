#pragma once

#include <optional>
#include <vector>

#include "mtc/matrix.hpp"

namespace mtc {

/// Square root of a base-field element inside Q(zeta_N), exact. Found by a
/// modular lift (roots mod a split-friendly prime, Newton lifting, rational
/// reconstruction) and verified exactly before returning. nullopt when no
/// square root exists in the field.
std::optional<CycScalar> field_sqrt(const CycScalar& value);

/// All roots of the polynomial (coefficient vector, index = degree) that lie
/// in the base field, verified exactly. Multiple roots are reported once.
std::vector<CycScalar> field_roots(const std::vector<CycScalar>& poly, const RingPtr& ring);

/// A finite-dimensional associative algebra given by its left-multiplication
/// action: left_mult[i] is the matrix of x -> b_i * x on the basis.
struct AlgebraModel {
  RingPtr ring;
  std::vector<Matrix> left_mult;
  Matrix unit; // coordinates of 1 as a column

  size_t dim() const { return left_mult.size(); }
  /// Left multiplication operator of an element (column vector).
  Matrix op(const Matrix& element) const;
  Matrix multiply(const Matrix& a, const Matrix& b) const;
};

/// Primitive orthogonal idempotents of a commutative algebra, summing to the
/// unit. Works by splitting the semisimple quotient into one-dimensional
/// ideals and lifting along the nilradical; requires the quotient to be split
/// over the base field (split_field_required otherwise).
std::vector<Matrix> commutative_primitive_idempotents(const AlgebraModel& alg);

/// A module over an abstract algebra: act[i] is the action of the i-th
/// algebra basis element on the module's coordinate space.
struct ModuleModel {
  RingPtr ring;
  std::vector<Matrix> act;

  size_t dim() const { return act.empty() ? 0 : act[0].rows(); }
};

/// Basis of the submodule generated by the given column vectors (as columns).
Matrix generated_submodule(const ModuleModel& mod, const Matrix& generators);

/// Hom space between two modules over the same algebra: echelon-canonical
/// basis of intertwiner matrices (as flat column vectors of size
/// to.dim x from.dim, row-major).
std::vector<Matrix> module_hom_basis(const ModuleModel& from, const ModuleModel& to);

/// Restriction of a module to an invariant subspace with the given basis.
ModuleModel restrict_module(const ModuleModel& mod, const Matrix& basis);

/// Quotient module by an invariant subspace; returns the projection matrix
/// and a section alongside the quotient model.
struct QuotientModule {
  ModuleModel mod;
  Matrix projection;
  Matrix section;
};
QuotientModule quotient_module(const ModuleModel& mod, const Matrix& sub_basis);

/// One summand of a decomposition into indecomposables: basis columns of the
/// summand inside the ambient module and the index of its isomorphism class.
struct Summand {
  Matrix inclusion;  // dim x d
  Matrix projection; // d x dim, projection * inclusion = id
  size_t iso_class;
};

/// The isomorphism classes of simple modules of an algebra (from its
/// semisimple quotient), deterministic order.
struct SimpleList {
  std::vector<ModuleModel> simples;
  Matrix radical_basis; // basis of rad(A) as columns in the algebra
};
SimpleList find_simples(const AlgebraModel& alg);

/// Decompose a module known to be semisimple into simple summands (classes
/// refer to the given list; unseen classes are appended).
std::vector<Summand> decompose_semisimple(const ModuleModel& mod, std::vector<ModuleModel>& classes);

/// Jacobson radical of an algebra via the char-0 trace-form criterion,
/// returned as column basis.
Matrix algebra_radical(const AlgebraModel& alg);

} // namespace mtc
