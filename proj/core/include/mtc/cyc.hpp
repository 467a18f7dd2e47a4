#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mtc/errors.hpp"

namespace mtc {

using Rat = mpq_class;
using Int = mpz_class;

class CycRing;
using RingPtr = std::shared_ptr<CycRing>;

/// Coefficient ring Q(zeta_N)[d]/(d^2 - zeta) shared by all scalars of one
/// session. The square d^2 is left formal until ground() pins it to the
/// modularity parameter; multiplying two d-parts before that throws
/// errc::not_yet_grounded.
class CycRing : public std::enable_shared_from_this<CycRing> {
public:
  static RingPtr make(unsigned level);

  unsigned level() const { return level_; }
  unsigned degree() const { return degree_; }

  /// Monic coefficients of Phi_N, index 0..degree (cyclo_[degree] == 1).
  const std::vector<Rat>& cyclo() const { return cyclo_; }

  bool grounded() const { return static_cast<bool>(dsq_); }
  /// Set d^2 := zeta (a base-field coefficient vector). Set-once; regrounding
  /// with a different value throws.
  void ground(const std::vector<Rat>& zeta_base);
  const std::vector<Rat>& dsq() const;

  /// Reduce a polynomial in z (any length) modulo Phi_N to degree() coeffs.
  std::vector<Rat> reduce(std::vector<Rat> poly) const;

private:
  CycRing() = default;
  unsigned level_ = 1;
  unsigned degree_ = 1;
  std::vector<Rat> cyclo_;
  std::optional<std::vector<Rat>> dsq_;
};

/// Exact element of Q(zeta_N)[d]/(d^2 - zeta) on the power basis of zeta_N.
class CycScalar {
public:
  CycScalar() = default;
  explicit CycScalar(RingPtr ring);

  static CycScalar zero(const RingPtr& ring);
  static CycScalar one(const RingPtr& ring);
  static CycScalar rational(const RingPtr& ring, const Rat& r);
  static CycScalar integer(const RingPtr& ring, long v);
  /// zeta_N^k (k may be any integer; reduced mod N).
  static CycScalar zeta_pow(const RingPtr& ring, long k);
  /// The formal square root d.
  static CycScalar dee(const RingPtr& ring);
  static CycScalar from_parts(const RingPtr& ring, std::vector<Rat> base, std::vector<Rat> dpart);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Rat>& base() const { return base_; }
  /// Empty vector means zero d-part.
  const std::vector<Rat>& dpart() const { return dpart_; }
  bool has_dpart() const;

  bool is_zero() const;
  bool is_one() const;
  bool operator==(const CycScalar& o) const;
  bool operator!=(const CycScalar& o) const { return !(*this == o); }

  CycScalar operator+(const CycScalar& o) const;
  CycScalar operator-(const CycScalar& o) const;
  CycScalar operator-() const;
  CycScalar operator*(const CycScalar& o) const;
  CycScalar& operator+=(const CycScalar& o);
  CycScalar& operator-=(const CycScalar& o);
  CycScalar& operator*=(const CycScalar& o);

  /// Multiplicative inverse. Fails with not_invertible on zero and on
  /// zero-divisors of the d-ring (possible when zeta is a square in the base
  /// field); base-field elements always invert when nonzero.
  std::optional<CycScalar> try_inverse() const;
  CycScalar inverse() const;
  CycScalar pow(long e) const;

  /// Complex embedding at zeta_N = exp(2*pi*i/N), d = principal sqrt(zeta).
  std::complex<double> to_complex() const;

  /// Canonical literal, bit-exact round trip with parse().
  std::string to_string() const;
  static CycScalar parse(const RingPtr& ring, const std::string& text);

private:
  RingPtr ring_;
  std::vector<Rat> base_;
  std::vector<Rat> dpart_; // empty == 0

  void check_same_ring(const CycScalar& o) const;
};

/// Phi_N as integer coefficients (index 0..phi(N)).
std::vector<Int> cyclotomic_polynomial(unsigned n);

unsigned euler_phi(unsigned n);

} // namespace mtc
