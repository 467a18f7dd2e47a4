#include "mtc/cyc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace mtc {

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  unsigned m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// Exact division of integer polynomials, used to build Phi_N from x^N - 1.
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
  std::vector<Int> quot(num.size() - den.size() + 1, Int(0));
  for (size_t i = quot.size(); i-- > 0;) {
    Int c = num[i + den.size() - 1] / den.back();
    quot[i] = c;
    if (c != 0)
      for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  return quot;
}

} // namespace

std::vector<Int> cyclotomic_polynomial(unsigned n) {
  std::vector<Int> acc(n + 1, Int(0));
  acc[0] = -1;
  acc[n] = 1; // x^n - 1
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    std::vector<Int> phi_d = cyclotomic_polynomial(d);
    acc = poly_div_exact(std::move(acc), phi_d);
  }
  return acc;
}

RingPtr CycRing::make(unsigned level) {
  if (level == 0) fail(errc::bad_params, "cyclotomic level must be positive");
  auto ring = RingPtr(new CycRing());
  ring->level_ = level;
  ring->degree_ = euler_phi(level);
  auto phi = cyclotomic_polynomial(level);
  ring->cyclo_.reserve(phi.size());
  for (auto& c : phi) ring->cyclo_.emplace_back(c);
  return ring;
}

void CycRing::ground(const std::vector<Rat>& zeta_base) {
  if (zeta_base.size() != degree_) fail(errc::bad_params, "dsq coefficient vector has wrong length");
  if (dsq_) {
    if (*dsq_ != zeta_base) fail(errc::bad_params, "d^2 already grounded to a different value");
    return;
  }
  dsq_ = zeta_base;
}

const std::vector<Rat>& CycRing::dsq() const {
  if (!dsq_) fail(errc::not_yet_grounded, "d^2 used before the modularity parameter was computed");
  return *dsq_;
}

std::vector<Rat> CycRing::reduce(std::vector<Rat> poly) const {
  for (size_t i = poly.size(); i-- > degree_;) {
    Rat c = poly[i];
    if (c != 0) {
      poly[i] = 0;
      for (unsigned j = 0; j < degree_; ++j) poly[i - degree_ + j] -= c * cyclo_[j];
    }
  }
  poly.resize(degree_, Rat(0));
  for (auto& c : poly) c.canonicalize();
  return poly;
}

CycScalar::CycScalar(RingPtr ring) : ring_(std::move(ring)), base_(ring_->degree(), Rat(0)) {}

CycScalar CycScalar::zero(const RingPtr& ring) { return CycScalar(ring); }

CycScalar CycScalar::one(const RingPtr& ring) { return rational(ring, Rat(1)); }

CycScalar CycScalar::rational(const RingPtr& ring, const Rat& r) {
  CycScalar s(ring);
  s.base_[0] = r;
  s.base_[0].canonicalize();
  return s;
}

CycScalar CycScalar::integer(const RingPtr& ring, long v) { return rational(ring, Rat(v)); }

CycScalar CycScalar::zeta_pow(const RingPtr& ring, long k) {
  long n = static_cast<long>(ring->level());
  long e = ((k % n) + n) % n;
  std::vector<Rat> poly(static_cast<size_t>(e) + 1, Rat(0));
  poly[static_cast<size_t>(e)] = 1;
  CycScalar s(ring);
  s.base_ = ring->reduce(std::move(poly));
  return s;
}

CycScalar CycScalar::dee(const RingPtr& ring) {
  CycScalar s(ring);
  s.dpart_.assign(ring->degree(), Rat(0));
  s.dpart_[0] = 1;
  return s;
}

CycScalar CycScalar::from_parts(const RingPtr& ring, std::vector<Rat> base, std::vector<Rat> dpart) {
  if (base.size() != ring->degree() || (!dpart.empty() && dpart.size() != ring->degree()))
    fail(errc::bad_params, "coefficient vector has wrong length");
  CycScalar s(ring);
  s.base_ = std::move(base);
  for (auto& c : s.base_) c.canonicalize();
  bool all_zero = true;
  for (auto& c : dpart)
    if (c != 0) { all_zero = false; break; }
  if (!all_zero) {
    s.dpart_ = std::move(dpart);
    for (auto& c : s.dpart_) c.canonicalize();
  }
  return s;
}

bool CycScalar::has_dpart() const {
  for (const auto& c : dpart_)
    if (c != 0) return true;
  return false;
}

bool CycScalar::is_zero() const {
  for (const auto& c : base_)
    if (c != 0) return false;
  return !has_dpart();
}

bool CycScalar::is_one() const {
  if (has_dpart()) return false;
  if (base_.empty() || base_[0] != 1) return false;
  for (size_t i = 1; i < base_.size(); ++i)
    if (base_[i] != 0) return false;
  return true;
}

void CycScalar::check_same_ring(const CycScalar& o) const {
  if (ring_.get() != o.ring_.get()) fail(errc::ring_mismatch, "scalars from different rings");
}

bool CycScalar::operator==(const CycScalar& o) const {
  check_same_ring(o);
  if (base_ != o.base_) return false;
  bool a = has_dpart(), b = o.has_dpart();
  if (a != b) return false;
  if (a && dpart_ != o.dpart_) return false;
  return true;
}

namespace {

void add_into(std::vector<Rat>& a, const std::vector<Rat>& b, bool negate) {
  if (b.empty()) return;
  if (a.empty()) a.assign(b.size(), Rat(0));
  for (size_t i = 0; i < b.size(); ++i) {
    if (negate)
      a[i] -= b[i];
    else
      a[i] += b[i];
    a[i].canonicalize();
  }
}

bool vec_zero(const std::vector<Rat>& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

// Product of two coefficient vectors modulo Phi_N.
std::vector<Rat> mul_mod(const CycRing& ring, const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> prod(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      prod[i + j] += a[i] * b[j];
    }
  }
  return ring.reduce(std::move(prod));
}

} // namespace

CycScalar CycScalar::operator+(const CycScalar& o) const {
  CycScalar r = *this;
  r += o;
  return r;
}

CycScalar CycScalar::operator-(const CycScalar& o) const {
  CycScalar r = *this;
  r -= o;
  return r;
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
  check_same_ring(o);
  add_into(base_, o.base_, false);
  add_into(dpart_, o.dpart_, false);
  if (!dpart_.empty() && vec_zero(dpart_)) dpart_.clear();
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) {
  check_same_ring(o);
  add_into(base_, o.base_, true);
  add_into(dpart_, o.dpart_, true);
  if (!dpart_.empty() && vec_zero(dpart_)) dpart_.clear();
  return *this;
}

CycScalar CycScalar::operator-() const {
  CycScalar r = *this;
  for (auto& c : r.base_) c = -c;
  for (auto& c : r.dpart_) c = -c;
  return r;
}

CycScalar CycScalar::operator*(const CycScalar& o) const {
  check_same_ring(o);
  CycScalar r(ring_);
  bool da = has_dpart(), db = o.has_dpart();
  if (!vec_zero(base_) && !vec_zero(o.base_)) r.base_ = mul_mod(*ring_, base_, o.base_);
  if (da && db) {
    // d*d reduces through the grounded modularity parameter.
    auto dd = mul_mod(*ring_, dpart_, o.dpart_);
    auto grounded = mul_mod(*ring_, dd, ring_->dsq());
    add_into(r.base_, grounded, false);
  }
  std::vector<Rat> dp;
  if (da && !vec_zero(o.base_)) add_into(dp, mul_mod(*ring_, dpart_, o.base_), false);
  if (db && !vec_zero(base_)) add_into(dp, mul_mod(*ring_, base_, o.dpart_), false);
  if (!dp.empty() && !vec_zero(dp)) r.dpart_ = std::move(dp);
  if (r.base_.empty()) r.base_.assign(ring_->degree(), Rat(0));
  return r;
}

CycScalar& CycScalar::operator*=(const CycScalar& o) {
  *this = *this * o;
  return *this;
}

namespace {

// Extended Euclid in Q[z] against Phi_N: returns inv with inv*a = 1 mod Phi_N,
// or nullopt when gcd(a, Phi_N) != 1 (impossible for irreducible Phi_N and a != 0).
std::optional<std::vector<Rat>> base_inverse(const CycRing& ring, const std::vector<Rat>& a) {
  auto degree_of = [](const std::vector<Rat>& p) -> long {
    for (size_t i = p.size(); i-- > 0;)
      if (p[i] != 0) return static_cast<long>(i);
    return -1;
  };
  std::vector<Rat> r0 = ring.cyclo(), r1 = a;
  r1.resize(std::max(r1.size(), size_t(1)), Rat(0));
  std::vector<Rat> s0(1, Rat(0)), s1(1, Rat(1));
  while (degree_of(r1) >= 0) {
    long d0 = degree_of(r0), d1 = degree_of(r1);
    if (d0 < d1) {
      std::swap(r0, r1);
      std::swap(s0, s1);
      continue;
    }
    // r0 -= (lead ratio) z^(d0-d1) * r1, same for s.
    Rat c = r0[static_cast<size_t>(d0)] / r1[static_cast<size_t>(d1)];
    c.canonicalize();
    size_t shift = static_cast<size_t>(d0 - d1);
    for (size_t j = 0; j <= static_cast<size_t>(d1); ++j) {
      r0[j + shift] -= c * r1[j];
      r0[j + shift].canonicalize();
    }
    if (s0.size() < s1.size() + shift) s0.resize(s1.size() + shift, Rat(0));
    for (size_t j = 0; j < s1.size(); ++j) {
      s0[j + shift] -= c * s1[j];
      s0[j + shift].canonicalize();
    }
  }
  long g = degree_of(r0);
  if (g != 0) return std::nullopt;
  Rat lead = r0[0];
  std::vector<Rat> inv = s0;
  for (auto& c : inv) {
    c /= lead;
    c.canonicalize();
  }
  return ring.reduce(std::move(inv));
}

} // namespace

std::optional<CycScalar> CycScalar::try_inverse() const {
  if (is_zero()) return std::nullopt;
  if (!has_dpart()) {
    auto inv = base_inverse(*ring_, base_);
    if (!inv) return std::nullopt;
    CycScalar r(ring_);
    r.base_ = std::move(*inv);
    return r;
  }
  // (a + d b)^-1 = (a - d b) / (a^2 - zeta b^2); needs d grounded.
  CycScalar conj = *this;
  for (auto& c : conj.dpart_) c = -c;
  CycScalar norm = *this * conj;
  if (norm.has_dpart()) fail(errc::internal, "norm of d-ring element has d-part");
  auto inv = norm.is_zero() ? std::nullopt : base_inverse(*ring_, norm.base_);
  if (!inv) return std::nullopt;
  CycScalar ninv(ring_);
  ninv.base_ = std::move(*inv);
  return conj * ninv;
}

CycScalar CycScalar::inverse() const {
  auto inv = try_inverse();
  if (!inv) fail(errc::not_invertible, "scalar has no inverse: " + to_string());
  return *inv;
}

CycScalar CycScalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycScalar acc = one(ring_);
  CycScalar b = *this;
  unsigned long u = static_cast<unsigned long>(e);
  while (u) {
    if (u & 1) acc *= b;
    b *= b;
    u >>= 1;
  }
  return acc;
}

std::complex<double> CycScalar::to_complex() const {
  const double pi = 3.14159265358979323846;
  std::complex<double> zeta = std::polar(1.0, 2.0 * pi / static_cast<double>(ring_->level()));
  auto eval = [&](const std::vector<Rat>& v) {
    std::complex<double> acc{0.0, 0.0}, zp{1.0, 0.0};
    for (const auto& c : v) {
      acc += c.get_d() * zp;
      zp *= zeta;
    }
    return acc;
  };
  std::complex<double> r = eval(base_);
  if (has_dpart()) {
    std::complex<double> dsq = eval(ring_->dsq());
    r += std::sqrt(dsq) * eval(dpart_);
  }
  return r;
}

namespace {

std::string rat_str(const Rat& r) { return r.get_str(); }

std::string part_str(const std::vector<Rat>& v) {
  std::string out;
  for (size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    if (!out.empty()) out += " + ";
    out += rat_str(v[k]);
    if (k > 0) out += "*z^" + std::to_string(k);
  }
  if (out.empty()) out = "0";
  return out;
}

} // namespace

std::string CycScalar::to_string() const {
  std::string out = part_str(base_);
  if (has_dpart()) {
    if (out == "0")
      out = "d*(" + part_str(dpart_) + ")";
    else
      out += " + d*(" + part_str(dpart_) + ")";
  }
  return out;
}

namespace {

struct LiteralParser {
  const std::string& text;
  size_t pos = 0;
  const RingPtr& ring;

  LiteralParser(const std::string& t, const RingPtr& r) : text(t), ring(r) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void die(const std::string& msg) {
    fail(errc::syntax_error, "scalar literal at position " + std::to_string(pos) + ": " + msg);
  }

  Rat parse_rat() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    if (pos == start) die("expected rational");
    Rat r;
    if (r.set_str(text.substr(start, pos - start), 10) != 0) die("bad rational");
    r.canonicalize();
    return r;
  }

  // <rat> | <rat>*z^<k>, accumulated into coeffs
  void parse_term(std::vector<Rat>& coeffs) {
    Rat c = parse_rat();
    unsigned k = 0;
    skip_ws();
    if (pos < text.size() && text[pos] == '*') {
      ++pos;
      skip_ws();
      if (pos >= text.size() || text[pos] != 'z') die("expected z");
      ++pos;
      if (pos >= text.size() || text[pos] != '^') die("expected ^");
      ++pos;
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) die("expected exponent");
      k = static_cast<unsigned>(std::stoul(text.substr(start, pos - start)));
    }
    if (coeffs.size() <= k) coeffs.resize(k + 1, Rat(0));
    coeffs[k] += c;
  }

  std::vector<Rat> parse_sum(char stop) {
    std::vector<Rat> coeffs;
    parse_term(coeffs);
    skip_ws();
    while (pos < text.size() && text[pos] == '+') {
      ++pos;
      skip_ws();
      // "+ d*(...)" is handled by the caller
      if (pos < text.size() && text[pos] == 'd') {
        --pos; // leave "+ d" for caller
        break;
      }
      parse_term(coeffs);
      skip_ws();
    }
    (void)stop;
    return coeffs;
  }
};

} // namespace

CycScalar CycScalar::parse(const RingPtr& ring, const std::string& text) {
  LiteralParser p(text, ring);
  p.skip_ws();
  std::vector<Rat> base, dpart;
  bool have_base = false;
  if (p.pos < text.size() && text[p.pos] != 'd') {
    base = p.parse_sum('\0');
    have_base = true;
    p.skip_ws();
    if (p.pos < text.size() && text[p.pos] == '+') {
      ++p.pos;
      p.skip_ws();
    }
  }
  if (p.pos < text.size() && text[p.pos] == 'd') {
    ++p.pos;
    p.skip_ws();
    if (p.pos >= text.size() || text[p.pos] != '*') p.die("expected * after d");
    ++p.pos;
    p.skip_ws();
    if (p.pos >= text.size() || text[p.pos] != '(') p.die("expected ( after d*");
    ++p.pos;
    dpart = p.parse_sum(')');
    p.skip_ws();
    if (p.pos >= text.size() || text[p.pos] != ')') p.die("expected )");
    ++p.pos;
  } else if (!have_base) {
    p.die("empty literal");
  }
  p.skip_ws();
  if (p.pos != text.size()) p.die("trailing characters");
  CycScalar s(ring);
  if (!base.empty()) s.base_ = ring->reduce(std::move(base));
  if (!dpart.empty()) {
    auto dp = ring->reduce(std::move(dpart));
    bool zero = true;
    for (auto& c : dp)
      if (c != 0) zero = false;
    if (!zero) s.dpart_ = std::move(dp);
  }
  return s;
}

} // namespace mtc
