#include "mtc/algdecomp.hpp"

#include <algorithm>
#include <map>

namespace mtc {

// ---------------------------------------------------------------------------
// polynomial helpers over the base field (CycScalar with no d-part)

namespace {

using Poly = std::vector<CycScalar>; // coefficients, index = degree

long poly_deg(const Poly& p) {
  for (size_t i = p.size(); i-- > 0;)
    if (!p[i].is_zero()) return static_cast<long>(i);
  return -1;
}

Poly poly_trim(Poly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

Poly poly_monic(const Poly& p) {
  Poly q = poly_trim(p);
  if (q.empty()) return q;
  CycScalar inv = q.back().inverse();
  for (auto& c : q) c *= inv;
  return q;
}

Poly poly_derivative(const Poly& p, const RingPtr& ring) {
  Poly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * CycScalar::integer(ring, static_cast<long>(i)));
  return poly_trim(d);
}

Poly poly_rem(Poly a, const Poly& b) {
  Poly bm = poly_monic(b);
  long db = poly_deg(bm);
  if (db < 0) fail(errc::internal, "poly_rem by zero");
  while (true) {
    long da = poly_deg(a);
    if (da < db) break;
    CycScalar c = a[static_cast<size_t>(da)];
    for (long j = 0; j <= db; ++j) a[static_cast<size_t>(da - db + j)] -= c * bm[static_cast<size_t>(j)];
  }
  return poly_trim(a);
}

Poly poly_gcd(Poly a, Poly b) {
  a = poly_trim(a);
  b = poly_trim(b);
  while (poly_deg(b) >= 0) {
    Poly r = poly_rem(a, b);
    a = b;
    b = r;
  }
  return poly_monic(a);
}

Poly poly_div_exact_field(Poly a, const Poly& b, const RingPtr& ring) {
  Poly bt = poly_trim(b);
  long db = poly_deg(bt);
  long da = poly_deg(a);
  if (da < db) return {};
  CycScalar lead_inv = bt.back().inverse();
  Poly q(static_cast<size_t>(da - db) + 1, CycScalar::zero(ring));
  while (true) {
    da = poly_deg(a);
    if (da < db) break;
    CycScalar c = a[static_cast<size_t>(da)] * lead_inv;
    q[static_cast<size_t>(da - db)] = c;
    for (long j = 0; j <= db; ++j) a[static_cast<size_t>(da - db + j)] -= c * bt[static_cast<size_t>(j)];
  }
  return poly_trim(q);
}

Poly poly_squarefree_part(const Poly& p, const RingPtr& ring) {
  Poly d = poly_derivative(p, ring);
  if (poly_deg(d) < 0) return poly_monic(p);
  Poly g = poly_gcd(p, d);
  if (poly_deg(g) <= 0) return poly_monic(p);
  return poly_monic(poly_div_exact_field(p, g, ring));
}

CycScalar poly_eval(const Poly& p, const CycScalar& x, const RingPtr& ring) {
  CycScalar acc = CycScalar::zero(ring);
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

// ---------------------------------------------------------------------------
// arithmetic mod small primes: F_q and F_q[z]/f(z)

using u64 = unsigned long long;

u64 mulmod(u64 a, u64 b, u64 q) { return (unsigned __int128)a * b % q; }

u64 powmod(u64 a, u64 e, u64 q) {
  u64 r = 1 % q;
  a %= q;
  while (e) {
    if (e & 1) r = mulmod(r, a, q);
    a = mulmod(a, a, q);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 q) { return powmod(a % q, q - 2, q); }

using FqPoly = std::vector<u64>; // over F_q, index = degree

long fq_deg(const FqPoly& p) {
  for (size_t i = p.size(); i-- > 0;)
    if (p[i]) return static_cast<long>(i);
  return -1;
}

FqPoly fq_trim(FqPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

FqPoly fq_mul(const FqPoly& a, const FqPoly& b, u64 q) {
  if (fq_deg(a) < 0 || fq_deg(b) < 0) return {};
  FqPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j]) r[i + j] = (r[i + j] + mulmod(a[i], b[j], q)) % q;
  }
  return fq_trim(r);
}

FqPoly fq_sub(FqPoly a, const FqPoly& b, u64 q) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + q - b[i]) % q;
  return fq_trim(a);
}

// quotient and remainder
std::pair<FqPoly, FqPoly> fq_divmod(FqPoly a, const FqPoly& b, u64 q) {
  long db = fq_deg(b);
  if (db < 0) fail(errc::internal, "fq division by zero");
  u64 lead_inv = invmod(b[static_cast<size_t>(db)], q);
  long da = fq_deg(a);
  FqPoly quot(da >= db ? static_cast<size_t>(da - db) + 1 : 0, 0);
  while (true) {
    da = fq_deg(a);
    if (da < db) break;
    u64 c = mulmod(a[static_cast<size_t>(da)], lead_inv, q);
    quot[static_cast<size_t>(da - db)] = c;
    for (long j = 0; j <= db; ++j) {
      u64 sub = mulmod(c, b[static_cast<size_t>(j)], q);
      u64& t = a[static_cast<size_t>(da - db + j)];
      t = (t + q - sub) % q;
    }
  }
  return {fq_trim(quot), fq_trim(a)};
}

FqPoly fq_rem(FqPoly a, const FqPoly& m, u64 q) { return fq_divmod(std::move(a), m, q).second; }

FqPoly fq_mulmod(const FqPoly& a, const FqPoly& b, const FqPoly& m, u64 q) { return fq_rem(fq_mul(a, b, q), m, q); }

FqPoly fq_gcd(FqPoly a, FqPoly b, u64 q) {
  a = fq_trim(a);
  b = fq_trim(b);
  while (fq_deg(b) >= 0) {
    FqPoly r = fq_rem(a, b, q);
    a = b;
    b = r;
  }
  long d = fq_deg(a);
  if (d >= 0) {
    u64 inv = invmod(a[static_cast<size_t>(d)], q);
    for (auto& c : a) c = mulmod(c, inv, q);
  }
  return fq_trim(a);
}

FqPoly fq_powmod(FqPoly base, mpz_class e, const FqPoly& m, u64 q) {
  FqPoly r{1};
  base = fq_rem(std::move(base), m, q);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = fq_mulmod(r, base, m, q);
    base = fq_mulmod(base, base, m, q);
    e >>= 1;
  }
  return r;
}

// inverse in F_q[z]/m via extended Euclid (m need not be irreducible, but the
// element must be coprime to m)
std::optional<FqPoly> fq_invmod_poly(const FqPoly& a, const FqPoly& m, u64 q) {
  FqPoly r0 = fq_trim(m), r1 = fq_rem(a, m, q);
  FqPoly s0{}, s1{1};
  while (fq_deg(r1) > 0) {
    auto [quot, rem] = fq_divmod(r0, r1, q);
    FqPoly s2 = fq_sub(s0, fq_mul(quot, s1, q), q);
    r0 = r1;
    r1 = rem;
    s0 = s1;
    s1 = s2;
  }
  if (fq_deg(r1) != 0) return std::nullopt;
  u64 inv = invmod(r1[0], q);
  for (auto& c : s1) c = mulmod(c, inv, q);
  return fq_rem(fq_trim(s1), m, q);
}

struct Lcg {
  u64 s = 0x9e3779b97f4a7c15ull;
  u64 next() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return s >> 16;
  }
};

// irreducible factors of a squarefree polynomial over F_q (monic output)
std::vector<FqPoly> fq_factor_squarefree(const FqPoly& input, u64 q) {
  std::vector<FqPoly> result;
  std::vector<std::pair<FqPoly, long>> edf_queue;

  // distinct-degree stage
  FqPoly rest = fq_trim(input);
  {
    long d0 = fq_deg(rest);
    u64 inv = invmod(rest[static_cast<size_t>(d0)], q);
    for (auto& c : rest) c = mulmod(c, inv, q);
  }
  FqPoly h{0, 1}; // x
  long d = 0;
  while (fq_deg(rest) > 0) {
    ++d;
    if (2 * d > fq_deg(rest)) {
      edf_queue.push_back({rest, fq_deg(rest)});
      break;
    }
    h = fq_powmod(h, mpz_class(static_cast<unsigned long>(q)), rest, q);
    FqPoly g = fq_gcd(rest, fq_sub(h, FqPoly{0, 1}, q), q);
    if (fq_deg(g) > 0) {
      edf_queue.push_back({g, d});
      rest = fq_divmod(rest, g, q).first;
      if (fq_deg(rest) > 0) h = fq_rem(h, rest, q);
    }
  }

  // equal-degree stage (Cantor-Zassenhaus with a fixed-seed generator)
  Lcg rng;
  while (!edf_queue.empty()) {
    auto [g, deg_each] = edf_queue.back();
    edf_queue.pop_back();
    long dg = fq_deg(g);
    if (dg <= 0) continue;
    if (dg == deg_each) {
      result.push_back(g);
      continue;
    }
    mpz_class qe;
    mpz_ui_pow_ui(qe.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(deg_each));
    mpz_class exp = (qe - 1) / 2;
    int guard = 0;
    while (true) {
      if (++guard > 5000) fail(errc::internal, "equal-degree splitting stalled");
      FqPoly r(static_cast<size_t>(dg), 0);
      for (auto& c : r) c = rng.next() % q;
      FqPoly w = fq_powmod(r, exp, g, q);
      w = fq_sub(w, FqPoly{1}, q);
      FqPoly d1 = fq_gcd(g, w, q);
      long dd = fq_deg(d1);
      if (dd > 0 && dd < dg) {
        edf_queue.push_back({d1, deg_each});
        edf_queue.push_back({fq_divmod(g, d1, q).first, deg_each});
        break;
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

// roots of a polynomial with coefficients in F_q[z]/f (f irreducible over F_q)
std::vector<FqPoly> fqext_roots(const std::vector<FqPoly>& p_in, const FqPoly& f, u64 q) {
  long e = fq_deg(f);
  mpz_class qe;
  mpz_ui_pow_ui(qe.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));

  using Ext = std::vector<FqPoly>; // polynomial in x over F_q[z]/f
  auto ext_trim = [](Ext p) {
    while (!p.empty() && fq_deg(p.back()) < 0) p.pop_back();
    return p;
  };
  auto ext_deg = [](const Ext& p) {
    for (size_t i = p.size(); i-- > 0;)
      if (fq_deg(p[i]) >= 0) return static_cast<long>(i);
    return -1l;
  };
  auto c_mul = [&](const FqPoly& a, const FqPoly& b) { return fq_mulmod(a, b, f, q); };
  auto c_inv = [&](const FqPoly& a) { return fq_powmod(a, qe - 2, f, q); };
  auto c_sub = [&](FqPoly a, const FqPoly& b) { return fq_sub(std::move(a), b, q); };
  auto ext_divmod = [&](Ext a, const Ext& b) -> std::pair<Ext, Ext> {
    long db = ext_deg(b);
    FqPoly lead_inv = c_inv(b[static_cast<size_t>(db)]);
    long da = ext_deg(a);
    Ext quot(da >= db ? static_cast<size_t>(da - db) + 1 : 0, FqPoly{});
    while (true) {
      da = ext_deg(a);
      if (da < db) break;
      FqPoly c = c_mul(a[static_cast<size_t>(da)], lead_inv);
      quot[static_cast<size_t>(da - db)] = c;
      for (long j = 0; j <= db; ++j)
        a[static_cast<size_t>(da - db + j)] = c_sub(a[static_cast<size_t>(da - db + j)], c_mul(c, b[static_cast<size_t>(j)]));
    }
    return {ext_trim(quot), ext_trim(a)};
  };
  auto ext_mulmod = [&](const Ext& a, const Ext& b, const Ext& m) {
    Ext r(a.size() + b.size(), FqPoly{});
    for (size_t i = 0; i < a.size(); ++i) {
      if (fq_deg(a[i]) < 0) continue;
      for (size_t j = 0; j < b.size(); ++j) {
        if (fq_deg(b[j]) < 0) continue;
        FqPoly prod = c_mul(a[i], b[j]);
        FqPoly& t = r[i + j];
        if (t.size() < prod.size()) t.resize(prod.size(), 0);
        for (size_t k = 0; k < prod.size(); ++k) t[k] = (t[k] + prod[k]) % q;
      }
    }
    return ext_divmod(ext_trim(r), m).second;
  };
  auto ext_gcd = [&](Ext a, Ext b) {
    a = ext_trim(a);
    b = ext_trim(b);
    while (ext_deg(b) >= 0) {
      Ext r = ext_divmod(a, b).second;
      a = b;
      b = r;
    }
    long d = ext_deg(a);
    if (d >= 0) {
      FqPoly inv = c_inv(a[static_cast<size_t>(d)]);
      for (auto& c : a) c = c_mul(c, inv);
    }
    return ext_trim(a);
  };
  auto ext_powmod = [&](Ext base, mpz_class ee, const Ext& m) {
    Ext r{FqPoly{1}};
    base = ext_divmod(std::move(base), m).second;
    while (ee > 0) {
      if (mpz_odd_p(ee.get_mpz_t())) r = ext_mulmod(r, base, m);
      base = ext_mulmod(base, base, m);
      ee >>= 1;
    }
    return r;
  };

  Ext p;
  for (const auto& c : p_in) p.push_back(fq_rem(c, f, q));
  p = ext_trim(p);
  if (ext_deg(p) <= 0) return {};

  // g = gcd(x^(q^e) - x, p): product of the linear factors
  Ext x{FqPoly{}, FqPoly{1}};
  Ext frob = ext_powmod(x, qe, p);
  Ext diff = frob;
  if (diff.size() < 2) diff.resize(2, FqPoly{});
  diff[1] = c_sub(diff[1], FqPoly{1});
  Ext g = ext_gcd(p, ext_trim(diff));

  std::vector<FqPoly> roots;
  std::vector<Ext> work{g};
  Lcg rng;
  int guard = 0;
  while (!work.empty()) {
    if (++guard > 5000) fail(errc::internal, "root splitting stalled");
    Ext h = ext_trim(work.back());
    work.pop_back();
    long dh = ext_deg(h);
    if (dh <= 0) continue;
    if (dh == 1) {
      FqPoly r = c_mul(h[0], c_inv(h[1]));
      for (auto& c : r) c = (q - c) % q;
      roots.push_back(fq_trim(r));
      continue;
    }
    mpz_class exp = (qe - 1) / 2;
    FqPoly shift(static_cast<size_t>(std::max<long>(e, 1)), 0);
    for (auto& c : shift) c = rng.next() % q;
    Ext xc{fq_trim(shift), FqPoly{1}};
    Ext w = ext_powmod(xc, exp, h);
    if (w.empty()) w.resize(1, FqPoly{});
    w[0] = c_sub(w[0], FqPoly{1});
    Ext d1 = ext_gcd(h, ext_trim(w));
    long dd = ext_deg(d1);
    if (dd > 0 && dd < dh) {
      work.push_back(d1);
      work.push_back(ext_divmod(h, d1).first);
    } else {
      work.push_back(h);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

// ---------------------------------------------------------------------------
// lifting ring (Z/M)[z]/Phi and rational reconstruction

struct LiftRing {
  mpz_class modulus;
  std::vector<mpz_class> phi; // monic integer Phi_N
  unsigned degree;

  std::vector<mpz_class> reduce(std::vector<mpz_class> p) const {
    for (size_t i = p.size(); i-- > degree;) {
      mpz_class c = p[i] % modulus;
      p[i] = 0;
      if (c != 0)
        for (unsigned j = 0; j < degree; ++j) p[i - degree + j] -= c * phi[j];
    }
    p.resize(degree, mpz_class(0));
    for (auto& c : p) {
      c %= modulus;
      if (c < 0) c += modulus;
    }
    return p;
  }

  std::vector<mpz_class> mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) const {
    if (a.empty() || b.empty()) return std::vector<mpz_class>(degree, mpz_class(0));
    std::vector<mpz_class> prod(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % modulus;
    }
    return reduce(std::move(prod));
  }

  std::vector<mpz_class> add(std::vector<mpz_class> a, const std::vector<mpz_class>& b, bool neg) const {
    a.resize(degree, mpz_class(0));
    for (unsigned i = 0; i < degree && i < b.size(); ++i) {
      if (neg)
        a[i] -= b[i];
      else
        a[i] += b[i];
      a[i] %= modulus;
      if (a[i] < 0) a[i] += modulus;
    }
    return a;
  }
};

std::optional<Rat> rational_reconstruct(const mpz_class& c, const mpz_class& M) {
  mpz_class bound;
  mpz_sqrt(bound.get_mpz_t(), mpz_class(M / 2).get_mpz_t());
  mpz_class r0 = M, r1 = c % M, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += M;
  while (r1 > bound) {
    mpz_class quot = r0 / r1;
    mpz_class r2 = r0 - quot * r1;
    mpz_class t2 = t0 - quot * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  mpz_class num = r1, den = t1;
  if (den < 0) {
    den = -den;
    num = -num;
  }
  if (den == 0 || den > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rat result(num, den);
  result.canonicalize();
  return result;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull})
    if (n % p == 0) return n == p;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (a % n == 0) continue;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

std::optional<FqPoly> scalar_mod_q(const CycScalar& s, u64 q) {
  FqPoly out(s.base().size(), 0);
  for (size_t i = 0; i < s.base().size(); ++i) {
    const Rat& r = s.base()[i];
    mpz_class dm = r.get_den() % static_cast<unsigned long>(q);
    if (dm == 0) return std::nullopt;
    mpz_class num = r.get_num() % static_cast<long>(q);
    if (num < 0) num += static_cast<long>(q);
    out[i] = mulmod(num.get_ui(), invmod(dm.get_ui(), q), q);
  }
  return fq_trim(out);
}

// ---------------------------------------------------------------------------
// in-field roots: reduce mod a split-friendly prime, combine per-factor roots,
// Newton-lift, rationally reconstruct, verify exactly

std::vector<CycScalar> field_roots_impl(const Poly& input, const RingPtr& ring) {
  Poly p = poly_squarefree_part(input, ring);
  long dp = poly_deg(p);
  std::vector<CycScalar> found;
  if (dp <= 0) return found;
  for (const auto& c : p)
    if (c.has_dpart()) fail(errc::bad_params, "root finding requires base-field coefficients");
  if (dp == 1) {
    found.push_back(-(p[0] * p[1].inverse()));
    return found;
  }
  Poly dpoly = poly_derivative(p, ring);
  unsigned deg = ring->degree();

  int usable_primes = 0, no_root_votes = 0;
  for (u64 q = 10007; usable_primes < 3 && q < 400000; q += 2) {
    if (!is_prime_u64(q)) continue;

    FqPoly phi_q(deg + 1, 0);
    {
      const auto& phi = ring->cyclo();
      for (size_t i = 0; i < phi.size(); ++i) {
        mpz_class num = phi[i].get_num() % static_cast<long>(q);
        if (num < 0) num += static_cast<long>(q);
        phi_q[i] = num.get_ui();
      }
      FqPoly dphi;
      for (size_t i = 1; i < phi_q.size(); ++i) dphi.push_back(mulmod(phi_q[i], i % q, q));
      if (fq_deg(fq_gcd(phi_q, fq_trim(dphi), q)) != 0) continue; // Phi not squarefree mod q
    }

    std::vector<FqPoly> p_q;
    bool bad = false;
    for (const auto& c : p) {
      auto r = scalar_mod_q(c, q);
      if (!r) {
        bad = true;
        break;
      }
      p_q.push_back(*r);
    }
    if (bad || fq_deg(p_q.back()) < 0) continue;
    ++usable_primes;

    auto factors = fq_factor_squarefree(phi_q, q);

    std::vector<std::vector<FqPoly>> roots_per_factor;
    bool factor_without_root = false;
    size_t combos = 1;
    bool skip_prime = false;
    for (const auto& f : factors) {
      auto roots = fqext_roots(p_q, f, q);
      // keep only simple roots so Newton converges
      std::vector<FqPoly> good;
      for (const auto& r : roots) {
        FqPoly acc{};
        for (size_t i = p_q.size(); i-- > 1;) {
          FqPoly term = p_q[i];
          u64 iv = static_cast<u64>(i % q);
          for (auto& cc : term) cc = mulmod(cc, iv, q);
          acc = fq_mulmod(acc, r, f, q);
          if (acc.size() < term.size()) acc.resize(term.size(), 0);
          for (size_t k = 0; k < term.size(); ++k) acc[k] = (acc[k] + term[k]) % q;
          acc = fq_trim(acc);
        }
        if (fq_deg(acc) >= 0) good.push_back(r);
      }
      if (good.empty()) factor_without_root = true;
      roots_per_factor.push_back(good);
      combos *= std::max<size_t>(1, good.size());
      if (combos > 4096) {
        skip_prime = true;
        break;
      }
    }
    if (skip_prime) {
      --usable_primes;
      continue;
    }
    if (factor_without_root) {
      // a field root reduces to a root modulo every prime factor, so this
      // prime votes "no roots in the field"
      if (++no_root_votes >= 2) return found;
      continue;
    }

    // enumerate per-factor combinations
    std::vector<size_t> idx(factors.size(), 0);
    while (true) {
      // CRT combine into F_q[z]/Phi
      FqPoly x0{};
      for (size_t a = 0; a < factors.size(); ++a) {
        FqPoly m_a = fq_divmod(phi_q, factors[a], q).first;
        auto u_a = fq_invmod_poly(m_a, factors[a], q);
        if (!u_a) fail(errc::internal, "CRT inverse failed");
        FqPoly term = fq_mul(m_a, fq_mulmod(roots_per_factor[a][idx[a]], *u_a, factors[a], q), q);
        if (x0.size() < term.size()) x0.resize(term.size(), 0);
        for (size_t k = 0; k < term.size(); ++k) x0[k] = (x0[k] + term[k]) % q;
      }
      x0 = fq_rem(fq_trim(x0), phi_q, q);

      // Newton lift with increasing precision ladders
      for (unsigned steps : {4u, 6u, 8u}) {
        LiftRing R;
        R.degree = deg;
        R.phi.resize(deg + 1);
        for (size_t i = 0; i <= deg; ++i) R.phi[i] = ring->cyclo()[i].get_num();
        mpz_class M(static_cast<unsigned long>(q));
        std::vector<mpz_class> x(deg, 0);
        for (size_t i = 0; i < x0.size(); ++i) x[i] = static_cast<unsigned long>(x0[i]);
        bool lift_failed = false;
        for (unsigned s = 0; s < steps && !lift_failed; ++s) {
          M = M * M;
          R.modulus = M;
          auto scalar_mod_M = [&](const CycScalar& c) -> std::optional<std::vector<mpz_class>> {
            std::vector<mpz_class> out(deg, 0);
            for (size_t i = 0; i < c.base().size(); ++i) {
              mpz_class inv;
              mpz_class den = c.base()[i].get_den();
              if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t()) == 0) return std::nullopt;
              mpz_class v = (c.base()[i].get_num() % M) * inv % M;
              if (v < 0) v += M;
              out[i] = v;
            }
            return out;
          };
          auto eval_mod = [&](const Poly& poly) -> std::optional<std::vector<mpz_class>> {
            std::vector<mpz_class> acc(deg, 0);
            for (size_t i = poly.size(); i-- > 0;) {
              acc = R.mul(acc, x);
              auto cm = scalar_mod_M(poly[i]);
              if (!cm) return std::nullopt;
              acc = R.add(std::move(acc), *cm, false);
            }
            return acc;
          };
          auto pv = eval_mod(p);
          auto dv = eval_mod(dpoly);
          if (!pv || !dv) {
            lift_failed = true;
            break;
          }
          // inverse of p'(x) mod q, Newton-refined to modulus M
          FqPoly dq(deg, 0);
          for (unsigned i = 0; i < deg; ++i) {
            mpz_class v = (*dv)[i] % static_cast<long>(q);
            if (v < 0) v += static_cast<long>(q);
            dq[i] = v.get_ui();
          }
          auto inv_q = fq_invmod_poly(fq_trim(dq), phi_q, q);
          if (!inv_q) {
            lift_failed = true;
            break;
          }
          std::vector<mpz_class> inv(deg, 0);
          for (size_t i = 0; i < inv_q->size() && i < deg; ++i) inv[i] = static_cast<unsigned long>((*inv_q)[i]);
          for (unsigned t = 0; t < steps + 2; ++t) {
            auto prod = R.mul(*dv, inv);
            std::vector<mpz_class> two(deg, 0);
            two[0] = 2;
            inv = R.mul(inv, R.add(std::move(two), prod, true));
          }
          x = R.add(std::move(x), R.mul(*pv, inv), true);
        }
        if (lift_failed) break;
        std::vector<Rat> coeffs(deg);
        bool ok = true;
        for (unsigned i = 0; i < deg; ++i) {
          auto r = rational_reconstruct(x[i], M);
          if (!r) {
            ok = false;
            break;
          }
          coeffs[i] = *r;
        }
        if (!ok) continue;
        CycScalar cand = CycScalar::from_parts(ring, coeffs, {});
        if (poly_eval(p, cand, ring).is_zero()) {
          bool dup = false;
          for (const auto& g : found)
            if (g == cand) dup = true;
          if (!dup) found.push_back(cand);
          break;
        }
      }

      // next combination
      size_t k = 0;
      while (k < idx.size()) {
        if (++idx[k] < roots_per_factor[k].size()) break;
        idx[k] = 0;
        ++k;
      }
      if (k == idx.size()) break;
    }
    if (static_cast<long>(found.size()) == dp) return found;
    if (!found.empty()) return found;
    // found nothing though roots existed mod q: try another prime
  }
  return found;
}

} // namespace

std::vector<CycScalar> field_roots(const std::vector<CycScalar>& poly, const RingPtr& ring);

std::vector<CycScalar> field_roots(const std::vector<CycScalar>& poly, const RingPtr& ring) {
  return field_roots_impl(poly, ring);
}

std::optional<CycScalar> field_sqrt(const CycScalar& value) {
  const RingPtr& ring = value.ring();
  if (value.has_dpart()) fail(errc::bad_params, "field_sqrt expects a base-field element");
  if (value.is_zero()) return CycScalar::zero(ring);
  Poly p{-value, CycScalar::zero(ring), CycScalar::one(ring)};
  auto roots = field_roots_impl(p, ring);
  if (roots.empty()) return std::nullopt;
  CycScalar r = roots[0];
  for (const auto& c : r.base()) {
    if (c != 0) {
      if (c < 0) r = -r;
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// algebra / module utilities

Matrix AlgebraModel::op(const Matrix& element) const {
  Matrix acc = Matrix::zero(ring, left_mult[0].rows(), left_mult[0].cols());
  for (size_t i = 0; i < left_mult.size(); ++i) {
    const CycScalar& c = element.at(i, 0);
    if (c.is_zero()) continue;
    acc = acc + left_mult[i] * c;
  }
  return acc;
}

Matrix AlgebraModel::multiply(const Matrix& a, const Matrix& b) const { return op(a) * b; }

Matrix algebra_radical(const AlgebraModel& alg) {
  size_t n = alg.dim();
  const RingPtr& ring = alg.ring;
  Matrix T(ring, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      CycScalar tr = CycScalar::zero(ring);
      for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) {
          const CycScalar& a = alg.left_mult[i].at(r, c);
          if (a.is_zero()) continue;
          const CycScalar& b = alg.left_mult[j].at(c, r);
          if (b.is_zero()) continue;
          tr += a * b;
        }
      T.at(i, j) = tr;
      T.at(j, i) = tr;
    }
  return T.kernel_basis();
}

Matrix generated_submodule(const ModuleModel& mod, const Matrix& generators) {
  const RingPtr& ring = mod.ring;
  size_t dim = mod.dim();
  Matrix basis(ring, dim, 0);
  std::vector<Matrix> frontier;
  auto try_add = [&](const Matrix& v) -> bool {
    if (v.is_zero()) return false;
    Matrix probe = basis.hstack(v);
    if (probe.rank() == basis.cols() + 1) {
      basis = probe;
      return true;
    }
    return false;
  };
  for (size_t j = 0; j < generators.cols(); ++j) {
    Matrix v = generators.submatrix(0, j, dim, 1);
    if (try_add(v)) frontier.push_back(v);
  }
  size_t head = 0;
  while (head < frontier.size()) {
    Matrix v = frontier[head++];
    for (const auto& a : mod.act) {
      Matrix w = a * v;
      if (try_add(w)) frontier.push_back(w);
    }
  }
  return basis;
}

std::vector<Matrix> module_hom_basis(const ModuleModel& from, const ModuleModel& to) {
  const RingPtr& ring = from.ring;
  size_t m = to.dim(), n = from.dim();
  if (from.act.size() != to.act.size()) fail(errc::shape_mismatch, "hom over different algebras");
  if (m == 0 || n == 0) return {};
  size_t nops = from.act.size();
  Matrix constraints(ring, nops * m * n, m * n);
  Matrix im = Matrix::identity(ring, m), in = Matrix::identity(ring, n);
  for (size_t i = 0; i < nops; ++i) {
    Matrix block = im.kron(from.act[i].transpose()) - to.act[i].kron(in);
    for (size_t r = 0; r < m * n; ++r)
      for (size_t c = 0; c < m * n; ++c) constraints.at(i * m * n + r, c) = block.at(r, c);
  }
  Matrix k = constraints.kernel_basis();
  std::vector<Matrix> result;
  for (size_t j = 0; j < k.cols(); ++j) {
    Matrix f(ring, m, n);
    for (size_t r = 0; r < m; ++r)
      for (size_t c = 0; c < n; ++c) f.at(r, c) = k.at(r * n + c, j);
    result.push_back(f);
  }
  return result;
}

ModuleModel restrict_module(const ModuleModel& mod, const Matrix& basis) {
  ModuleModel out;
  out.ring = mod.ring;
  for (const auto& a : mod.act) {
    auto coords = basis.solve(a * basis);
    if (!coords) fail(errc::internal, "restrict_module: subspace not invariant");
    out.act.push_back(*coords);
  }
  return out;
}

QuotientModule quotient_module(const ModuleModel& mod, const Matrix& sub_basis) {
  auto [pi, iota] = sub_basis.cokernel_projection();
  QuotientModule out;
  out.projection = pi;
  out.section = iota;
  out.mod.ring = mod.ring;
  for (const auto& a : mod.act) out.mod.act.push_back(pi * a * iota);
  return out;
}

// ---------------------------------------------------------------------------
// finding simple submodules

namespace {

Poly matrix_minpoly(const Matrix& m) {
  const RingPtr& ring = m.ring();
  size_t n = m.rows();
  Matrix powers(ring, n * n, 0);
  Matrix cur = Matrix::identity(ring, n);
  for (size_t k = 0; k <= n; ++k) {
    Matrix flat(ring, n * n, 1);
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) flat.at(r * n + c, 0) = cur.at(r, c);
    auto dep = powers.solve(flat);
    if (dep) {
      Poly p;
      for (size_t i = 0; i < k; ++i) p.push_back(-dep->at(i, 0));
      p.push_back(CycScalar::one(ring));
      return p;
    }
    powers = powers.hstack(flat);
    cur = cur * m;
  }
  fail(errc::internal, "minpoly not found");
}

bool module_is_simple(const ModuleModel& mod) {
  size_t dim = mod.dim();
  if (dim == 0) return false;
  const RingPtr& ring = mod.ring;
  for (size_t j = 0; j < dim; ++j) {
    Matrix v(ring, dim, 1);
    v.at(j, 0) = CycScalar::one(ring);
    if (generated_submodule(mod, v).cols() != dim) return false;
  }
  return true;
}

std::vector<Matrix> endo_candidates(const std::vector<Matrix>& basis) {
  std::vector<Matrix> out = basis;
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) {
      out.push_back(basis[i] + basis[j]);
      out.push_back(basis[i] - basis[j]);
      out.push_back(basis[i] * basis[j]);
    }
  return out;
}

Matrix find_simple_submodule(const ModuleModel& mod) {
  const RingPtr& ring = mod.ring;
  size_t dim = mod.dim();
  if (dim == 0) fail(errc::internal, "find_simple_submodule on zero module");
  auto endos = module_hom_basis(mod, mod);
  if (endos.size() == 1 && module_is_simple(mod)) return Matrix::identity(ring, dim);

  for (const auto& phi : endo_candidates(endos)) {
    if (phi.as_scalar_multiple_of_identity()) continue;
    Poly mp = matrix_minpoly(phi);
    auto roots = field_roots_impl(mp, ring);
    for (const auto& lambda : roots) {
      Matrix shifted = phi - Matrix::scalar(ring, dim, lambda);
      Matrix power = shifted;
      for (size_t t = 1; t < dim; t <<= 1) power = power * power;
      Matrix ker = power.kernel_basis();
      if (ker.cols() > 0 && ker.cols() < dim) {
        ModuleModel sub = restrict_module(mod, ker);
        return ker * find_simple_submodule(sub);
      }
    }
  }

  // isotypic fallback: deterministic search for a vector generating a minimal
  // submodule
  std::vector<Matrix> vectors;
  for (size_t j = 0; j < dim; ++j) {
    Matrix v(ring, dim, 1);
    v.at(j, 0) = CycScalar::one(ring);
    vectors.push_back(v);
  }
  size_t nb = vectors.size();
  for (size_t i = 0; i < nb; ++i)
    for (size_t j = i + 1; j < nb; ++j) {
      vectors.push_back(vectors[i] + vectors[j]);
      vectors.push_back(vectors[i] - vectors[j]);
    }
  Lcg rng;
  for (int t = 0; t < 64; ++t) {
    Matrix v(ring, dim, 1);
    for (size_t j = 0; j < dim; ++j) v.at(j, 0) = CycScalar::integer(ring, static_cast<long>(rng.next() % 5) - 2);
    vectors.push_back(v);
  }
  size_t best = dim + 1;
  Matrix best_basis(ring, dim, 0);
  for (const auto& v : vectors) {
    Matrix sub = generated_submodule(mod, v);
    if (sub.cols() == 0 || sub.cols() >= best) continue;
    ModuleModel candidate = restrict_module(mod, sub);
    if (module_is_simple(candidate)) {
      best = sub.cols();
      best_basis = sub;
      if (best == 1) break;
    }
  }
  if (best > dim) fail(errc::split_field_required, "no simple submodule found; raise the cyclotomic level");
  return best_basis;
}

bool modules_isomorphic(const ModuleModel& a, const ModuleModel& b) {
  if (a.dim() != b.dim()) return false;
  auto homs = module_hom_basis(a, b);
  for (const auto& h : homs)
    if (h.rank() == a.dim()) return true;
  return false;
}

} // namespace

std::vector<Summand> decompose_semisimple(const ModuleModel& mod, std::vector<ModuleModel>& classes) {
  const RingPtr& ring = mod.ring;
  size_t dim0 = mod.dim();
  struct Piece {
    Matrix inclusion;
    size_t iso_class;
  };
  std::vector<Piece> pieces;

  Matrix ambient = Matrix::identity(ring, dim0);
  ModuleModel cur = mod;
  while (cur.dim() > 0) {
    Matrix sub = find_simple_submodule(cur);
    ModuleModel simple = restrict_module(cur, sub);
    size_t cls = classes.size();
    for (size_t i = 0; i < classes.size(); ++i)
      if (modules_isomorphic(simple, classes[i])) {
        cls = i;
        break;
      }
    if (cls == classes.size()) classes.push_back(simple);
    pieces.push_back({ambient * sub, cls});
    if (sub.cols() == cur.dim()) break;

    // complement: kernel of an idempotent onto the summand
    auto endos = module_hom_basis(cur, cur);
    size_t dim = cur.dim(), d = sub.cols();
    auto [pic, iotac] = sub.cokernel_projection();
    (void)iotac;
    size_t rows1 = dim * d, rows2 = pic.rows() * dim;
    Matrix lhs(ring, rows1 + rows2, endos.size());
    Matrix rhs(ring, rows1 + rows2, 1);
    for (size_t k = 0; k < endos.size(); ++k) {
      Matrix es = endos[k] * sub;
      for (size_t r = 0; r < dim; ++r)
        for (size_t c = 0; c < d; ++c) lhs.at(r * d + c, k) = es.at(r, c);
      Matrix pe = pic * endos[k];
      for (size_t r = 0; r < pic.rows(); ++r)
        for (size_t c = 0; c < dim; ++c) lhs.at(rows1 + r * dim + c, k) = pe.at(r, c);
    }
    for (size_t r = 0; r < dim; ++r)
      for (size_t c = 0; c < d; ++c) rhs.at(r * d + c, 0) = sub.at(r, c);
    auto sol = lhs.solve(rhs);
    if (!sol) fail(errc::internal, "no projection onto summand (module not semisimple?)");
    Matrix phi = Matrix::zero(ring, dim, dim);
    for (size_t k = 0; k < endos.size(); ++k)
      if (!sol->at(k, 0).is_zero()) phi = phi + endos[k] * sol->at(k, 0);
    Matrix complement = phi.kernel_basis();
    if (complement.cols() + d != dim) fail(errc::internal, "summand complement has wrong dimension");
    ambient = ambient * complement;
    cur = restrict_module(cur, complement);
  }

  // joint change of basis gives all projections at once
  Matrix change(ring, dim0, 0);
  for (const auto& pc : pieces) change = change.hstack(pc.inclusion);
  Matrix inv = change.inverse();
  std::vector<Summand> out;
  size_t offset = 0;
  for (const auto& pc : pieces) {
    Summand s;
    s.inclusion = pc.inclusion;
    s.projection = inv.submatrix(offset, 0, pc.inclusion.cols(), dim0);
    s.iso_class = pc.iso_class;
    out.push_back(s);
    offset += pc.inclusion.cols();
  }
  return out;
}

SimpleList find_simples(const AlgebraModel& alg) {
  SimpleList out;
  out.radical_basis = algebra_radical(alg);
  ModuleModel reg;
  reg.ring = alg.ring;
  reg.act = alg.left_mult;
  if (out.radical_basis.cols() == 0) {
    decompose_semisimple(reg, out.simples);
    return out;
  }
  QuotientModule quo = quotient_module(reg, out.radical_basis);
  decompose_semisimple(quo.mod, out.simples);
  return out;
}

// ---------------------------------------------------------------------------
// commutative primitive idempotents

std::vector<Matrix> commutative_primitive_idempotents(const AlgebraModel& alg) {
  const RingPtr& ring = alg.ring;
  size_t n = alg.dim();
  Matrix rad = algebra_radical(alg);

  ModuleModel reg;
  reg.ring = ring;
  reg.act = alg.left_mult;
  Matrix pi = Matrix::identity(ring, n), iota = Matrix::identity(ring, n);
  std::vector<Matrix> mult_bar = alg.left_mult;
  size_t nbar = n;
  if (rad.cols() > 0) {
    auto quo = quotient_module(reg, rad);
    pi = quo.projection;
    iota = quo.section;
    nbar = quo.mod.dim();
    mult_bar = quo.mod.act;
  }

  // refine joint eigenspaces of the multiplication operators
  std::vector<Matrix> blocks{Matrix::identity(ring, nbar)};
  for (size_t i = 0; i < n; ++i) {
    std::vector<Matrix> next;
    for (const auto& blk : blocks) {
      if (blk.cols() == 1) {
        next.push_back(blk);
        continue;
      }
      auto coords = blk.solve(mult_bar[i] * blk);
      if (!coords) fail(errc::internal, "block not invariant");
      Poly sf = poly_squarefree_part(matrix_minpoly(*coords), ring);
      if (poly_deg(sf) <= 1) {
        next.push_back(blk);
        continue;
      }
      auto roots = field_roots_impl(sf, ring);
      if (static_cast<long>(roots.size()) != poly_deg(sf))
        fail(errc::split_field_required, "semisimple quotient not split; raise the cyclotomic level");
      for (const auto& lambda : roots) {
        Matrix ker = (*coords - Matrix::scalar(ring, coords->rows(), lambda)).kernel_basis();
        if (ker.cols() > 0) next.push_back(blk * ker);
      }
    }
    blocks = std::move(next);
  }

  std::vector<Matrix> idems;
  for (const auto& blk : blocks) {
    if (blk.cols() != 1) fail(errc::split_field_required, "commutative block refinement incomplete");
    Matrix v = iota * blk;
    Matrix v2 = pi * alg.multiply(v, v);
    auto c = blk.solve(v2);
    if (!c || c->rows() != 1) fail(errc::internal, "idempotent normalization failed");
    CycScalar scale = c->at(0, 0);
    if (scale.is_zero()) fail(errc::internal, "nilpotent block in semisimple quotient");
    Matrix e = v * scale.inverse();
    for (int iter = 0;; ++iter) {
      Matrix e2 = alg.multiply(e, e);
      if (e2 == e) break;
      if (iter >= 64) fail(errc::internal, "idempotent lifting did not converge");
      e = e2 * CycScalar::integer(ring, 3) - alg.multiply(e2, e) * CycScalar::integer(ring, 2);
    }
    idems.push_back(e);
  }

  Matrix sum = Matrix::zero(ring, n, 1);
  for (const auto& e : idems) sum = sum + e;
  if (sum != alg.unit) fail(errc::internal, "primitive idempotents do not sum to 1");
  for (size_t i = 0; i < idems.size(); ++i)
    for (size_t j = i + 1; j < idems.size(); ++j)
      if (!alg.multiply(idems[i], idems[j]).is_zero()) fail(errc::internal, "idempotents not orthogonal");
  return idems;
}

} // namespace mtc
