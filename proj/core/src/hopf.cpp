#include "mtc/hopf.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "mtc/algdecomp.hpp"

namespace mtc {

namespace {

size_t ipow(size_t base, size_t e) {
  size_t r = 1;
  while (e--) r *= base;
  return r;
}

// multi-index decomposition, big-endian: index = ((i1*n + i2)*n + i3)...
std::vector<size_t> split_index(size_t idx, size_t n, size_t m) {
  std::vector<size_t> out(m);
  for (size_t t = m; t-- > 0;) {
    out[t] = idx % n;
    idx /= n;
  }
  return out;
}

} // namespace

Matrix HopfDatum::left_mult_op(const Matrix& x) const {
  Matrix op(ring, dim, dim);
  for (size_t i = 0; i < dim; ++i) {
    const CycScalar& c = x.at(i, 0);
    if (c.is_zero()) continue;
    for (size_t j = 0; j < dim; ++j)
      for (size_t k = 0; k < dim; ++k) {
        const CycScalar& m = mult.at(k, i * dim + j);
        if (!m.is_zero()) op.at(k, j) += c * m;
      }
  }
  return op;
}

Matrix HopfDatum::right_mult_op(const Matrix& x) const {
  Matrix op(ring, dim, dim);
  for (size_t j = 0; j < dim; ++j) {
    const CycScalar& c = x.at(j, 0);
    if (c.is_zero()) continue;
    for (size_t i = 0; i < dim; ++i)
      for (size_t k = 0; k < dim; ++k) {
        const CycScalar& m = mult.at(k, i * dim + j);
        if (!m.is_zero()) op.at(k, i) += c * m;
      }
  }
  return op;
}

Matrix HopfDatum::elem_mul(const Matrix& x, const Matrix& y, size_t m) const {
  size_t total = ipow(dim, m);
  if (x.rows() != total || y.rows() != total) fail(errc::shape_mismatch, "elem_mul tensor power");
  Matrix out(ring, total, 1);
  for (size_t a = 0; a < total; ++a) {
    const CycScalar& xa = x.at(a, 0);
    if (xa.is_zero()) continue;
    auto ai = split_index(a, dim, m);
    for (size_t b = 0; b < total; ++b) {
      const CycScalar& yb = y.at(b, 0);
      if (yb.is_zero()) continue;
      auto bi = split_index(b, dim, m);
      // product of basis tensors: tensor of columns mult[:, ai_t*dim + bi_t]
      CycScalar coeff = xa * yb;
      // accumulate the kron of the m columns, sparsely
      std::vector<std::pair<size_t, CycScalar>> acc{{0, coeff}};
      for (size_t t = 0; t < m; ++t) {
        std::vector<std::pair<size_t, CycScalar>> next;
        size_t col = ai[t] * dim + bi[t];
        for (size_t k = 0; k < dim; ++k) {
          const CycScalar& c = mult.at(k, col);
          if (c.is_zero()) continue;
          for (const auto& [idx, v] : acc) next.push_back({idx * dim + k, v * c});
        }
        acc = std::move(next);
        if (acc.empty()) break;
      }
      for (const auto& [idx, v] : acc) out.at(idx, 0) += v;
    }
  }
  return out;
}

Matrix HopfDatum::elem_unit(size_t m) const {
  Matrix out = unit;
  for (size_t t = 1; t < m; ++t) out = out.kron(unit);
  return out;
}

Matrix HopfDatum::lift_pair(const Matrix& r, size_t s1, size_t s2, size_t m) const {
  Matrix out(ring, ipow(dim, m), 1);
  for (size_t a = 0; a < dim; ++a)
    for (size_t b = 0; b < dim; ++b) {
      const CycScalar& c = r.at(a * dim + b, 0);
      if (c.is_zero()) continue;
      // assemble the tensor with unit in the remaining slots
      std::vector<std::pair<size_t, CycScalar>> acc{{0, c}};
      for (size_t t = 0; t < m; ++t) {
        std::vector<std::pair<size_t, CycScalar>> next;
        if (t == s1 || t == s2) {
          size_t which = (t == s1) ? a : b;
          for (const auto& [idx, v] : acc) next.push_back({idx * dim + which, v});
        } else {
          for (size_t k = 0; k < dim; ++k) {
            const CycScalar& u = unit.at(k, 0);
            if (u.is_zero()) continue;
            for (const auto& [idx, v] : acc) next.push_back({idx * dim + k, v * u});
          }
        }
        acc = std::move(next);
      }
      for (const auto& [idx, v] : acc) out.at(idx, 0) += v;
    }
  return out;
}

Matrix HopfDatum::counit_of(const Matrix& x) const { return counit * x; }

std::vector<size_t> HopfDatum::algebra_generators() const {
  // span closure of the subalgebra generated by the chosen elements
  auto closure = [&](const std::vector<size_t>& gens) {
    Matrix basis = unit;
    std::vector<Matrix> frontier{unit};
    auto try_add = [&](const Matrix& v) -> bool {
      Matrix probe = basis.hstack(v);
      if (probe.rank() == basis.cols() + 1) {
        basis = probe;
        return true;
      }
      return false;
    };
    for (size_t g : gens) {
      Matrix e(ring, dim, 1);
      e.at(g, 0) = CycScalar::one(ring);
      if (try_add(e)) frontier.push_back(e);
    }
    size_t head = 0;
    while (head < frontier.size()) {
      Matrix v = frontier[head++];
      for (size_t g : gens) {
        Matrix e(ring, dim, 1);
        e.at(g, 0) = CycScalar::one(ring);
        Matrix w = elem_mul(e, v);
        if (try_add(w)) frontier.push_back(w);
        w = elem_mul(v, e);
        if (try_add(w)) frontier.push_back(w);
      }
    }
    return basis.cols();
  };
  std::vector<size_t> gens;
  size_t have = closure(gens);
  for (size_t i = 0; i < dim && have < dim; ++i) {
    std::vector<size_t> trial = gens;
    trial.push_back(i);
    size_t got = closure(trial);
    if (got > have) {
      gens = trial;
      have = got;
    }
  }
  if (have != dim) fail(errc::internal, "generator search failed to span the algebra");
  return gens;
}

// ---------------------------------------------------------------------------
// axiom checks

namespace {

std::string idx2(size_t i, size_t j) { return "i=" + std::to_string(i) + " j=" + std::to_string(j); }
std::string idx3(size_t i, size_t j, size_t k) { return idx2(i, j) + " k=" + std::to_string(k); }

Matrix basis_elem(const RingPtr& ring, size_t dim, size_t i) {
  Matrix e(ring, dim, 1);
  e.at(i, 0) = CycScalar::one(ring);
  return e;
}

} // namespace

Report check_hopf_axioms(const HopfDatum& h) {
  Report rep;
  const RingPtr& ring = h.ring;
  size_t n = h.dim;

  // associativity
  {
    CheckResult c{"associativity", true, ""};
    for (size_t i = 0; i < n && c.pass; ++i)
      for (size_t j = 0; j < n && c.pass; ++j)
        for (size_t k = 0; k < n && c.pass; ++k) {
          Matrix bij = h.mult.submatrix(0, i * n + j, n, 1);
          Matrix bjk = h.mult.submatrix(0, j * n + k, n, 1);
          Matrix lhs = h.elem_mul(bij, basis_elem(ring, n, k));
          Matrix rhs = h.elem_mul(basis_elem(ring, n, i), bjk);
          if (lhs != rhs) {
            c.pass = false;
            c.witness = idx3(i, j, k);
          }
        }
    rep.checks.push_back(c);
  }
  // unitality
  {
    CheckResult c{"unitality", true, ""};
    Matrix lu = h.left_mult_op(h.unit);
    Matrix ru = h.right_mult_op(h.unit);
    if (!lu.is_identity() || !ru.is_identity()) c.pass = false;
    rep.checks.push_back(c);
  }
  // coassociativity
  {
    CheckResult c{"coassociativity", true, ""};
    for (size_t i = 0; i < n && c.pass; ++i) {
      Matrix di = h.comult.submatrix(0, i, n * n, 1);
      Matrix lhs(ring, n * n * n, 1), rhs(ring, n * n * n, 1);
      for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
          const CycScalar& cc = di.at(a * n + b, 0);
          if (cc.is_zero()) continue;
          Matrix da = h.comult.submatrix(0, a, n * n, 1);
          Matrix db = h.comult.submatrix(0, b, n * n, 1);
          for (size_t u = 0; u < n * n; ++u) {
            if (!da.at(u, 0).is_zero()) lhs.at(u * n + b, 0) += cc * da.at(u, 0);
            if (!db.at(u, 0).is_zero()) rhs.at(a * n * n + u, 0) += cc * db.at(u, 0);
          }
        }
      if (lhs != rhs) {
        c.pass = false;
        c.witness = "i=" + std::to_string(i);
      }
    }
    rep.checks.push_back(c);
  }
  // counit law
  {
    CheckResult c{"counit", true, ""};
    for (size_t i = 0; i < n && c.pass; ++i) {
      Matrix di = h.comult.submatrix(0, i, n * n, 1);
      Matrix left(ring, n, 1), right(ring, n, 1);
      for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
          const CycScalar& cc = di.at(a * n + b, 0);
          if (cc.is_zero()) continue;
          left.at(b, 0) += cc * h.counit.at(0, a);
          right.at(a, 0) += cc * h.counit.at(0, b);
        }
      if (left != basis_elem(ring, n, i) || right != basis_elem(ring, n, i)) {
        c.pass = false;
        c.witness = "i=" + std::to_string(i);
      }
    }
    rep.checks.push_back(c);
  }
  // bialgebra compatibility
  {
    CheckResult c{"bialgebra", true, ""};
    for (size_t i = 0; i < n && c.pass; ++i)
      for (size_t j = 0; j < n && c.pass; ++j) {
        Matrix bij = h.mult.submatrix(0, i * n + j, n, 1);
        Matrix dprod(ring, n * n, 1);
        for (size_t k = 0; k < n; ++k) {
          const CycScalar& cc = bij.at(k, 0);
          if (cc.is_zero()) continue;
          Matrix dk = h.comult.submatrix(0, k, n * n, 1);
          for (size_t u = 0; u < n * n; ++u)
            if (!dk.at(u, 0).is_zero()) dprod.at(u, 0) += cc * dk.at(u, 0);
        }
        Matrix di = h.comult.submatrix(0, i, n * n, 1);
        Matrix dj = h.comult.submatrix(0, j, n * n, 1);
        Matrix prod = h.elem_mul(di, dj, 2);
        if (dprod != prod) {
          c.pass = false;
          c.witness = idx2(i, j);
        }
        // counit multiplicativity
        CycScalar el = h.counit_of(bij).at(0, 0);
        CycScalar er = h.counit.at(0, i) * h.counit.at(0, j);
        if (el != er) {
          c.pass = false;
          c.witness = idx2(i, j) + " (counit)";
        }
      }
    Matrix d1 = Matrix::zero(ring, n * n, 1);
    for (size_t k = 0; k < n; ++k) {
      const CycScalar& cc = h.unit.at(k, 0);
      if (cc.is_zero()) continue;
      Matrix dk = h.comult.submatrix(0, k, n * n, 1);
      for (size_t u = 0; u < n * n; ++u)
        if (!dk.at(u, 0).is_zero()) d1.at(u, 0) += cc * dk.at(u, 0);
    }
    if (d1 != h.unit.kron(h.unit)) {
      c.pass = false;
      c.witness = "Delta(1) != 1 tensor 1";
    }
    if (!h.counit_of(h.unit).at(0, 0).is_one()) {
      c.pass = false;
      c.witness = "eps(1) != 1";
    }
    rep.checks.push_back(c);
  }
  // antipode law
  {
    CheckResult c{"antipode", true, ""};
    for (size_t i = 0; i < n && c.pass; ++i) {
      Matrix di = h.comult.submatrix(0, i, n * n, 1);
      Matrix left(ring, n, 1), right(ring, n, 1);
      for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
          const CycScalar& cc = di.at(a * n + b, 0);
          if (cc.is_zero()) continue;
          Matrix sa = h.antipode.submatrix(0, a, n, 1);
          Matrix sb = h.antipode.submatrix(0, b, n, 1);
          Matrix t1 = h.elem_mul(sa, basis_elem(ring, n, b));
          Matrix t2 = h.elem_mul(basis_elem(ring, n, a), sb);
          for (size_t k = 0; k < n; ++k) {
            left.at(k, 0) += cc * t1.at(k, 0);
            right.at(k, 0) += cc * t2.at(k, 0);
          }
        }
      Matrix expect = h.unit * h.counit.at(0, i);
      if (left != expect || right != expect) {
        c.pass = false;
        c.witness = "i=" + std::to_string(i);
      }
    }
    rep.checks.push_back(c);
  }
  // antipode invertible
  {
    CheckResult c{"antipode_invertible", h.antipode.rank() == n, ""};
    rep.checks.push_back(c);
  }
  return rep;
}

Matrix drinfeld_element(const HopfDatum& h, const Matrix& rmatrix) {
  size_t n = h.dim;
  Matrix u(h.ring, n, 1);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const CycScalar& c = rmatrix.at(i * n + j, 0);
      if (c.is_zero()) continue;
      Matrix sj = h.antipode.submatrix(0, j, n, 1);
      Matrix prod = h.elem_mul(sj, basis_elem(h.ring, n, i));
      for (size_t k = 0; k < n; ++k) u.at(k, 0) += c * prod.at(k, 0);
    }
  return u;
}

namespace {

Matrix flip_square(const Matrix& r, size_t n) {
  Matrix out(r.ring(), n * n, 1);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out.at(j * n + i, 0) = r.at(i * n + j, 0);
  return out;
}

// operator of left multiplication by an element of H tensor H
Matrix pair_left_op(const HopfDatum& h, const Matrix& r) {
  size_t n = h.dim;
  Matrix op(h.ring, n * n, n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const CycScalar& c = r.at(i * n + j, 0);
      if (c.is_zero()) continue;
      Matrix li(h.ring, n, n), lj(h.ring, n, n);
      for (size_t a = 0; a < n; ++a)
        for (size_t k = 0; k < n; ++k) {
          li.at(k, a) = h.mult.at(k, i * n + a);
          lj.at(k, a) = h.mult.at(k, j * n + a);
        }
      op = op + li.kron(lj) * c;
    }
  return op;
}

} // namespace

Report check_ribbon(const HopfDatum& h, const RibbonDatum& r) {
  Report rep;
  const RingPtr& ring = h.ring;
  size_t n = h.dim;
  const Matrix& R = r.rmatrix;

  // hexagon 1: (Delta tensor id) R = R13 R23
  {
    CheckResult c{"hexagon_delta_id", true, ""};
    Matrix lhs(ring, n * n * n, 1);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        const CycScalar& cc = R.at(i * n + j, 0);
        if (cc.is_zero()) continue;
        Matrix di = h.comult.submatrix(0, i, n * n, 1);
        for (size_t u = 0; u < n * n; ++u)
          if (!di.at(u, 0).is_zero()) lhs.at(u * n + j, 0) += cc * di.at(u, 0);
      }
    Matrix rhs = h.elem_mul(h.lift_pair(R, 0, 2, 3), h.lift_pair(R, 1, 2, 3), 3);
    c.pass = (lhs == rhs);
    rep.checks.push_back(c);
  }
  // hexagon 2: (id tensor Delta) R = R13 R12
  {
    CheckResult c{"hexagon_id_delta", true, ""};
    Matrix lhs(ring, n * n * n, 1);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        const CycScalar& cc = R.at(i * n + j, 0);
        if (cc.is_zero()) continue;
        Matrix dj = h.comult.submatrix(0, j, n * n, 1);
        for (size_t u = 0; u < n * n; ++u)
          if (!dj.at(u, 0).is_zero()) lhs.at(i * n * n + u, 0) += cc * dj.at(u, 0);
      }
    Matrix rhs = h.elem_mul(h.lift_pair(R, 0, 2, 3), h.lift_pair(R, 0, 1, 3), 3);
    c.pass = (lhs == rhs);
    rep.checks.push_back(c);
  }
  // intertwining: R Delta(x) = Delta^op(x) R for basis x
  {
    CheckResult c{"r_intertwines", true, ""};
    for (size_t i = 0; i < n && c.pass; ++i) {
      Matrix di = h.comult.submatrix(0, i, n * n, 1);
      Matrix diop = flip_square(di, n);
      Matrix lhs = h.elem_mul(R, di, 2);
      Matrix rhs = h.elem_mul(diop, R, 2);
      if (lhs != rhs) {
        c.pass = false;
        c.witness = "i=" + std::to_string(i);
      }
    }
    rep.checks.push_back(c);
  }
  // R invertible
  {
    CheckResult c{"r_invertible", pair_left_op(h, R).rank() == n * n, ""};
    rep.checks.push_back(c);
  }
  // (S tensor S) R = R
  {
    CheckResult c{"antipode_fixes_r", true, ""};
    Matrix ssr(ring, n * n, 1);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        const CycScalar& cc = R.at(i * n + j, 0);
        if (cc.is_zero()) continue;
        Matrix si = h.antipode.submatrix(0, i, n, 1);
        Matrix sj = h.antipode.submatrix(0, j, n, 1);
        Matrix t = si.kron(sj);
        for (size_t u = 0; u < n * n; ++u)
          if (!t.at(u, 0).is_zero()) ssr.at(u, 0) += cc * t.at(u, 0);
      }
    c.pass = (ssr == R);
    rep.checks.push_back(c);
  }

  const Matrix& v = r.ribbon;
  Matrix u = r.drinfeld.rows() == n ? r.drinfeld : drinfeld_element(h, R);
  // cached drinfeld element consistency
  {
    CheckResult c{"drinfeld_cached", u == drinfeld_element(h, R), ""};
    rep.checks.push_back(c);
  }
  // centrality
  {
    CheckResult c{"ribbon_central", h.left_mult_op(v) == h.right_mult_op(v), ""};
    rep.checks.push_back(c);
  }
  // invertible
  {
    CheckResult c{"ribbon_invertible", h.left_mult_op(v).rank() == n, ""};
    rep.checks.push_back(c);
  }
  // S(v) = v
  {
    CheckResult c{"ribbon_s_fixed", h.antipode * v == v, ""};
    rep.checks.push_back(c);
  }
  // eps(v) = 1
  {
    CheckResult c{"ribbon_counit_one", h.counit_of(v).at(0, 0).is_one(), ""};
    rep.checks.push_back(c);
  }
  // v^2 = u S(u)
  {
    Matrix su = h.antipode * u;
    CheckResult c{"ribbon_square", h.elem_mul(v, v) == h.elem_mul(u, su), ""};
    rep.checks.push_back(c);
  }
  // Delta(v) = (R21 R)^{-1} (v tensor v)
  {
    CheckResult c{"ribbon_comult", true, ""};
    Matrix dv(ring, n * n, 1);
    for (size_t k = 0; k < n; ++k) {
      const CycScalar& cc = v.at(k, 0);
      if (cc.is_zero()) continue;
      Matrix dk = h.comult.submatrix(0, k, n * n, 1);
      for (size_t u2 = 0; u2 < n * n; ++u2)
        if (!dk.at(u2, 0).is_zero()) dv.at(u2, 0) += cc * dk.at(u2, 0);
    }
    Matrix monodromy = h.elem_mul(flip_square(R, n), R, 2);
    // solve monodromy * dv_target = v tensor v, i.e. M * Delta(v) = v tensor v
    Matrix rhs = v.kron(v);
    Matrix lhs = pair_left_op(h, monodromy) * dv;
    c.pass = (lhs == rhs);
    rep.checks.push_back(c);
  }
  return rep;
}

bool factorizability_precheck(const HopfDatum& h, const RibbonDatum& r) {
  size_t n = h.dim;
  Matrix mono = h.elem_mul(flip_square(r.rmatrix, n), r.rmatrix, 2);
  Matrix dmap(h.ring, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) dmap.at(j, i) = mono.at(i * n + j, 0);
  return dmap.rank() == n;
}

std::vector<Matrix> find_ribbon_elements(const HopfDatum& h, const Matrix& rmatrix) {
  const RingPtr& ring = h.ring;
  size_t n = h.dim;
  RibbonDatum probe{rmatrix, Matrix(ring, n, 1), Matrix(ring, 0, 0)};

  Matrix u = drinfeld_element(h, rmatrix);
  Matrix w = h.elem_mul(u, h.antipode * u); // v^2 target, central

  // center of H
  Matrix stacked(ring, 0, n);
  for (size_t i = 0; i < n; ++i) {
    Matrix e = basis_elem(ring, n, i);
    stacked = stacked.rows() == 0 ? (h.left_mult_op(e) - h.right_mult_op(e))
                                  : stacked.vstack(h.left_mult_op(e) - h.right_mult_op(e));
  }
  Matrix zbasis = stacked.kernel_basis(); // n x m
  size_t m = zbasis.cols();

  // center as an algebra
  AlgebraModel zalg;
  zalg.ring = ring;
  for (size_t a = 0; a < m; ++a) {
    Matrix za = zbasis.submatrix(0, a, n, 1);
    Matrix col(ring, n, m);
    for (size_t b = 0; b < m; ++b) {
      Matrix zb = zbasis.submatrix(0, b, n, 1);
      Matrix prod = h.elem_mul(za, zb);
      for (size_t k = 0; k < n; ++k) col.at(k, b) = prod.at(k, 0);
    }
    auto coords = zbasis.solve(col);
    if (!coords) fail(errc::internal, "center not closed under multiplication");
    zalg.left_mult.push_back(*coords);
  }
  auto unit_coords = zbasis.solve(h.unit);
  if (!unit_coords) fail(errc::internal, "unit not central");
  zalg.unit = *unit_coords;

  auto w_coords_opt = zbasis.solve(w);
  if (!w_coords_opt) return {};
  Matrix w_coords = *w_coords_opt;

  auto idems = commutative_primitive_idempotents(zalg);

  // per-block square roots of w
  std::vector<Matrix> block_roots; // in center coordinates
  for (const auto& e : idems) {
    Matrix we = zalg.multiply(w_coords, e);
    // residue eigenvalue: trace of multiplication on the block / block dim
    Matrix block = zalg.op(e); // projection-ish: image = block
    // block basis
    Matrix img(ring, m, 0);
    for (size_t c2 = 0; c2 < m; ++c2) {
      Matrix col = block.submatrix(0, c2, m, 1);
      Matrix probe2 = img.hstack(col);
      if (probe2.rank() == img.cols() + 1) img = probe2;
    }
    size_t bd = img.cols();
    if (bd == 0) continue;
    auto opw = img.solve(zalg.op(we) * img);
    if (!opw) fail(errc::internal, "block not invariant");
    CycScalar tr = CycScalar::zero(ring);
    for (size_t t = 0; t < bd; ++t) tr += opw->at(t, t);
    CycScalar lambda = tr * CycScalar::rational(ring, Rat(1, static_cast<long>(bd)));
    if (lambda.is_zero()) return {}; // w not invertible: no ribbon
    auto sq = field_sqrt(lambda);
    if (!sq) return {}; // no square root in the field: no ribbon over this base
    // Newton iteration within the block: x <- (x + w/x)/2, seeded with sq * e
    Matrix x = e * *sq;
    CycScalar half = CycScalar::rational(ring, Rat(1, 2));
    for (int iter = 0;; ++iter) {
      Matrix x2 = zalg.multiply(x, x);
      if (x2 == we) break;
      if (iter >= 64) fail(errc::internal, "block square root did not converge");
      // solve x * y = we within the block: use operator of x plus identity
      // outside the block (x is invertible only inside)
      Matrix opx = zalg.op(x) + zalg.op(zalg.unit) - zalg.op(e);
      auto y = opx.solve(we);
      if (!y) fail(errc::internal, "block division failed");
      x = (x + zalg.multiply(e, *y)) * half;
    }
    block_roots.push_back(x);
  }

  size_t blocks = block_roots.size();
  std::vector<Matrix> found;
  for (size_t mask = 0; mask < (size_t(1) << blocks); ++mask) {
    Matrix v_coords(ring, m, 1);
    for (size_t b = 0; b < blocks; ++b) {
      Matrix term = block_roots[b];
      if (mask & (size_t(1) << b)) term = -term;
      v_coords = v_coords + term;
    }
    Matrix v = zbasis * v_coords;
    probe.ribbon = v;
    probe.drinfeld = u;
    Report rep = check_ribbon(h, probe);
    if (rep.all_pass()) found.push_back(v);
  }
  return found;
}

// ---------------------------------------------------------------------------
// Drinfeld double

std::pair<HopfDatum, Matrix> drinfeld_double(const HopfDatum& h) {
  const RingPtr& ring = h.ring;
  size_t n = h.dim;
  size_t N = n * n;
  HopfDatum d;
  d.ring = ring;
  d.dim = N;
  d.name = "double(" + h.name + ")";

  Matrix s_inv = h.antipode.inverse();

  // Delta^2 legs of each basis element: list of (a,b,c, coeff)
  std::vector<std::vector<std::tuple<size_t, size_t, size_t, CycScalar>>> legs(n);
  for (size_t i = 0; i < n; ++i) {
    Matrix di = h.comult.submatrix(0, i, n * n, 1);
    for (size_t a = 0; a < n; ++a) {
      for (size_t bc = 0; bc < n; ++bc) {
        const CycScalar& c1 = di.at(a * n + bc, 0);
        if (c1.is_zero()) continue;
        Matrix dbc = h.comult.submatrix(0, bc, n * n, 1);
        for (size_t b = 0; b < n; ++b)
          for (size_t c = 0; c < n; ++c) {
            const CycScalar& c2 = dbc.at(b * n + c, 0);
            if (!c2.is_zero()) legs[i].push_back({a, b, c, c1 * c2});
          }
      }
    }
  }

  // multiplication: (f tensor b_i)(g tensor b_j)
  //   = sum f * (b_i1 -> g <- S^{-1} b_i3) tensor b_i2 b_j
  // with (x -> g <- y)(c) = g(y c x). Index I = p*n + i means b_p^* tensor b_i.
  d.mult = Matrix(ring, N, N * N);
  for (size_t p = 0; p < n; ++p)
    for (size_t i = 0; i < n; ++i)
      for (size_t g = 0; g < n; ++g)
        for (size_t j = 0; j < n; ++j) {
          size_t colI = (p * n + i) * N + (g * n + j);
          for (const auto& [a, b, c, coeff] : legs[i]) {
            // transformed functional g' = b_a -> b_g^* <- S^{-1}(b_c):
            // g'(b_t) = b_g^*( S^{-1}(b_c) b_t b_a )
            Matrix sc = s_inv.submatrix(0, c, n, 1);
            // op: x -> sc * x * b_a
            Matrix op = h.left_mult_op(sc) * h.right_mult_op(basis_elem(ring, n, a));
            // coefficients of g' in dual basis: g'_t = op[g][t]
            // convolution product (b_p^* * g')_t = sum_{u,v} Delta(b_t)[u,v] p^*_u g'_v
            Matrix prod_b = h.elem_mul(basis_elem(ring, n, b), basis_elem(ring, n, j));
            for (size_t t = 0; t < n; ++t) {
              Matrix dt = h.comult.submatrix(0, t, n * n, 1);
              CycScalar fg = CycScalar::zero(ring);
              for (size_t v2 = 0; v2 < n; ++v2) {
                const CycScalar& dtc = dt.at(p * n + v2, 0);
                if (dtc.is_zero()) continue;
                const CycScalar& gv = op.at(g, v2);
                if (gv.is_zero()) continue;
                fg += dtc * gv;
              }
              if (fg.is_zero()) continue;
              for (size_t k = 0; k < n; ++k) {
                const CycScalar& pb = prod_b.at(k, 0);
                if (pb.is_zero()) continue;
                d.mult.at(t * n + k, colI) += coeff * fg * pb;
              }
            }
          }
        }

  // unit: eps tensor 1
  d.unit = Matrix(ring, N, 1);
  for (size_t p = 0; p < n; ++p) {
    const CycScalar& ep = h.counit.at(0, p);
    if (ep.is_zero()) continue;
    for (size_t k = 0; k < n; ++k) {
      const CycScalar& uk = h.unit.at(k, 0);
      if (!uk.is_zero()) d.unit.at(p * n + k, 0) += ep * uk;
    }
  }

  // comultiplication (cop on the dual factor):
  // Delta_D(b_p^* tensor b_i) = sum (b_p2^* tensor b_i1) tensor (b_p1^* tensor b_i2)
  // where Delta_{H*}(b_p^*) = sum over (u,v) with mult coeff: b_p^*(xy) splits
  // through mult structure constants: (b_p^*)_(1) tensor (b_p^*)_(2) =
  // sum_{u,v} mult[p][(u,v)] b_u^* tensor b_v^*.
  d.comult = Matrix(ring, N * N, N);
  for (size_t p = 0; p < n; ++p)
    for (size_t i = 0; i < n; ++i) {
      size_t col = p * n + i;
      Matrix di = h.comult.submatrix(0, i, n * n, 1);
      for (size_t u = 0; u < n; ++u)
        for (size_t v2 = 0; v2 < n; ++v2) {
          const CycScalar& mc = h.mult.at(p, u * n + v2);
          if (mc.is_zero()) continue;
          for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
              const CycScalar& dc = di.at(a * n + b, 0);
              if (dc.is_zero()) continue;
              // cop: second dual leg first: (b_v^* tensor b_a) tensor (b_u^* tensor b_b)
              size_t row = (v2 * n + a) * N + (u * n + b);
              d.comult.at(row, col) += mc * dc;
            }
        }
    }

  // counit: f tensor a -> f(1) eps(a)
  d.counit = Matrix(ring, 1, N);
  for (size_t p = 0; p < n; ++p)
    for (size_t i = 0; i < n; ++i) {
      const CycScalar& u1 = h.unit.at(p, 0);
      if (u1.is_zero()) continue;
      d.counit.at(0, p * n + i) = u1 * h.counit.at(0, i);
    }

  // antipode: solved from the convolution-inverse axiom (unique when it exists)
  {
    // unknown S as N x N; constraint: mult (S tensor id) Delta = unit counit
    // treat columns of S independently is not possible (Delta mixes), so solve
    // the full linear system on vec(S).
    Matrix lhs(ring, N * N, N * N);
    Matrix rhs(ring, N * N, 1);
    for (size_t col = 0; col < N; ++col) {
      Matrix dc = d.comult.submatrix(0, col, N * N, 1);
      // sum_{a,b} dc[a,b] * (S(b_a) * b_b) = unit * counit(col)
      // linear in S: coefficient of S[t][a]: sum_b dc[a,b] * mult(b_t, b_b)
      for (size_t a = 0; a < N; ++a)
        for (size_t b = 0; b < N; ++b) {
          const CycScalar& c = dc.at(a * N + b, 0);
          if (c.is_zero()) continue;
          for (size_t t = 0; t < N; ++t) {
            // mult(b_t, b_b) contributes to output k
            for (size_t k = 0; k < N; ++k) {
              const CycScalar& mk = d.mult.at(k, t * N + b);
              if (mk.is_zero()) continue;
              lhs.at(col * N + k, t * N + a) += c * mk;
            }
          }
        }
      for (size_t k = 0; k < N; ++k) rhs.at(col * N + k, 0) = d.unit.at(k, 0) * d.counit.at(0, col);
    }
    auto svec = lhs.solve(rhs);
    if (!svec) fail(errc::internal, "double antipode equation unsolvable");
    d.antipode = Matrix(ring, N, N);
    for (size_t t = 0; t < N; ++t)
      for (size_t a = 0; a < N; ++a) d.antipode.at(t, a) = svec->at(t * N + a, 0);
  }

  d.basis_labels.resize(N);
  for (size_t p = 0; p < n; ++p)
    for (size_t i = 0; i < n; ++i)
      d.basis_labels[p * n + i] =
          (h.basis_labels.empty() ? "f" + std::to_string(p) : h.basis_labels[p] + "*") + "." +
          (h.basis_labels.empty() ? "b" + std::to_string(i) : h.basis_labels[i]);

  // canonical R = sum_i (eps tensor b_i) tensor (b_i^* tensor 1)
  Matrix R(ring, N * N, 1);
  for (size_t i = 0; i < n; ++i) {
    for (size_t p = 0; p < n; ++p) {
      const CycScalar& ep = h.counit.at(0, p);
      if (ep.is_zero()) continue;
      for (size_t k = 0; k < n; ++k) {
        const CycScalar& uk = h.unit.at(k, 0);
        if (uk.is_zero()) continue;
        size_t first = p * n + i;
        size_t second = i * n + k;
        R.at(first * N + second, 0) += ep * uk;
      }
    }
  }
  return {d, R};
}

// ---------------------------------------------------------------------------
// builtins

namespace {

HopfDatum group_hopf(const RingPtr& ring, size_t n, const std::string& name) {
  HopfDatum h;
  h.ring = ring;
  h.dim = n;
  h.name = name;
  h.mult = Matrix(ring, n, n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) h.mult.at((i + j) % n, i * n + j) = CycScalar::one(ring);
  h.unit = Matrix(ring, n, 1);
  h.unit.at(0, 0) = CycScalar::one(ring);
  h.comult = Matrix(ring, n * n, n);
  for (size_t i = 0; i < n; ++i) h.comult.at(i * n + i, i) = CycScalar::one(ring);
  h.counit = Matrix(ring, 1, n);
  for (size_t i = 0; i < n; ++i) h.counit.at(0, i) = CycScalar::one(ring);
  h.antipode = Matrix(ring, n, n);
  for (size_t i = 0; i < n; ++i) h.antipode.at((n - i) % n, i) = CycScalar::one(ring);
  for (size_t i = 0; i < n; ++i) h.basis_labels.push_back("g^" + std::to_string(i));
  return h;
}

HopfDatum sweedler_hopf(const RingPtr& ring) {
  // basis {1, g, x, gx}: g^2=1, x^2=0, xg=-gx; Delta g = g tensor g,
  // Delta x = x tensor 1 + g tensor x; S(g)=g, S(x)=-gx
  size_t n = 4;
  HopfDatum h;
  h.ring = ring;
  h.dim = n;
  h.name = "sweedler4";
  h.basis_labels = {"1", "g", "x", "gx"};
  auto mul = [&](size_t i, size_t j) -> std::pair<int, long> {
    int gi = (i == 1 || i == 3), xi = (i == 2 || i == 3);
    int gj = (j == 1 || j == 3), xj = (j == 2 || j == 3);
    if (xi && xj) return {-1, 0};
    long sign = (xi && gj) ? -1 : 1;
    int k = ((gi + gj) % 2) + 2 * (xi + xj);
    return {k, sign};
  };
  h.mult = Matrix(ring, n, n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      auto [k, s] = mul(i, j);
      if (k >= 0) h.mult.at(static_cast<size_t>(k), i * n + j) = CycScalar::integer(ring, s);
    }
  h.unit = Matrix(ring, n, 1);
  h.unit.at(0, 0) = CycScalar::one(ring);
  h.comult = Matrix(ring, n * n, n);
  CycScalar one = CycScalar::one(ring);
  // Delta 1 = 1x1; Delta g = gxg; Delta x = x tensor 1 + g tensor x;
  // Delta gx = (g tensor g)(x tensor 1 + g tensor x) = gx tensor g + 1 tensor gx
  h.comult.at(0 * n + 0, 0) = one;
  h.comult.at(1 * n + 1, 1) = one;
  h.comult.at(2 * n + 0, 2) = one;
  h.comult.at(1 * n + 2, 2) = one;
  h.comult.at(3 * n + 1, 3) = one;
  h.comult.at(0 * n + 3, 3) = one;
  h.counit = Matrix(ring, 1, n);
  h.counit.at(0, 0) = one;
  h.counit.at(0, 1) = one;
  h.antipode = Matrix(ring, n, n);
  h.antipode.at(0, 0) = one;
  h.antipode.at(1, 1) = one;
  h.antipode.at(3, 2) = -one; // S(x) = -gx
  h.antipode.at(2, 3) = one;  // S(gx) = S(x)S(g) = -gxg = x
  return h;
}

} // namespace

std::pair<HopfDatum, RibbonDatum> builtin(const std::string& name, const std::vector<long>& params) {
  if (name == "trivial") return builtin("group", {1});
  if (name == "group") {
    if (params.empty()) fail(errc::bad_params, "group builtin needs n");
    long n = params[0];
    long s = params.size() > 1 ? params[1] : 0;
    long t = params.size() > 2 ? params[2] : 0;
    if (n < 1 || n > 64) fail(errc::bad_params, "group order out of range");
    unsigned level = (s == 0 && t == 0) ? 1 : static_cast<unsigned>(n);
    auto ring = CycRing::make(level);
    HopfDatum h = group_hopf(ring, static_cast<size_t>(n), "group" + std::to_string(n));
    RibbonDatum r;
    size_t nn = static_cast<size_t>(n);
    if (s == 0 && t == 0) {
      r.rmatrix = h.unit.kron(h.unit);
      r.ribbon = h.unit;
    } else {
      // character idempotents e_a = (1/n) sum_j zeta^{-aj} g^j
      Matrix idem(ring, nn, nn);
      for (size_t a = 0; a < nn; ++a)
        for (size_t j = 0; j < nn; ++j)
          idem.at(j, a) = CycScalar::zeta_pow(ring, -static_cast<long>(a * j)) *
                          CycScalar::rational(ring, Rat(1, n));
      r.rmatrix = Matrix(ring, nn * nn, 1);
      for (size_t a = 0; a < nn; ++a)
        for (size_t b = 0; b < nn; ++b) {
          CycScalar coeff = CycScalar::zeta_pow(ring, s * static_cast<long>(a * b));
          Matrix ea = idem.submatrix(0, a, nn, 1);
          Matrix eb = idem.submatrix(0, b, nn, 1);
          Matrix term = ea.kron(eb);
          for (size_t u = 0; u < nn * nn; ++u)
            if (!term.at(u, 0).is_zero()) r.rmatrix.at(u, 0) += coeff * term.at(u, 0);
        }
      r.ribbon = Matrix(ring, nn, 1);
      for (size_t a = 0; a < nn; ++a) {
        CycScalar coeff = CycScalar::zeta_pow(ring, t * static_cast<long>(a * a));
        Matrix ea = idem.submatrix(0, a, nn, 1);
        for (size_t u = 0; u < nn; ++u)
          if (!ea.at(u, 0).is_zero()) r.ribbon.at(u, 0) += coeff * ea.at(u, 0);
      }
    }
    r.drinfeld = drinfeld_element(h, r.rmatrix);
    return {h, r};
  }
  if (name == "sweedler4") {
    auto ring = CycRing::make(1);
    HopfDatum h = sweedler_hopf(ring);
    RibbonDatum r;
    size_t n = 4;
    // R_0 = e_+ tensor 1 + e_- tensor g with e_pm = (1 pm g)/2
    r.rmatrix = Matrix(ring, n * n, 1);
    Rat half(1, 2);
    // e+ tensor 1 = (1/2)(1 tensor 1 + g tensor 1)
    r.rmatrix.at(0 * n + 0, 0) += CycScalar::rational(ring, half);
    r.rmatrix.at(1 * n + 0, 0) += CycScalar::rational(ring, half);
    // e- tensor g = (1/2)(1 tensor g - g tensor g)
    r.rmatrix.at(0 * n + 1, 0) += CycScalar::rational(ring, half);
    r.rmatrix.at(1 * n + 1, 0) -= CycScalar::rational(ring, half);
    auto ribbons = find_ribbon_elements(h, r.rmatrix);
    if (ribbons.empty()) fail(errc::no_ribbon, "sweedler4 has no ribbon element for R0");
    r.ribbon = ribbons[0];
    r.drinfeld = drinfeld_element(h, r.rmatrix);
    return {h, r};
  }
  if (name == "double") fail(errc::bad_params, "use builtin_double(base)");
  fail(errc::bad_params, "unknown builtin: " + name);
}

std::pair<HopfDatum, RibbonDatum> builtin_double(const std::string& base_name, const std::vector<long>& params) {
  auto [base, base_r] = builtin(base_name, params);
  (void)base_r;
  auto [dh, rmat] = drinfeld_double(base);
  auto ribbons = find_ribbon_elements(dh, rmat);
  if (ribbons.empty()) fail(errc::no_ribbon, "double of " + base_name + " has no ribbon element over this field");
  RibbonDatum r;
  r.rmatrix = rmat;
  r.ribbon = ribbons[0];
  r.drinfeld = drinfeld_element(dh, rmat);
  return {dh, r};
}

// ---------------------------------------------------------------------------
// HOPF v1 format

void save_hopf(std::ostream& out, const HopfDatum& h, const RibbonDatum& r) {
  out << "HOPF v1\n";
  out << "NAME " << h.name << "\n";
  out << "DIM " << h.dim << "\n";
  out << "LEVEL " << h.ring->level() << "\n";
  for (size_t i = 0; i < h.basis_labels.size(); ++i)
    if (!h.basis_labels[i].empty()) out << "BASIS " << i << " " << h.basis_labels[i] << "\n";
  size_t n = h.dim;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        const CycScalar& c = h.mult.at(k, i * n + j);
        if (!c.is_zero()) out << "MULT " << i << " " << j << " " << k << " " << c.to_string() << "\n";
      }
  for (size_t k = 0; k < n; ++k) {
    const CycScalar& c = h.unit.at(k, 0);
    if (!c.is_zero()) out << "UNIT " << k << " " << c.to_string() << "\n";
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) {
        const CycScalar& c = h.comult.at(a * n + b, i);
        if (!c.is_zero()) out << "COMULT " << i << " " << a << " " << b << " " << c.to_string() << "\n";
      }
  for (size_t i = 0; i < n; ++i) {
    const CycScalar& c = h.counit.at(0, i);
    if (!c.is_zero()) out << "COUNIT " << i << " " << c.to_string() << "\n";
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      const CycScalar& c = h.antipode.at(k, i);
      if (!c.is_zero()) out << "ANTIPODE " << i << " " << k << " " << c.to_string() << "\n";
    }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const CycScalar& c = r.rmatrix.at(i * n + j, 0);
      if (!c.is_zero()) out << "RMATRIX " << i << " " << j << " " << c.to_string() << "\n";
    }
  for (size_t i = 0; i < n; ++i) {
    const CycScalar& c = r.ribbon.at(i, 0);
    if (!c.is_zero()) out << "RIBBON " << i << " " << c.to_string() << "\n";
  }
}

std::pair<HopfDatum, RibbonDatum> load_hopf(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "HOPF v1") fail(errc::syntax_error, "missing HOPF v1 header");
  HopfDatum h;
  RibbonDatum r;
  std::string name;
  size_t dim = 0;
  unsigned level = 0;
  std::vector<std::string> pending;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "NAME") {
      ls >> name;
    } else if (tag == "DIM") {
      ls >> dim;
    } else if (tag == "LEVEL") {
      ls >> level;
    } else {
      pending.push_back(line);
    }
  }
  if (dim == 0 || level == 0) fail(errc::syntax_error, "HOPF header incomplete");
  if (dim > 64) fail(errc::bad_params, "dimension above the desk-scale bound 64");
  auto ring = CycRing::make(level);
  h.ring = ring;
  h.dim = dim;
  h.name = name;
  h.mult = Matrix(ring, dim, dim * dim);
  h.unit = Matrix(ring, dim, 1);
  h.comult = Matrix(ring, dim * dim, dim);
  h.counit = Matrix(ring, 1, dim);
  h.antipode = Matrix(ring, dim, dim);
  h.basis_labels.assign(dim, "");
  r.rmatrix = Matrix(ring, dim * dim, 1);
  r.ribbon = Matrix(ring, dim, 1);
  for (const auto& entry : pending) {
    std::istringstream ls(entry);
    std::string tag;
    ls >> tag;
    auto rest_scalar = [&]() {
      std::string rest;
      std::getline(ls, rest);
      return CycScalar::parse(ring, rest);
    };
    if (tag == "BASIS") {
      size_t i;
      std::string label;
      ls >> i >> label;
      if (i >= dim) fail(errc::syntax_error, "BASIS index out of range");
      h.basis_labels[i] = label;
    } else if (tag == "MULT") {
      size_t i, j, k;
      ls >> i >> j >> k;
      if (i >= dim || j >= dim || k >= dim) fail(errc::syntax_error, "MULT index out of range");
      h.mult.at(k, i * dim + j) = rest_scalar();
    } else if (tag == "UNIT") {
      size_t k;
      ls >> k;
      if (k >= dim) fail(errc::syntax_error, "UNIT index out of range");
      h.unit.at(k, 0) = rest_scalar();
    } else if (tag == "COMULT") {
      size_t i, a, b;
      ls >> i >> a >> b;
      if (i >= dim || a >= dim || b >= dim) fail(errc::syntax_error, "COMULT index out of range");
      h.comult.at(a * dim + b, i) = rest_scalar();
    } else if (tag == "COUNIT") {
      size_t i;
      ls >> i;
      if (i >= dim) fail(errc::syntax_error, "COUNIT index out of range");
      h.counit.at(0, i) = rest_scalar();
    } else if (tag == "ANTIPODE") {
      size_t i, k;
      ls >> i >> k;
      if (i >= dim || k >= dim) fail(errc::syntax_error, "ANTIPODE index out of range");
      h.antipode.at(k, i) = rest_scalar();
    } else if (tag == "RMATRIX") {
      size_t i, j;
      ls >> i >> j;
      if (i >= dim || j >= dim) fail(errc::syntax_error, "RMATRIX index out of range");
      r.rmatrix.at(i * dim + j, 0) = rest_scalar();
    } else if (tag == "RIBBON") {
      size_t i;
      ls >> i;
      if (i >= dim) fail(errc::syntax_error, "RIBBON index out of range");
      r.ribbon.at(i, 0) = rest_scalar();
    } else {
      fail(errc::syntax_error, "unknown HOPF section: " + tag);
    }
  }
  r.drinfeld = drinfeld_element(h, r.rmatrix);
  return {h, r};
}

} // namespace mtc
