#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "stabkit/clifford.hpp"
#include "stabkit/pauli.hpp"

namespace stabkit {

using cplx = std::complex<double>;

inline constexpr std::size_t kDenseQubitGuard = 10;

// Basis convention: qubit 1 is the most significant bit of the index, so
// |q1 q2 ... qn> maps to index q1*2^{n-1} + ... + qn.
inline bool basis_bit(std::size_t index, std::size_t qubit, std::size_t n) {
  return (index >> (n - 1 - qubit)) & 1u;
}

struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<cplx> a;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t d) : dim(d), a(d * d, cplx(0, 0)) {}

  cplx& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

  static DenseMatrix identity(std::size_t d) {
    DenseMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

inline DenseMatrix matmul(const DenseMatrix& l, const DenseMatrix& r) {
  if (l.dim != r.dim) throw std::invalid_argument("matmul: dim mismatch");
  DenseMatrix out(l.dim);
  for (std::size_t i = 0; i < l.dim; ++i)
    for (std::size_t k = 0; k < l.dim; ++k) {
      const cplx v = l.at(i, k);
      if (v == cplx(0, 0)) continue;
      for (std::size_t j = 0; j < l.dim; ++j) out.at(i, j) += v * r.at(k, j);
    }
  return out;
}

inline DenseMatrix dagger(const DenseMatrix& m) {
  DenseMatrix out(m.dim);
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j)
      out.at(i, j) = std::conj(m.at(j, i));
  return out;
}

inline double max_abs_diff(const DenseMatrix& l, const DenseMatrix& r) {
  if (l.dim != r.dim) throw std::invalid_argument("diff: dim mismatch");
  double d = 0;
  for (std::size_t i = 0; i < l.a.size(); ++i)
    d = std::max(d, std::abs(l.a[i] - r.a[i]));
  return d;
}

inline bool approx_equal(const DenseMatrix& l, const DenseMatrix& r,
                         double tol) {
  return l.dim == r.dim && max_abs_diff(l, r) <= tol;
}

// Equality after aligning global phase on the largest entry of l.
inline bool equal_up_to_global_phase(const DenseMatrix& l,
                                     const DenseMatrix& r, double tol) {
  if (l.dim != r.dim) return false;
  std::size_t best = 0;
  for (std::size_t i = 1; i < l.a.size(); ++i)
    if (std::abs(l.a[i]) > std::abs(l.a[best])) best = i;
  if (std::abs(l.a[best]) < tol || std::abs(r.a[best]) < tol) return false;
  const cplx ratio = l.a[best] / r.a[best];
  if (std::abs(std::abs(ratio) - 1.0) > tol) return false;
  DenseMatrix scaled = r;
  for (auto& v : scaled.a) v *= ratio;
  return approx_equal(l, scaled, tol);
}

inline const cplx& phase_unit(unsigned k) {
  static const cplx units[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0),
                                cplx(0, -1)};
  return units[k & 3u];
}

// In-place action of i^phase prod X^x prod Z^z on a state vector.
inline void apply_pauli(std::vector<cplx>& psi, const PauliOperator& p) {
  const std::size_t n = p.size();
  if (psi.size() != (std::size_t{1} << n))
    throw std::invalid_argument("apply_pauli: state size mismatch");
  std::size_t xmask = 0, zmask = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (p.x_bit(j)) xmask |= std::size_t{1} << (n - 1 - j);
    if (p.z_bit(j)) zmask |= std::size_t{1} << (n - 1 - j);
  }
  const cplx ph = phase_unit(p.phase());
  std::vector<cplx> out(psi.size());
  for (std::size_t b = 0; b < psi.size(); ++b) {
    const bool neg = std::popcount(b & zmask) & 1u;
    out[b ^ xmask] = (neg ? -ph : ph) * psi[b];
  }
  psi = std::move(out);
}

inline DenseMatrix pauli_unitary(const PauliOperator& p) {
  if (p.size() > kDenseQubitGuard)
    throw std::invalid_argument("pauli_unitary: too many qubits");
  const std::size_t dim = std::size_t{1} << p.size();
  DenseMatrix m(dim);
  std::vector<cplx> col(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    std::fill(col.begin(), col.end(), cplx(0, 0));
    col[c] = 1.0;
    apply_pauli(col, p);
    for (std::size_t r = 0; r < dim; ++r) m.at(r, c) = col[r];
  }
  return m;
}

inline double vec_norm(const std::vector<cplx>& v) {
  double s = 0;
  for (const cplx& a : v) s += std::norm(a);
  return std::sqrt(s);
}

inline cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s(0, 0);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// The unique state vector stabilized by the given full-rank commuting set,
// built by projector products over basis seeds.
inline std::vector<cplx> stabilized_state(
    const std::vector<PauliOperator>& gens, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t seed = 0; seed < dim; ++seed) {
    std::vector<cplx> v(dim, cplx(0, 0));
    v[seed] = 1.0;
    for (const auto& g : gens) {
      std::vector<cplx> gv = v;
      apply_pauli(gv, g);
      for (std::size_t i = 0; i < dim; ++i) v[i] = 0.5 * (v[i] + gv[i]);
    }
    const double nrm = vec_norm(v);
    if (nrm > 1e-6) {
      for (auto& a : v) a /= nrm;
      return v;
    }
  }
  throw std::invalid_argument("stabilized_state: empty joint +1 eigenspace");
}

// Dense unitary of a conjugation map.  Column for |v> is
// prod_j x_image_j^{v_j} applied to the state stabilized by the z-images;
// global phase fixed so the first nonzero amplitude of column 0 is positive
// real.
inline DenseMatrix to_unitary(const CliffordMap& c) {
  const std::size_t n = c.size();
  if (n > kDenseQubitGuard)
    throw std::invalid_argument("to_unitary: too many qubits");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<PauliOperator> zimgs;
  zimgs.reserve(n);
  for (std::size_t j = 0; j < n; ++j) zimgs.push_back(c.z_image(j));
  const std::vector<cplx> ground = stabilized_state(zimgs, n);
  DenseMatrix u(dim);
  for (std::size_t v = 0; v < dim; ++v) {
    std::vector<cplx> col = ground;
    for (std::size_t j = 0; j < n; ++j)
      if (basis_bit(v, j, n)) apply_pauli(col, c.x_image(j));
    for (std::size_t r = 0; r < dim; ++r) u.at(r, v) = col[r];
  }
  for (std::size_t r = 0; r < dim; ++r) {
    const cplx amp = u.at(r, 0);
    if (std::abs(amp) > 1e-9) {
      const cplx fix = std::conj(amp) / std::abs(amp);
      for (auto& a : u.a) a *= fix;
      break;
    }
  }
  return u;
}

// Apply a dense m-qubit gate at the given target qubits of an n-qubit state.
inline void apply_dense_gate(std::vector<cplx>& psi, const DenseMatrix& g,
                             const std::vector<std::size_t>& targets,
                             std::size_t n) {
  const std::size_t m = targets.size();
  if (g.dim != (std::size_t{1} << m))
    throw std::invalid_argument("apply_dense_gate: gate dim mismatch");
  std::vector<std::size_t> bitpos(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (targets[j] >= n)
      throw std::invalid_argument("apply_dense_gate: target out of range");
    bitpos[j] = n - 1 - targets[j];
  }
  std::size_t tmask = 0;
  for (std::size_t p : bitpos) tmask |= std::size_t{1} << p;
  std::vector<cplx> in(g.dim), out(g.dim);
  for (std::size_t base = 0; base < psi.size(); ++base) {
    if (base & tmask) continue;
    for (std::size_t s = 0; s < g.dim; ++s) {
      std::size_t idx = base;
      for (std::size_t j = 0; j < m; ++j)
        if (basis_bit(s, j, m)) idx |= std::size_t{1} << bitpos[j];
      in[s] = psi[idx];
    }
    for (std::size_t r = 0; r < g.dim; ++r) {
      cplx acc(0, 0);
      for (std::size_t s = 0; s < g.dim; ++s) acc += g.at(r, s) * in[s];
      out[r] = acc;
    }
    for (std::size_t s = 0; s < g.dim; ++s) {
      std::size_t idx = base;
      for (std::size_t j = 0; j < m; ++j)
        if (basis_bit(s, j, m)) idx |= std::size_t{1} << bitpos[j];
      psi[idx] = out[s];
    }
  }
}

}  // namespace stabkit
