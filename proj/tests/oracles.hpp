#pragma once

// Reference implementations used only by the tests. Each one takes a
// different route to the answer than the library code it checks: dense
// Kronecker products instead of index arithmetic, schoolbook polynomial
// division instead of word-level reduction, direct sums instead of transforms.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qrand/channel.hpp"
#include "qrand/linalg.hpp"
#include "qrand/pauli.hpp"
#include "qrand/smallbias.hpp"

namespace oracle {

using qrand::ComplexMatrix;
using qrand::cplx;
using qrand::StateVector;

inline ComplexMatrix kron(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  ComplexMatrix out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  for (Eigen::Index i = 0; i < lhs.rows(); ++i)
    for (Eigen::Index j = 0; j < lhs.cols(); ++j)
      out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) = lhs(i, j) * rhs;
  return out;
}

inline ComplexMatrix single(char c) {
  ComplexMatrix m(2, 2);
  switch (c) {
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, cplx(0, -1), cplx(0, 1), 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      m << 1, 0, 0, 1;
  }
  return m;
}

/// Dense matrix of i^phase X^a Z^b; qubit j is bit j of the basis index, so
/// qubit 1 is the rightmost Kronecker factor.
inline ComplexMatrix dense_pauli(const qrand::PauliOp& p) {
  ComplexMatrix m = ComplexMatrix::Identity(1, 1);
  for (std::size_t j = 0; j < p.n(); ++j) {
    ComplexMatrix factor = ComplexMatrix::Identity(2, 2);
    if (p.a().get(j)) factor = factor * single('X');
    if (p.b().get(j)) factor = factor * single('Z');
    m = kron(factor, m);
  }
  static const cplx kPhase[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPhase[((p.phase() % 4) + 4) % 4] * m;
}

/// Dense matrix of a Pauli string over {I,X,Y,Z} (no prefix).
inline ComplexMatrix dense_string(const std::string& s) {
  ComplexMatrix m = ComplexMatrix::Identity(1, 1);
  for (char c : s) m = kron(single(c), m);
  return m;
}

inline ComplexMatrix dense_channel(const qrand::PauliChannel& ch, const ComplexMatrix& rho) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  const double uniform = 1.0 / static_cast<double>(ch.m());
  for (std::size_t k = 0; k < ch.m(); ++k) {
    const ComplexMatrix p = dense_pauli(ch.ops()[k]);
    out += (ch.uniform() ? uniform : ch.weights()[k]) * p * rho * p.adjoint();
  }
  return out;
}

/// Polynomials over GF(2) as coefficient lists, index = power.
using Poly = std::vector<int>;

inline Poly poly_from_bits(std::uint64_t v) {
  Poly p;
  while (v) {
    p.push_back(static_cast<int>(v & 1u));
    v >>= 1;
  }
  return p;
}

inline std::uint64_t poly_to_bits(const Poly& p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] % 2) v |= std::uint64_t{1} << i;
  return v;
}

inline Poly poly_mul(const Poly& x, const Poly& y) {
  if (x.empty() || y.empty()) return {};
  Poly out(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] ^= x[i] & y[j];
  return out;
}

/// Remainder of long division by `mod`.
inline Poly poly_mod(Poly x, const Poly& mod) {
  const std::size_t deg = mod.size() - 1;
  for (std::size_t top = x.size(); top-- > deg;) {
    if (!x[top]) continue;
    for (std::size_t k = 0; k <= deg; ++k) x[top - deg + k] ^= mod[k];
  }
  x.resize(std::min(x.size(), deg));
  return x;
}

inline std::uint64_t field_mul(std::uint64_t a, std::uint64_t b, std::uint64_t modulus) {
  return poly_to_bits(poly_mod(poly_mul(poly_from_bits(a), poly_from_bits(b)), poly_from_bits(modulus)));
}

/// Multiplicative order of x modulo `modulus` by repeated multiplication.
inline std::uint64_t order_of_x(std::uint64_t modulus, unsigned r) {
  const std::uint64_t x = r == 1 ? 1 : 2;
  std::uint64_t acc = x;
  for (std::uint64_t k = 1; k <= (std::uint64_t{1} << r); ++k) {
    if (acc == 1) return k;
    acc = field_mul(acc, x, modulus);
  }
  return 0;
}

/// |mean (-1)^{alpha . s}| by walking the characters of each string.
inline double bias(const qrand::SampleSpace& space, const std::string& alpha) {
  long total = 0;
  for (const auto& s : space.strings()) {
    const std::string text = s.to_string();
    int parity = 0;
    for (std::size_t j = 0; j < text.size(); ++j) parity ^= (alpha[j] == '1') & (text[j] == '1');
    total += parity ? -1 : 1;
  }
  return std::abs(static_cast<double>(total)) / static_cast<double>(space.size());
}

inline std::string bits_of(std::uint64_t v, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t j = 0; j < n; ++j)
    if ((v >> j) & 1u) s[j] = '1';
  return s;
}

inline double max_bias(const qrand::SampleSpace& space) {
  double best = 0.0;
  for (std::uint64_t a = 1; a < (std::uint64_t{1} << space.n()); ++a) best = std::max(best, bias(space, bits_of(a, space.n())));
  return best;
}

inline std::vector<double> eigen_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Roots of the characteristic polynomial of a 2x2 Hermitian matrix.
inline std::vector<double> quadratic_eigenvalues(const ComplexMatrix& m) {
  const double p = m(0, 0).real();
  const double q = m(1, 1).real();
  const double off = std::norm(m(0, 1));
  const double disc = std::sqrt((p - q) * (p - q) / 4.0 + off);
  return {(p + q) / 2.0 - disc, (p + q) / 2.0 + disc};
}

inline double trace_norm(const ComplexMatrix& m) {
  double acc = 0.0;
  for (double x : eigen_eigenvalues(m)) acc += std::abs(x);
  return acc;
}

inline double distance_from_mixed(const ComplexMatrix& rho) {
  return trace_norm(rho - ComplexMatrix::Identity(rho.rows(), rho.cols()) / static_cast<double>(rho.rows()));
}

inline bool near(const ComplexMatrix& x, const ComplexMatrix& y, double tol) { return (x - y).cwiseAbs().maxCoeff() <= tol; }

/// True if y = c x for some unit-modulus c.
inline bool equal_up_to_phase(const StateVector& x, const StateVector& y, double tol) {
  return std::abs(std::abs(x.dot(y)) - 1.0) <= tol && std::abs(x.norm() - 1.0) <= tol && std::abs(y.norm() - 1.0) <= tol;
}

}  // namespace oracle
