#pragma once

// Dense complex linear algebra on Eigen types: Hermitian eigenvalues by cyclic
// Jacobi rotations, the trace / Frobenius / operator norms of Hermitian
// matrices, density matrices, and seeded random states and unitaries.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qrand/error.hpp"
#include "qrand/rng.hpp"

namespace qrand {

template <typename Real>
using ComplexMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using ComplexMatrix = ComplexMatrixT<double>;
using StateVector = ComplexVectorT<double>;
using cplx = std::complex<double>;

enum class NormKind { trace, frobenius, infinity };

std::string_view to_string(NormKind kind);
NormKind norm_kind_from_string(std::string_view name);

inline constexpr double kHermitianTolerance = 1e-8;

/// Largest |M - M^dagger| entry.
template <typename Derived>
typename Derived::RealScalar hermitian_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<typename Derived::RealScalar>::infinity();
  if (m.size() == 0) return 0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// All eigenvalues of a Hermitian matrix in ascending order.
///
/// Cyclic Jacobi: sweeps over every (p,q) pair, first rotating the phase of
/// a_pq away and then applying the real rotation that annihilates it. Sweeps
/// stop once the off-diagonal Frobenius mass drops below 1e-13 * d (scaled by
/// the matrix norm when that exceeds one). Throws SymmetryError when the input
/// is further than `tolerance` from Hermitian.
template <typename Derived>
std::vector<typename Derived::RealScalar> herm_eigvals(const Eigen::MatrixBase<Derived>& m,
                                                       double tolerance = kHermitianTolerance) {
  using Real = typename Derived::RealScalar;
  using C = std::complex<Real>;
  if (m.rows() != m.cols()) throw DimensionError("herm_eigvals needs a square matrix");
  if (hermitian_defect(m) > tolerance) throw SymmetryError("herm_eigvals: matrix is not Hermitian");

  const Eigen::Index d = m.rows();
  ComplexMatrixT<Real> a = (m.template cast<C>() + m.template cast<C>().adjoint()) / Real(2);
  const Real scale = std::max<Real>(Real(1), a.norm());
  const Real threshold = Real(1e-13) * static_cast<Real>(d) * scale;

  auto off_diagonal = [&] {
    Real s = 0;
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index i = 0; i < d; ++i)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal() >= threshold; ++sweep) {
    for (Eigen::Index p = 0; p < d - 1; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) {
        const Real mag = std::abs(a(p, q));
        if (mag == Real(0)) continue;
        const C phase = a(p, q) / mag;  // a_pq = mag * phase
        const Real app = a(p, p).real();
        const Real aqq = a(q, q).real();
        const Real theta = (aqq - app) / (Real(2) * mag);
        const Real t = (theta >= 0 ? Real(1) : Real(-1)) / (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
        const Real c = Real(1) / std::sqrt(t * t + Real(1));
        const Real s = t * c;
        // V = diag(1, conj(phase)) on (p,q) followed by the real rotation [[c, s], [-s, c]].
        const C vpp = c;
        const C vpq = s;
        const C vqp = -s * std::conj(phase);
        const C vqq = c * std::conj(phase);
        for (Eigen::Index k = 0; k < d; ++k) {
          const C akp = a(k, p);
          const C akq = a(k, q);
          a(k, p) = akp * vpp + akq * vqp;
          a(k, q) = akp * vpq + akq * vqq;
        }
        for (Eigen::Index k = 0; k < d; ++k) {
          const C apk = a(p, k);
          const C aqk = a(q, k);
          a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
          a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
        }
        a(p, q) = C(0);
        a(q, p) = C(0);
        a(p, p) = C(a(p, p).real(), 0);
        a(q, q) = C(a(q, q).real(), 0);
      }
    }
  }

  std::vector<Real> eig(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) eig[static_cast<std::size_t>(i)] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

/// Norm of a Hermitian matrix computed from its eigenvalues: sum of |lambda|,
/// root-sum-square, or max |lambda|.
template <typename Derived>
typename Derived::RealScalar matrix_norm(const Eigen::MatrixBase<Derived>& m, NormKind kind) {
  using Real = typename Derived::RealScalar;
  const auto eig = herm_eigvals(m);
  Real acc = 0;
  switch (kind) {
    case NormKind::trace:
      for (Real x : eig) acc += std::abs(x);
      return acc;
    case NormKind::frobenius:
      for (Real x : eig) acc += x * x;
      return std::sqrt(acc);
    case NormKind::infinity:
      for (Real x : eig) acc = std::max(acc, std::abs(x));
      return acc;
  }
  return acc;
}

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  /// Validates Hermiticity, trace and eigenvalue positivity (all to 1e-10).
  static DensityMatrix from_matrix(ComplexMatrix m);
  /// Skips validation; for values that are density matrices by construction.
  static DensityMatrix trusted(ComplexMatrix m) { return DensityMatrix(std::move(m)); }
  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  Eigen::Index dim() const noexcept { return rho_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return rho_; }

 private:
  explicit DensityMatrix(ComplexMatrix m) : rho_(std::move(m)) {}
  ComplexMatrix rho_;
};

/// Checks the density-matrix invariants without throwing.
bool is_density_matrix(const ComplexMatrix& m, double tolerance = DensityMatrix::kTolerance);

/// Trace norm of rho - sigma, in [0, 2].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// ||rho - I/d|| in the requested norm.
double distance_from_mixed(const ComplexMatrix& rho, NormKind kind = NormKind::trace);

/// Complex standard normal vector, normalized.
StateVector random_state(Eigen::Index dim, CounterRng& rng);
StateVector random_state(Eigen::Index dim, std::uint64_t seed);

/// Mixture of `components` random pure states (default: dim) with normalized exponential weights.
DensityMatrix random_density(Eigen::Index dim, CounterRng& rng, Eigen::Index components = 0);
DensityMatrix random_density(Eigen::Index dim, std::uint64_t seed, Eigen::Index components = 0);

/// Random Hermitian matrix with complex Gaussian entries (for norm tests).
ComplexMatrix random_hermitian(Eigen::Index dim, CounterRng& rng);

/// Haar-distributed unitary: Gram-Schmidt on a complex Ginibre matrix, column by
/// column, so that the triangular factor has a positive real diagonal.
ComplexMatrix haar_unitary(Eigen::Index dim, CounterRng& rng);
ComplexMatrix haar_unitary(Eigen::Index dim, std::uint64_t seed);

/// Text format: "rows=<r> cols=<c>" then one line per row of "re im" pairs, 17 significant digits.
void write_matrix(std::ostream& out, const ComplexMatrix& m);
ComplexMatrix read_matrix(std::istream& in);

}  // namespace qrand
