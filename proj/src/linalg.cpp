#include "qrand/linalg.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace qrand {

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::trace:
      return "trace";
    case NormKind::frobenius:
      return "frobenius";
    case NormKind::infinity:
      return "infinity";
  }
  return "trace";
}

NormKind norm_kind_from_string(std::string_view name) {
  if (name == "trace") return NormKind::trace;
  if (name == "frobenius") return NormKind::frobenius;
  if (name == "infinity") return NormKind::infinity;
  throw ParseError("unknown norm kind \"" + std::string(name) + "\"");
}

bool is_density_matrix(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  if (!m.allFinite()) return false;
  if (hermitian_defect(m) > tolerance) return false;
  if (std::abs(m.trace() - cplx(1.0, 0.0)) > tolerance) return false;
  const auto eig = herm_eigvals(m);
  return eig.front() >= -tolerance;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  if (m.rows() != m.cols()) throw DimensionError("density matrix must be square");
  if (hermitian_defect(m) > kTolerance) throw SymmetryError("density matrix is not Hermitian");
  if (!is_density_matrix(m)) throw InvalidTestError("matrix is not a density matrix (trace or positivity)");
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-12) throw InvalidTestError("pure state vector is not normalized");
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("trace_distance: dimension mismatch");
  return matrix_norm(rho.matrix() - sigma.matrix(), NormKind::trace);
}

double distance_from_mixed(const ComplexMatrix& rho, NormKind kind) {
  ComplexMatrix diff = rho;
  diff.diagonal().array() -= 1.0 / static_cast<double>(rho.rows());
  return matrix_norm(diff, kind);
}

StateVector random_state(Eigen::Index dim, CounterRng& rng) {
  StateVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v(i) = cplx(re, im);
  }
  return v / v.norm();
}

StateVector random_state(Eigen::Index dim, std::uint64_t seed) {
  CounterRng rng(seed);
  return random_state(dim, rng);
}

DensityMatrix random_density(Eigen::Index dim, CounterRng& rng, Eigen::Index components) {
  if (components <= 0) components = dim;
  std::vector<double> w(static_cast<std::size_t>(components));
  double total = 0.0;
  for (auto& x : w) {
    double u;
    do {
      u = rng.uniform();
    } while (u <= 0.0);
    x = -std::log(u);
    total += x;
  }
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const StateVector phi = random_state(dim, rng);
    rho.noalias() += (w[i] / total) * (phi * phi.adjoint());
  }
  // exact Hermitian symmetry
  rho = (rho + rho.adjoint()).eval() / 2.0;
  return DensityMatrix::trusted(std::move(rho));
}

DensityMatrix random_density(Eigen::Index dim, std::uint64_t seed, Eigen::Index components) {
  CounterRng rng(seed);
  return random_density(dim, rng, components);
}

ComplexMatrix random_hermitian(Eigen::Index dim, CounterRng& rng) {
  ComplexMatrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = cplx(re, im);
    }
  return (g + g.adjoint()) / 2.0;
}

ComplexMatrix haar_unitary(Eigen::Index dim, CounterRng& rng) {
  ComplexMatrix u(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      u(i, j) = cplx(re, im);
    }
  // Modified Gram-Schmidt; dividing by the (positive) norm keeps R's diagonal real positive.
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < j; ++k) {
        const cplx proj = u.col(k).dot(u.col(j));
        u.col(j) -= proj * u.col(k);
      }
    }
    u.col(j) /= u.col(j).norm();
  }
  return u;
}

ComplexMatrix haar_unitary(Eigen::Index dim, std::uint64_t seed) {
  CounterRng rng(seed);
  return haar_unitary(dim, rng);
}

void write_matrix(std::ostream& out, const ComplexMatrix& m) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "rows=" << m.rows() << " cols=" << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) buf << ' ';
      buf << m(i, j).real() << ' ' << m(i, j).imag();
    }
    buf << '\n';
  }
  out << buf.str();
}

ComplexMatrix read_matrix(std::istream& in) {
  std::string rows_tok, cols_tok;
  if (!(in >> rows_tok >> cols_tok) || rows_tok.rfind("rows=", 0) != 0 || cols_tok.rfind("cols=", 0) != 0) {
    throw ParseError("matrix header must read \"rows=<r> cols=<c>\"");
  }
  Eigen::Index rows = 0, cols = 0;
  try {
    rows = std::stol(rows_tok.substr(5));
    cols = std::stol(cols_tok.substr(5));
  } catch (const std::exception&) {
    throw ParseError("matrix header has non-numeric fields");
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      double re, im;
      if (!(in >> re >> im)) throw ParseError("matrix file ends early");
      m(i, j) = cplx(re, im);
    }
  return m;
}

}  // namespace qrand
