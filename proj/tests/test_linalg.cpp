#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "qrand/error.hpp"
#include "qrand/linalg.hpp"

using namespace qrand;

namespace {

void check_eigs(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

}  // namespace

TEST_CASE("herm_eigvals examples") {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d.diagonal() << 3, 1, 2;
  check_eigs(herm_eigvals(d), {1, 2, 3}, 0.0);
  check_eigs(herm_eigvals(oracle::single('X')), {-1, 1}, 1e-15);
  check_eigs(herm_eigvals(oracle::single('Y')), {-1, 1}, 1e-15);
  CHECK(herm_eigvals(ComplexMatrix(0, 0)).empty());

  ComplexMatrix bad(2, 2);
  bad << 1, 2, 0, 1;
  CHECK_THROWS_AS(herm_eigvals(bad), SymmetryError);
  CHECK_THROWS_AS(herm_eigvals(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("2x2 eigenvalues match the quadratic formula") {
  CounterRng rng(41);
  for (int t = 0; t < 500; ++t) {
    const ComplexMatrix h = random_hermitian(2, rng);
    check_eigs(herm_eigvals(h), oracle::quadratic_eigenvalues(h), 1e-12);
  }
}

TEST_CASE("Jacobi eigenvalues match Eigen's self-adjoint solver") {
  CounterRng rng(42);
  for (Eigen::Index d : {3, 4, 7, 8, 16, 32, 64}) {
    for (int t = 0; t < 5; ++t) {
      const ComplexMatrix h = random_hermitian(d, rng);
      check_eigs(herm_eigvals(h), oracle::eigen_eigenvalues(h), 1e-10);
    }
  }
  // degenerate spectrum
  const ComplexMatrix u = haar_unitary(6, 43);
  ComplexMatrix d = ComplexMatrix::Zero(6, 6);
  d.diagonal() << 1, 1, 1, -2, -2, 0;
  check_eigs(herm_eigvals(u * d * u.adjoint()), {-2, -2, 0, 1, 1, 1}, 1e-12);
}

TEST_CASE("eigenvalues are unitarily invariant") {
  CounterRng rng(44);
  for (Eigen::Index d : {2, 4, 8, 16}) {
    for (int t = 0; t < 10; ++t) {
      ComplexMatrix diag = ComplexMatrix::Zero(d, d);
      std::vector<double> want;
      for (Eigen::Index i = 0; i < d; ++i) {
        want.push_back(rng.normal());
        diag(i, i) = want.back();
      }
      std::sort(want.begin(), want.end());
      const ComplexMatrix u = haar_unitary(d, rng);
      check_eigs(herm_eigvals(u * diag * u.adjoint()), want, 1e-10);
    }
  }
}

TEST_CASE("the eigensolver is generic over the real scalar") {
  CounterRng rng(45);
  const ComplexMatrix h = random_hermitian(5, rng);
  const auto want = oracle::eigen_eigenvalues(h);
  const auto as_float = herm_eigvals(h.cast<std::complex<float>>().eval(), 1e-4);
  const auto as_long = herm_eigvals(h.cast<std::complex<long double>>().eval());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(std::abs(as_float[i] - want[i]) <= 1e-4);
    CHECK(std::abs(static_cast<double>(as_long[i]) - want[i]) <= 1e-12);
  }
  CHECK(std::abs(matrix_norm(h.cast<std::complex<float>>().eval(), NormKind::frobenius) - h.norm()) <= 1e-4);
}

TEST_CASE("matrix_norm examples") {
  ComplexMatrix z = oracle::single('Z');
  CHECK(matrix_norm(z, NormKind::trace) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(matrix_norm(z, NormKind::frobenius) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(matrix_norm(z, NormKind::infinity) == doctest::Approx(1.0).epsilon(1e-15));
  const StateVector phi = random_state(2, 46);
  CHECK(std::abs(distance_from_mixed(phi * phi.adjoint()) - 1.0) <= 1e-12);
  CHECK(to_string(NormKind::infinity) == "infinity");
  CHECK(norm_kind_from_string("frobenius") == NormKind::frobenius);
  CHECK_THROWS_AS(norm_kind_from_string("nuclear"), ParseError);
}

TEST_CASE("norm inequalities on random Hermitian matrices") {
  CounterRng rng(47);
  for (Eigen::Index d : {2, 4, 8, 16}) {
    const double sd = std::sqrt(static_cast<double>(d));
    for (int t = 0; t < 100; ++t) {
      const ComplexMatrix h = random_hermitian(d, rng);
      const double tr = matrix_norm(h, NormKind::trace);
      const double fr = matrix_norm(h, NormKind::frobenius);
      const double inf = matrix_norm(h, NormKind::infinity);
      CHECK(std::abs(fr - h.norm()) <= 1e-10 * fr);
      CHECK(fr <= tr + 1e-9);
      CHECK(inf <= fr + 1e-9);
      CHECK(tr <= sd * fr + 1e-9);
      CHECK(tr <= static_cast<double>(d) * inf + 1e-9);
    }
  }
}

TEST_CASE("trace_distance") {
  const auto rho = random_density(4, 48);
  CHECK(trace_distance(rho, rho) <= 1e-14);
  StateVector e0 = StateVector::Zero(2), e1 = StateVector::Zero(2);
  e0(0) = 1;
  e1(1) = 1;
  CHECK(std::abs(trace_distance(DensityMatrix::pure(e0), DensityMatrix::pure(e1)) - 2.0) <= 1e-15);
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m.diagonal() << 2.0 / 3.0, 1.0 / 3.0;
  CHECK(std::abs(trace_distance(DensityMatrix::from_matrix(m), DensityMatrix::maximally_mixed(2)) - 1.0 / 3.0) <= 1e-15);
  CHECK_THROWS_AS(trace_distance(rho, DensityMatrix::maximally_mixed(2)), DimensionError);

  CounterRng rng(49);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_density(8, rng), b = random_density(8, rng), c = random_density(8, rng);
    const double ab = trace_distance(a, b);
    CHECK(std::abs(ab - trace_distance(b, a)) <= 1e-10);
    CHECK(ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-10);
    CHECK(std::abs(ab - oracle::trace_norm(a.matrix() - b.matrix())) <= 1e-10);
    CHECK(ab <= 2.0 + 1e-12);
  }
}

TEST_CASE("density matrix validation") {
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(bad), InvalidTestError);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg.diagonal() << 1.5, -0.5;
  CHECK_FALSE(is_density_matrix(neg));
  ComplexMatrix asym = ComplexMatrix::Zero(2, 2);
  asym << 0.5, 0.1, 0.0, 0.5;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(asym), SymmetryError);
  CHECK_THROWS_AS(DensityMatrix::pure(StateVector::Ones(2)), InvalidTestError);
}

TEST_CASE("random sampling") {
  CounterRng rng(50);
  for (Eigen::Index d : {1, 2, 5, 16, 256}) {
    CHECK(std::abs(random_state(d, rng).norm() - 1.0) <= 1e-12);
    const ComplexMatrix u = haar_unitary(d, rng);
    CHECK((u.adjoint() * u - ComplexMatrix::Identity(d, d)).norm() <= 1e-10);
    if (d <= 16) {
      const auto rho = random_density(d, rng);
      CHECK(is_density_matrix(rho.matrix()));
      CHECK(is_density_matrix(random_density(d, rng, 1).matrix()));
    }
  }
  CHECK(random_state(8, 51) == random_state(8, 51));
  CHECK(haar_unitary(4, 52) == haar_unitary(4, 52));
  CHECK(random_density(4, 53).matrix() == random_density(4, 53).matrix());
  const auto rank1 = random_density(4, 54, 1);
  CHECK(std::abs((rank1.matrix() * rank1.matrix()).trace().real() - 1.0) <= 1e-12);
}

TEST_CASE("random states average |<phi|psi>|^2 to 1/d") {
  for (Eigen::Index d : {2, 8}) {
    CounterRng rng(60 + d);
    const StateVector psi = random_state(d, rng);
    const int samples = 10000;
    double sum = 0.0, sq = 0.0;
    for (int k = 0; k < samples; ++k) {
      const double f = std::norm(random_state(d, rng).dot(psi));
      sum += f;
      sq += f * f;
    }
    const double mean = sum / samples;
    const double se = std::sqrt((sq / samples - mean * mean) / samples);
    CHECK(std::abs(mean - 1.0 / static_cast<double>(d)) <= 5 * se);
  }
  // the same for the first column of Haar unitaries
  CounterRng rng(70);
  StateVector e0 = StateVector::Zero(4);
  e0(0) = 1;
  double sum = 0.0;
  for (int k = 0; k < 10000; ++k) sum += std::norm(haar_unitary(4, rng)(0, 0));
  CHECK(std::abs(sum / 10000 - 0.25) <= 0.01);
}

TEST_CASE("counter RNG streams") {
  CounterRng a(5), b(5);
  for (int k = 0; k < 10; ++k) CHECK(a() == b());
  CHECK(a.derive(3)() == b.derive(3)());
  CHECK(a.derive(3)() != a.derive(4)());
  CounterRng r(6);
  for (int k = 0; k < 1000; ++k) {
    CHECK(r.below(7) < 7);
    const double u = r.uniform();
    CHECK((u >= 0.0 && u < 1.0));
  }
}

TEST_CASE("matrix text format round-trips exactly") {
  const ComplexMatrix u = haar_unitary(3, 55);
  std::ostringstream out;
  write_matrix(out, u);
  CHECK(out.str().starts_with("rows=3 cols=3\n"));
  std::istringstream in(out.str());
  CHECK(read_matrix(in) == u);
  std::istringstream bad("rows=2 cols=2\n1 0 0 0\n");
  CHECK_THROWS_AS(read_matrix(bad), ParseError);
}
