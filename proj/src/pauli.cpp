#include "qrand/pauli.hpp"

#include <bit>
#include <cmath>

#include "qrand/error.hpp"

namespace qrand {

namespace {

cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

void require_same_n(const PauliOp& p, const PauliOp& q, const char* what) {
  if (p.n() != q.n()) throw DimensionError(std::string(what) + ": qubit count mismatch");
}

std::size_t dense_dim(std::size_t n) {
  if (n > 30) throw CapacityError("register too large for a dense state vector");
  return std::size_t{1} << n;
}

}  // namespace

PauliOp::PauliOp(BitVector a, BitVector b, int phase) : a_(std::move(a)), b_(std::move(b)), phase_(((phase % 4) + 4) % 4) {
  if (a_.size() != b_.size()) throw DimensionError("Pauli X and Z parts differ in length");
}

PauliOp PauliOp::hermitian(BitVector a, BitVector b) {
  const int ys = static_cast<int>((a & b).weight());
  return PauliOp(std::move(a), std::move(b), ys);
}

PauliOp PauliOp::parse(std::string_view text) {
  int phase = 0;
  if (text.starts_with("-i")) {
    phase = 3;
    text.remove_prefix(2);
  } else if (text.starts_with("-")) {
    phase = 2;
    text.remove_prefix(1);
  } else if (text.starts_with("i")) {
    phase = 1;
    text.remove_prefix(1);
  }
  BitVector a(text.size());
  BitVector b(text.size());
  for (std::size_t j = 0; j < text.size(); ++j) {
    switch (text[j]) {
      case 'I':
        break;
      case 'X':
        a.set(j);
        break;
      case 'Z':
        b.set(j);
        break;
      case 'Y':
        a.set(j);
        b.set(j);
        ++phase;
        break;
      default:
        throw ParseError("Pauli string contains '" + std::string(1, text[j]) + "'");
    }
  }
  return PauliOp(std::move(a), std::move(b), phase);
}

std::string PauliOp::to_string() const {
  std::string body(n(), 'I');
  int ys = 0;
  for (std::size_t j = 0; j < n(); ++j) {
    const bool x = a_.get(j);
    const bool z = b_.get(j);
    if (x && z) {
      body[j] = 'Y';
      ++ys;
    } else if (x) {
      body[j] = 'X';
    } else if (z) {
      body[j] = 'Z';
    }
  }
  static constexpr const char* kPrefix[] = {"", "i", "-", "-i"};
  return kPrefix[(((phase_ - ys) % 4) + 4) % 4] + body;
}

PauliOp pauli_mul(const PauliOp& p, const PauliOp& q) {
  require_same_n(p, q, "pauli_mul");
  const int swap_sign = gf2_dot(p.b(), q.a()) ? 2 : 0;
  return PauliOp(p.a() ^ q.a(), p.b() ^ q.b(), p.phase() + q.phase() + swap_sign);
}

bool pauli_commutes(const PauliOp& p, const PauliOp& q) {
  require_same_n(p, q, "pauli_commutes");
  return !symplectic(p.label(), q.label());
}

StateVector pauli_apply(const PauliOp& p, const StateVector& psi) {
  const std::size_t dim = dense_dim(p.n());
  if (static_cast<std::size_t>(psi.size()) != dim) throw DimensionError("pauli_apply: state dimension mismatch");
  const std::uint64_t a = p.a_word();
  const std::uint64_t b = p.b_word();
  const cplx global = i_power(p.phase());
  StateVector out(psi.size());
  for (std::uint64_t c = 0; c < dim; ++c) {
    const double sign = (std::popcount(b & c) & 1) ? -1.0 : 1.0;
    out(static_cast<Eigen::Index>(c ^ a)) = global * sign * psi(static_cast<Eigen::Index>(c));
  }
  return out;
}

void check_basis_string(std::string_view basis, std::size_t n) {
  if (basis.size() != n) {
    throw DimensionError("basis string has length " + std::to_string(basis.size()) + ", expected " + std::to_string(n));
  }
  for (char ch : basis) {
    if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z') {
      throw ParseError("basis string contains '" + std::string(1, ch) + "'");
    }
  }
}

BitVector sigma_v(std::string_view basis, const SymplecticPair& label) {
  check_basis_string(basis, label.a.size());
  if (label.b.size() != label.a.size()) throw DimensionError("sigma_v: label halves differ in length");
  std::size_t kept = 0;
  for (char ch : basis) kept += ch != 'I';
  BitVector out(kept);
  std::size_t k = 0;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    switch (basis[j]) {
      case 'Z':
        out.set(k++, label.a.get(j));
        break;
      case 'X':
        out.set(k++, label.b.get(j));
        break;
      case 'Y':
        out.set(k++, label.a.get(j) != label.b.get(j));
        break;
      default:
        break;
    }
  }
  return out;
}

PauliOp StabilizerGroup::generator(std::size_t i) const {
  const auto& row = g_.row(i);
  PauliOp h = PauliOp::hermitian(row.slice(0, n_), row.slice(n_, n_));
  return signs_.get(i) ? PauliOp(h.a(), h.b(), h.phase() + 2) : h;
}

std::string StabilizerGroup::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) out += ',';
    out += generator(i).to_string();
  }
  return out;
}

StabilizerGroup stab_validate(BitMatrix g, BitVector signs) {
  if (g.cols() % 2) throw DimensionError("stabilizer generator rows must have even length (a | b)");
  const std::size_t n = g.cols() / 2;
  const std::size_t rows = g.rows();
  if (signs.size() != rows) throw DimensionError("stabilizer sign vector must have one entry per generator");
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = i + 1; j < rows; ++j) {
      const SymplecticPair p{g.row(i).slice(0, n), g.row(i).slice(n, n)};
      const SymplecticPair q{g.row(j).slice(0, n), g.row(j).slice(n, n)};
      if (symplectic(p, q)) {
        throw NotAbelianError("stabilizer generators " + std::to_string(i) + " and " + std::to_string(j) +
                              " anti-commute");
      }
    }
  }
  if (gf2_rank(g) != rows) throw DependentGeneratorsError("stabilizer generators are linearly dependent");
  if (rows != n) throw DimensionError("a stabilizer group on n qubits needs exactly n generators");
  return StabilizerGroup(n, std::move(g), std::move(signs));
}

StabilizerGroup stab_validate(BitMatrix g) {
  BitVector signs(g.rows());
  return stab_validate(std::move(g), std::move(signs));
}

StabilizerGroup stab_from_strings(std::initializer_list<std::string_view> generators) {
  std::vector<BitVector> rows;
  BitVector signs(generators.size());
  std::size_t i = 0;
  for (auto text : generators) {
    const PauliOp p = PauliOp::parse(text);
    rows.push_back(p.a().concat(p.b()));
    // sign relative to the Hermitian representative
    const int rel = (((p.phase() - static_cast<int>((p.a() & p.b()).weight())) % 4) + 4) % 4;
    if (rel % 2) throw InvalidTestError("stabilizer generator " + std::string(text) + " is not Hermitian");
    if (rel == 2) signs.set(i);
    ++i;
  }
  const std::size_t n = rows.empty() ? 0 : rows.front().size() / 2;
  return stab_validate(BitMatrix::from_rows(std::move(rows), 2 * n), std::move(signs));
}

BitMatrix swap_halves(const BitMatrix& m) {
  if (m.cols() % 2) throw DimensionError("swap_halves needs an even column count");
  const std::size_t n = m.cols() / 2;
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (const auto& r : m.row_vectors()) rows.push_back(r.slice(n, n).concat(r.slice(0, n)));
  return BitMatrix::from_rows(std::move(rows), m.cols());
}

BitMatrix stab_dual(const StabilizerGroup& group) { return swap_halves(group.generators()); }

StateVector stab_state(const StabilizerGroup& group) {
  const std::size_t n = group.n();
  if (n > kMaxDenseQubits) throw CapacityError("stab_state supports at most 10 qubits");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);

  std::vector<PauliOp> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(group.generator(i));

  // Columns of the projector, one basis vector at a time; its trace is its rank.
  double trace = 0.0;
  StateVector best;
  double best_norm = -1.0;
  for (Eigen::Index c = 0; c < dim; ++c) {
    StateVector v = StateVector::Zero(dim);
    v(c) = 1.0;
    for (const auto& g : gens) v = (v + pauli_apply(g, v)) / 2.0;
    trace += v(c).real();
    const double norm = v.norm();
    if (norm > best_norm + 1e-12) {
      best_norm = norm;
      best = v;
    }
  }
  if (trace < 0.5) throw InconsistentSignsError("stabilizer signs admit no common +1 eigenvector");
  if (std::abs(trace - 1.0) > 1e-9) throw InternalError("stabilizer projector does not have rank one");

  StateVector psi = best / best.norm();
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (std::abs(psi(i)) > 1e-12) {
      psi *= std::conj(psi(i)) / std::abs(psi(i));
      psi(i) = std::abs(psi(i));
      break;
    }
  }
  return psi;
}

}  // namespace qrand
