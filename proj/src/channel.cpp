#include "qrand/channel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "qrand/error.hpp"
#include "qrand/rng.hpp"

namespace qrand {

namespace {

void require_channel_capacity(std::size_t n, const char* what) {
  if (n > kMaxChannelQubits) {
    throw CapacityError(std::string(what) + " supports at most " + std::to_string(kMaxChannelQubits) + " qubits, got " +
                        std::to_string(n));
  }
}

// (-1)^{b.c} for every basis index c.
std::vector<double> z_signs(std::uint64_t b, std::size_t dim) {
  std::vector<double> s(dim);
  for (std::uint64_t c = 0; c < dim; ++c) s[c] = (std::popcount(b & c) & 1) ? -1.0 : 1.0;
  return s;
}

PauliOp op_from_words(std::size_t n, std::uint64_t a, std::uint64_t b) {
  return PauliOp(BitVector::from_word(n, a), BitVector::from_word(n, b));
}

std::string format_weight(double w) {
  std::ostringstream s;
  s << std::setprecision(17) << w;
  return s.str();
}

}  // namespace

PauliChannel::PauliChannel(std::size_t n, std::vector<PauliOp> ops, std::vector<double> weights,
                           std::optional<SampleSpace> source)
    : n_(n), ops_(std::move(ops)), weights_(std::move(weights)), source_(std::move(source)) {
  if (ops_.empty()) throw DimensionError("a channel needs at least one operator");
  if (n_ > 30) throw CapacityError("channel register too large");
  for (auto& op : ops_) {
    if (op.n() != n_) throw DimensionError("channel operator acts on the wrong number of qubits");
    op = op.phase_free();
  }
  if (weights_.empty()) {
    weights_.assign(ops_.size(), 1.0 / static_cast<double>(ops_.size()));
    uniform_ = true;
  } else {
    if (weights_.size() != ops_.size()) throw DimensionError("channel weight count differs from operator count");
    double total = 0.0;
    for (double w : weights_) {
      if (!(w >= 0.0)) throw InvalidTestError("channel weights must be non-negative");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw InvalidTestError("channel weights must sum to 1");
    uniform_ = std::all_of(weights_.begin(), weights_.end(), [&](double w) { return w == weights_.front(); });
  }
  if (source_ && source_->n() != 2 * n_) throw DimensionError("channel source space must have 2n-bit strings");
}

unsigned PauliChannel::key_bits() const noexcept {
  unsigned bits = 0;
  while ((std::size_t{1} << bits) < ops_.size()) ++bits;
  return bits;
}

FourierTable::FourierTable(std::size_t n, std::vector<double> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != (std::size_t{1} << (2 * n_))) throw DimensionError("Fourier table must have 4^n entries");
}

PauliChannel qotp(std::size_t n) {
  require_channel_capacity(n, "qotp");
  const std::uint64_t side = std::uint64_t{1} << n;
  std::vector<PauliOp> ops;
  std::vector<BitVector> keys;
  ops.reserve(side * side);
  keys.reserve(side * side);
  for (std::uint64_t a = 0; a < side; ++a) {
    for (std::uint64_t b = 0; b < side; ++b) {
      ops.push_back(op_from_words(n, a, b));
      keys.push_back(ops.back().a().concat(ops.back().b()));
    }
  }
  return PauliChannel(n, std::move(ops), {}, SampleSpace(2 * n, std::move(keys)));
}

PauliChannel channel_from_space(const SampleSpace& space) {
  if (space.n() % 2) throw DimensionError("channel_from_space needs strings of even length");
  const std::size_t n = space.n() / 2;
  std::vector<PauliOp> ops;
  ops.reserve(space.size());
  for (const auto& z : space.strings()) ops.emplace_back(z.slice(0, n), z.slice(n, n));
  return PauliChannel(n, std::move(ops), {}, space);
}

AghpParameters aghp_parameters(std::size_t n, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidTestError("epsilon must be positive");
  if (n == 0) throw DimensionError("aghp_channel needs at least one qubit");
  const double target = epsilon * std::pow(2.0, -0.5 * static_cast<double>(n));
  for (unsigned r = 1; r < n && r <= 12; ++r) {
    const auto s = static_cast<unsigned>((2 * n + r - 1) / r);
    const double bias = static_cast<double>(s - 1) * std::ldexp(1.0, -static_cast<int>(r));
    if (bias <= target * (1.0 + 1e-12)) return {r, s, false, 2 * r};
  }
  return {0, 0, true, static_cast<unsigned>(2 * n)};
}

PauliChannel aghp_channel(std::size_t n, double epsilon) {
  const AghpParameters params = aghp_parameters(n, epsilon);
  if (params.fallback) return qotp(n);
  return channel_from_space(aghp_space(params.r, params.s).truncated(2 * n));
}

PauliChannel random_pauli_channel(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m == 0) throw DimensionError("random_pauli_channel needs m >= 1");
  if (n > 30) throw CapacityError("register too large");
  CounterRng rng(seed);
  const std::uint64_t side = std::uint64_t{1} << n;
  std::vector<PauliOp> ops;
  ops.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::uint64_t a = rng.below(side);
    const std::uint64_t b = rng.below(side);
    ops.push_back(op_from_words(n, a, b));
  }
  return PauliChannel(n, std::move(ops));
}

ComplexMatrix apply_channel(const PauliChannel& channel, const ComplexMatrix& rho) {
  const std::size_t dim = channel.dim();
  if (static_cast<std::size_t>(rho.rows()) != dim || rho.cols() != rho.rows()) {
    throw DimensionError("apply_channel: state dimension does not match channel");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (std::size_t k = 0; k < channel.m(); ++k) {
    const std::uint64_t a = channel.ops()[k].a_word();
    const auto s = z_signs(channel.ops()[k].b_word(), dim);
    const double w = channel.weights()[k];
    // (P rho P^dagger)(x^a, y^a) = s(x) s(y) rho(x, y)
    for (std::uint64_t y = 0; y < dim; ++y) {
      const double wy = w * s[y];
      const auto col = static_cast<Eigen::Index>(y ^ a);
      for (std::uint64_t x = 0; x < dim; ++x) {
        out(static_cast<Eigen::Index>(x ^ a), col) += (wy * s[x]) * rho(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
      }
    }
  }
  return out;
}

DensityMatrix apply_channel(const PauliChannel& channel, const DensityMatrix& rho) {
  return DensityMatrix::trusted(apply_channel(channel, rho.matrix()));
}

ComplexMatrix apply_channel_pure(const PauliChannel& channel, const StateVector& psi) {
  const std::size_t dim = channel.dim();
  if (static_cast<std::size_t>(psi.size()) != dim) throw DimensionError("apply_channel: state dimension does not match channel");
  ComplexMatrix out = ComplexMatrix::Zero(psi.size(), psi.size());
  StateVector v(psi.size());
  for (std::size_t k = 0; k < channel.m(); ++k) {
    const std::uint64_t a = channel.ops()[k].a_word();
    const std::uint64_t b = channel.ops()[k].b_word();
    for (std::uint64_t c = 0; c < dim; ++c) {
      const double sign = (std::popcount(b & c) & 1) ? -1.0 : 1.0;
      v(static_cast<Eigen::Index>(c ^ a)) = sign * psi(static_cast<Eigen::Index>(c));
    }
    out.noalias() += channel.weights()[k] * (v * v.adjoint());
  }
  return out;
}

FourierTable fourier_coeffs(const PauliChannel& channel) {
  const std::size_t n = channel.n();
  require_channel_capacity(n, "fourier_coeffs");
  const std::size_t m = channel.m();
  std::vector<std::uint64_t> as(m), bs(m);
  for (std::size_t k = 0; k < m; ++k) {
    as[k] = channel.ops()[k].a_word();
    bs[k] = channel.ops()[k].b_word();
  }
  const std::uint64_t side = std::uint64_t{1} << n;
  std::vector<double> coeffs(side * side);
  for (std::uint64_t v = 0; v < side; ++v) {
    for (std::uint64_t u = 0; u < side; ++u) {
      double c;
      if (channel.uniform()) {
        std::int64_t odd = 0;
        for (std::size_t k = 0; k < m; ++k) odd += std::popcount((as[k] & v) ^ (bs[k] & u)) & 1;
        c = static_cast<double>(static_cast<std::int64_t>(m) - 2 * odd) / static_cast<double>(m);
      } else {
        c = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          c += (std::popcount((as[k] & v) ^ (bs[k] & u)) & 1) ? -channel.weights()[k] : channel.weights()[k];
        }
      }
      coeffs[u | (v << n)] = c;
    }
  }
  return FourierTable(n, std::move(coeffs));
}

Certificate certify(const PauliChannel& channel) {
  const FourierTable table = fourier_coeffs(channel);
  Certificate cert;
  cert.n = channel.n();
  cert.m = channel.m();
  cert.key_bits = channel.key_bits();
  const auto& c = table.coefficients();
  const std::uint64_t mask = (std::uint64_t{1} << channel.n()) - 1;
  for (std::uint64_t idx = 1; idx < c.size(); ++idx) {
    if (std::abs(c[idx]) > cert.delta) {
      cert.delta = std::abs(c[idx]);
      cert.witness_u = idx & mask;
      cert.witness_v = idx >> channel.n();
    }
  }
  cert.certified_epsilon = std::pow(2.0, 0.5 * static_cast<double>(channel.n())) * cert.delta;
  return cert;
}

double certified_epsilon(const PauliChannel& channel) { return certify(channel).certified_epsilon; }

void write_channel(std::ostream& out, const PauliChannel& channel) {
  out << "n=" << channel.n() << " m=" << channel.m() << '\n';
  for (std::size_t k = 0; k < channel.m(); ++k) {
    const auto& op = channel.ops()[k];
    out << PauliOp::hermitian(op.a(), op.b()).to_string();
    if (!channel.uniform()) out << " w=" << format_weight(channel.weights()[k]);
    out << '\n';
  }
}

PauliChannel read_channel(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("channel file is empty");
  std::size_t n = 0, m = 0;
  {
    std::istringstream hs(header);
    std::string n_tok, m_tok;
    hs >> n_tok >> m_tok;
    if (n_tok.rfind("n=", 0) != 0 || m_tok.rfind("m=", 0) != 0) {
      throw ParseError("channel header must read \"n=<n> m=<m>\", got \"" + header + "\"");
    }
    try {
      n = std::stoul(n_tok.substr(2));
      m = std::stoul(m_tok.substr(2));
    } catch (const std::exception&) {
      throw ParseError("channel header has non-numeric fields");
    }
  }
  std::vector<PauliOp> ops;
  std::vector<double> weights;
  std::string line;
  while (ops.size() < m && std::getline(in, line)) {
    std::istringstream ls(line);
    std::string pauli_tok, weight_tok;
    ls >> pauli_tok >> weight_tok;
    PauliOp op = PauliOp::parse(pauli_tok);
    if (op.n() != n) throw ParseError("channel line " + std::to_string(ops.size() + 2) + " has the wrong qubit count");
    ops.push_back(op.phase_free());
    if (!weight_tok.empty()) {
      if (weight_tok.rfind("w=", 0) != 0) throw ParseError("channel weight must read \"w=<weight>\"");
      try {
        weights.push_back(std::stod(weight_tok.substr(2)));
      } catch (const std::exception&) {
        throw ParseError("channel weight is not a number");
      }
    }
  }
  if (ops.size() != m) throw ParseError("channel file ends before " + std::to_string(m) + " operators");
  if (!weights.empty() && weights.size() != ops.size()) throw ParseError("either every operator has a weight or none does");
  if (!weights.empty()) return PauliChannel(n, std::move(ops), std::move(weights));

  std::vector<BitVector> keys;
  keys.reserve(ops.size());
  for (const auto& op : ops) keys.push_back(op.a().concat(op.b()));
  return PauliChannel(n, std::move(ops), {}, SampleSpace(2 * n, std::move(keys)));
}

std::string channel_to_text(const PauliChannel& channel) {
  std::ostringstream out;
  write_channel(out, channel);
  return out.str();
}

PauliChannel channel_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_channel(in);
}

UnitaryChannel haar_channel(Eigen::Index dim, std::size_t m, std::uint64_t seed) {
  const CounterRng root(seed);
  UnitaryChannel channel;
  channel.unitaries.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    CounterRng rng = root.derive(k);
    channel.unitaries.push_back(haar_unitary(dim, rng));
  }
  return channel;
}

ComplexMatrix apply_channel_pure(const UnitaryChannel& channel, const StateVector& psi) {
  if (channel.unitaries.empty()) throw DimensionError("unitary channel is empty");
  if (psi.size() != channel.dim()) throw DimensionError("apply_channel: state dimension does not match channel");
  ComplexMatrix out = ComplexMatrix::Zero(psi.size(), psi.size());
  const double w = 1.0 / static_cast<double>(channel.unitaries.size());
  for (const auto& u : channel.unitaries) {
    const StateVector v = u * psi;
    out.noalias() += w * (v * v.adjoint());
  }
  return out;
}

}  // namespace qrand
