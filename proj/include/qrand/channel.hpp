#pragma once

// Randomizing channels built from Pauli operators: E(rho) = sum_k w_k P_k rho P_k^dagger.
// Channels store phase-free labels since conjugation cancels the phase.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qrand/linalg.hpp"
#include "qrand/pauli.hpp"
#include "qrand/smallbias.hpp"

namespace qrand {

/// Largest register for channel Fourier tables and attacks (4^8 coefficients, d = 256).
inline constexpr std::size_t kMaxChannelQubits = 8;

class PauliChannel {
 public:
  /// Empty `weights` means uniform. Weights must be non-negative and sum to 1 within 1e-12.
  PauliChannel(std::size_t n, std::vector<PauliOp> ops, std::vector<double> weights = {},
               std::optional<SampleSpace> source = std::nullopt);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return ops_.size(); }
  std::size_t dim() const noexcept { return std::size_t{1} << n_; }
  const std::vector<PauliOp>& ops() const noexcept { return ops_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  bool uniform() const noexcept { return uniform_; }
  const std::optional<SampleSpace>& source() const noexcept { return source_; }

  /// Bits needed to select an operator uniformly: ceil(log2 m).
  unsigned key_bits() const noexcept;

 private:
  std::size_t n_;
  std::vector<PauliOp> ops_;
  std::vector<double> weights_;
  bool uniform_ = true;
  std::optional<SampleSpace> source_;
};

/// c(u,v) = sum_k w_k (-1)^{a_k.v + b_k.u}: the factor by which the channel
/// scales the X^u Z^v component of its input.
class FourierTable {
 public:
  FourierTable(std::size_t n, std::vector<double> coeffs);

  std::size_t n() const noexcept { return n_; }
  double at(std::uint64_t u, std::uint64_t v) const { return coeffs_.at(u | (v << n_)); }
  /// Flat storage indexed by u | (v << n).
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }

 private:
  std::size_t n_;
  std::vector<double> coeffs_;
};

struct Certificate {
  std::size_t n = 0;
  std::size_t m = 0;
  unsigned key_bits = 0;
  double delta = 0.0;  // max |c(u,v)| over (u,v) != (0,0)
  std::uint64_t witness_u = 0;
  std::uint64_t witness_v = 0;
  double certified_epsilon = 0.0;  // 2^{n/2} * delta
};

/// Parameters chosen by aghp_channel.
struct AghpParameters {
  unsigned r = 0;
  unsigned s = 0;
  bool fallback = false;  // true when the one-time pad is used instead
  unsigned key_bits = 0;
};

/// Uniform mixture of all 4^n phase-free Paulis, in (a outer, b inner) integer order. n <= 8.
PauliChannel qotp(std::size_t n);

/// Splits each 2n-bit string into (a, b) = (first n bits, last n bits); keeps multiplicity.
PauliChannel channel_from_space(const SampleSpace& space);

/// Smallest r such that, with s = ceil(2n/r), (s-1)/2^r <= eps * 2^{-n/2}; the
/// one-time pad whenever no such r gives fewer than 4^n keys.
AghpParameters aghp_parameters(std::size_t n, double epsilon);
PauliChannel aghp_channel(std::size_t n, double epsilon);

/// m i.i.d. uniform phase-free Paulis (with replacement).
PauliChannel random_pauli_channel(std::size_t n, std::size_t m, std::uint64_t seed);

/// sum_k w_k P_k rho P_k^dagger via index permutation and sign flips.
ComplexMatrix apply_channel(const PauliChannel& channel, const ComplexMatrix& rho);
DensityMatrix apply_channel(const PauliChannel& channel, const DensityMatrix& rho);
/// E(|psi><psi|) without forming the input matrix.
ComplexMatrix apply_channel_pure(const PauliChannel& channel, const StateVector& psi);

FourierTable fourier_coeffs(const PauliChannel& channel);
Certificate certify(const PauliChannel& channel);
/// 2^{n/2} * max_{(u,v) != 0} |c(u,v)|: an upper bound on the trace-norm epsilon.
double certified_epsilon(const PauliChannel& channel);

/// Channel text format: "n=<n> m=<m>", then one Pauli per line with an
/// optional " w=<weight>" suffix (written only for non-uniform channels).
/// A uniform channel read back carries its key multiset as source space.
void write_channel(std::ostream& out, const PauliChannel& channel);
PauliChannel read_channel(std::istream& in);
std::string channel_to_text(const PauliChannel& channel);
PauliChannel channel_from_text(const std::string& text);

/// Uniform mixture of Haar-random unitaries (d x d), for operator-norm comparisons.
struct UnitaryChannel {
  std::vector<ComplexMatrix> unitaries;
  Eigen::Index dim() const { return unitaries.empty() ? 0 : unitaries.front().rows(); }
};
UnitaryChannel haar_channel(Eigen::Index dim, std::size_t m, std::uint64_t seed);
ComplexMatrix apply_channel_pure(const UnitaryChannel& channel, const StateVector& psi);

}  // namespace qrand
