#pragma once

// Sample spaces of bit strings with the uniform distribution over their
// (multi)set of members, the AGHP powering construction of small-bias spaces,
// and bias / k-wise independence measurements.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrand/bitlin.hpp"

namespace qrand {

/// Largest string length scanned exhaustively (2^24 histogram bins).
inline constexpr std::size_t kMaxExhaustiveBits = 24;

class SampleSpace {
 public:
  /// Every string must have length n; the list must be non-empty. Duplicates keep their multiplicity.
  SampleSpace(std::size_t n, std::vector<BitVector> strings);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return strings_.size(); }
  const std::vector<BitVector>& strings() const noexcept { return strings_; }
  const BitVector& operator[](std::size_t i) const { return strings_[i]; }

  /// Keeps the first `len` bits of every string.
  SampleSpace truncated(std::size_t len) const;

  /// Strings packed into integers (bit j <-> string bit j); requires n <= 64.
  std::vector<std::uint64_t> as_words() const;

  friend bool operator==(const SampleSpace&, const SampleSpace&) = default;

 private:
  std::size_t n_;
  std::vector<BitVector> strings_;
};

struct BiasReport {
  double max_bias = 0.0;
  BitVector witness;  // nonzero test achieving max_bias (smallest index on ties)
  std::uint64_t scanned = 0;
};

struct VaziraniReport {
  std::size_t k = 0;
  double epsilon_k = 0.0;  // max bias over tests of weight <= k
  double max_point_deviation = 0.0;
  double point_bound = 0.0;  // (1 - 2^-k) * epsilon_k
  double max_marginal_distance = 0.0;
  double distance_bound = 0.0;  // sqrt(2^k - 1) * epsilon_k
  std::uint64_t subsets_checked = 0;
  std::uint64_t violations = 0;
};

/// {0,1}^n in integer order.
SampleSpace full_cube(std::size_t n);

/// `size` independent uniform strings of length n.
SampleSpace random_space(std::size_t n, std::size_t size, std::uint64_t seed);

/// The AGHP powering space: for x, y in GF(2^r) (x outer, y inner, integer
/// order) the string whose bit i*r + j is <x^i * x^j, y>, i < s, j < r, i.e.
/// the GF(2) inner product of the coordinates of v_j * x^i with y.
/// Size 2^(2r), length r*s, bias at most (s-1)/2^r.
SampleSpace aghp_space(unsigned r, unsigned s);

/// |E_{z in S} (-1)^{alpha . z}| for nonzero alpha.
double bias_at(const SampleSpace& space, const BitVector& alpha);

/// Maximum bias over nonzero tests, optionally restricted to Hamming weight <= max_weight.
/// Uses a Walsh-Hadamard transform of the empirical histogram for n <= 24;
/// longer strings are only accepted with a weight restriction.
BiasReport max_bias(const SampleSpace& space, std::optional<std::size_t> max_weight = std::nullopt);

/// Variation distance of the marginal on `positions` (0-based, distinct) from uniform.
double marginal_distance(const SampleSpace& space, std::span<const std::size_t> positions);

/// Measures epsilon_k and checks the Vazirani point-wise and L1 bounds on every k-subset of positions.
VaziraniReport vazirani_report(const SampleSpace& space, std::size_t k);

/// Text format: "n=<n> size=<m>" then one bit string per line.
void write_space(std::ostream& out, const SampleSpace& space);
SampleSpace read_space(std::istream& in);
std::string space_to_text(const SampleSpace& space);
SampleSpace space_from_text(const std::string& text);

}  // namespace qrand
