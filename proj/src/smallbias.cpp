#include "qrand/smallbias.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "qrand/error.hpp"
#include "qrand/gf2ext.hpp"
#include "qrand/rng.hpp"

namespace qrand {

namespace {

// In-place Walsh-Hadamard transform: out[alpha] = sum_z in[z] (-1)^{popcount(alpha & z)}.
void walsh_hadamard(std::vector<std::int64_t>& v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const auto x = v[j];
        const auto y = v[j + len];
        v[j] = x + y;
        v[j + len] = x - y;
      }
    }
  }
}

// Calls f(mask) for every subset of {0..n-1} of size exactly k, in colexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k == 0 || k > n) return;
  std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (mask < limit) {
    f(mask);
    // Gosper's hack
    const std::uint64_t c = mask & (~mask + 1);
    const std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
}

std::vector<std::size_t> mask_positions(std::uint64_t mask) {
  std::vector<std::size_t> pos;
  while (mask) {
    pos.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return pos;
}

std::vector<double> marginal_distribution(const SampleSpace& space, std::span<const std::size_t> positions) {
  std::vector<double> p(std::size_t{1} << positions.size(), 0.0);
  const double weight = 1.0 / static_cast<double>(space.size());
  for (const auto& z : space.strings()) {
    std::size_t beta = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (z.get(positions[i])) beta |= std::size_t{1} << i;
    }
    p[beta] += weight;
  }
  return p;
}

}  // namespace

SampleSpace::SampleSpace(std::size_t n, std::vector<BitVector> strings) : n_(n), strings_(std::move(strings)) {
  if (strings_.empty()) throw DimensionError("sample space must contain at least one string");
  for (const auto& z : strings_) {
    if (z.size() != n_) throw DimensionError("sample space string has length " + std::to_string(z.size()) +
                                             ", expected " + std::to_string(n_));
  }
}

SampleSpace SampleSpace::truncated(std::size_t len) const {
  if (len > n_) throw DimensionError("cannot truncate to a longer length");
  std::vector<BitVector> out;
  out.reserve(strings_.size());
  for (const auto& z : strings_) out.push_back(z.slice(0, len));
  return SampleSpace(len, std::move(out));
}

std::vector<std::uint64_t> SampleSpace::as_words() const {
  if (n_ > 64) throw CapacityError("strings longer than 64 bits cannot be packed into words");
  std::vector<std::uint64_t> w;
  w.reserve(strings_.size());
  for (const auto& z : strings_) w.push_back(z.to_word());
  return w;
}

SampleSpace full_cube(std::size_t n) {
  if (n > kMaxExhaustiveBits) throw CapacityError("full cube limited to n <= 24");
  std::vector<BitVector> strings;
  strings.reserve(std::size_t{1} << n);
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) strings.push_back(BitVector::from_word(n, z));
  return SampleSpace(n, std::move(strings));
}

SampleSpace random_space(std::size_t n, std::size_t size, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<BitVector> strings;
  strings.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    BitVector z(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (rng() >> 63) z.set(j);
    }
    strings.push_back(std::move(z));
  }
  return SampleSpace(n, std::move(strings));
}

SampleSpace aghp_space(unsigned r, unsigned s) {
  if (r < 1 || r > 16) throw UnsupportedDegreeError("aghp_space supports 1 <= r <= 16, got " + std::to_string(r));
  if (r > 12) throw CapacityError("aghp_space with r > 12 would hold more than 2^24 strings");
  if (s < 1) throw DimensionError("aghp_space requires s >= 1");
  const FieldSpec field = field_spec(r);
  const std::size_t len = std::size_t{r} * s;
  const std::uint64_t q = std::uint64_t{1} << r;

  std::vector<BitVector> strings;
  strings.reserve(q * q);
  // rows[i*r + j] = coordinates of v_j * x^i, with v_j = x^j the standard basis.
  std::vector<std::uint64_t> rows(len);
  for (std::uint64_t x = 0; x < q; ++x) {
    FieldElement power = field.one();
    const FieldElement xe = field.element(x);
    for (unsigned i = 0; i < s; ++i) {
      for (unsigned j = 0; j < r; ++j) {
        rows[std::size_t{i} * r + j] = gf_mul(field, field.element(std::uint64_t{1} << j), power).value;
      }
      power = gf_mul(field, power, xe);
    }
    for (std::uint64_t y = 0; y < q; ++y) {
      BitVector z(len);
      for (std::size_t bit = 0; bit < len; ++bit) {
        if (std::popcount(rows[bit] & y) & 1) z.set(bit);
      }
      strings.push_back(std::move(z));
    }
  }
  return SampleSpace(len, std::move(strings));
}

double bias_at(const SampleSpace& space, const BitVector& alpha) {
  if (alpha.size() != space.n()) throw DimensionError("bias test length does not match sample space");
  if (alpha.is_zero()) throw InvalidTestError("bias at the zero test is identically 1 and is not a linear test");
  std::int64_t sum = 0;
  for (const auto& z : space.strings()) sum += gf2_dot(alpha, z) ? -1 : 1;
  return std::abs(static_cast<double>(sum)) / static_cast<double>(space.size());
}

BiasReport max_bias(const SampleSpace& space, std::optional<std::size_t> max_weight) {
  const std::size_t n = space.n();
  const std::size_t limit = max_weight.value_or(n);
  if (n == 0 || limit == 0) throw InvalidTestError("no nonzero linear test to scan");

  BiasReport report;
  if (n <= kMaxExhaustiveBits) {
    std::vector<std::int64_t> hist(std::size_t{1} << n, 0);
    for (auto z : space.as_words()) ++hist[z];
    walsh_hadamard(hist);
    std::int64_t best = -1;
    std::uint64_t witness = 0;
    for (std::uint64_t alpha = 1; alpha < hist.size(); ++alpha) {
      if (static_cast<std::size_t>(std::popcount(alpha)) > limit) continue;
      ++report.scanned;
      const auto mag = std::abs(hist[alpha]);
      if (mag > best) {
        best = mag;
        witness = alpha;
      }
    }
    report.max_bias = static_cast<double>(best) / static_cast<double>(space.size());
    report.witness = BitVector::from_word(n, witness);
    return report;
  }

  if (!max_weight) {
    throw CapacityError("exhaustive bias scan needs n <= 24 (got " + std::to_string(n) +
                        "); pass a max weight to restrict the tests");
  }
  if (n > 63) throw CapacityError("weight-restricted scan supports n <= 63");
  const auto words = space.as_words();
  double best = -1.0;
  std::uint64_t witness = 0;
  for (std::size_t w = 1; w <= limit; ++w) {
    std::uint64_t found_at_w = 0;
    double best_at_w = -1.0;
    for_each_subset(n, w, [&](std::uint64_t alpha) {
      std::int64_t sum = 0;
      for (auto z : words) sum += (std::popcount(alpha & z) & 1) ? -1 : 1;
      ++report.scanned;
      const double b = std::abs(static_cast<double>(sum)) / static_cast<double>(words.size());
      if (b > best_at_w || (b == best_at_w && alpha < found_at_w)) {
        best_at_w = b;
        found_at_w = alpha;
      }
    });
    if (best_at_w > best || (best_at_w == best && found_at_w < witness)) {
      best = best_at_w;
      witness = found_at_w;
    }
  }
  report.max_bias = best;
  report.witness = BitVector::from_word(n, witness);
  return report;
}

double marginal_distance(const SampleSpace& space, std::span<const std::size_t> positions) {
  if (positions.empty()) throw InvalidTestError("marginal distance needs a non-empty position set");
  if (positions.size() > 20) throw CapacityError("marginal distance supports at most 20 positions");
  for (auto p : positions) {
    if (p >= space.n()) throw DimensionError("position outside the string length");
  }
  const auto p = marginal_distribution(space, positions);
  const double uniform = 1.0 / static_cast<double>(p.size());
  double dist = 0.0;
  for (double x : p) dist += std::abs(x - uniform);
  return dist;
}

VaziraniReport vazirani_report(const SampleSpace& space, std::size_t k) {
  if (k == 0 || k > 10) throw InvalidTestError("vazirani_report needs 1 <= k <= 10");
  if (k > space.n()) throw DimensionError("k exceeds the string length");
  if (space.n() > kMaxExhaustiveBits) throw CapacityError("vazirani_report needs n <= 24");

  VaziraniReport rep;
  rep.k = k;
  rep.epsilon_k = max_bias(space, k).max_bias;
  const double cells = std::ldexp(1.0, static_cast<int>(k));
  rep.point_bound = (1.0 - 1.0 / cells) * rep.epsilon_k;
  rep.distance_bound = std::sqrt(cells - 1.0) * rep.epsilon_k;
  constexpr double slack = 1e-12;

  for_each_subset(space.n(), k, [&](std::uint64_t mask) {
    const auto positions = mask_positions(mask);
    const auto p = marginal_distribution(space, positions);
    double point = 0.0;
    double dist = 0.0;
    for (double x : p) {
      const double dev = std::abs(x - 1.0 / cells);
      point = std::max(point, dev);
      dist += dev;
    }
    rep.max_point_deviation = std::max(rep.max_point_deviation, point);
    rep.max_marginal_distance = std::max(rep.max_marginal_distance, dist);
    if (point > rep.point_bound + slack) ++rep.violations;
    if (dist > rep.distance_bound + slack) ++rep.violations;
    ++rep.subsets_checked;
  });
  return rep;
}

void write_space(std::ostream& out, const SampleSpace& space) {
  out << "n=" << space.n() << " size=" << space.size() << '\n';
  for (const auto& z : space.strings()) out << z.to_string() << '\n';
}

SampleSpace read_space(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("space file is empty");
  std::size_t n = 0;
  std::size_t size = 0;
  {
    std::istringstream hs(header);
    std::string n_tok, size_tok;
    hs >> n_tok >> size_tok;
    if (n_tok.rfind("n=", 0) != 0 || size_tok.rfind("size=", 0) != 0) {
      throw ParseError("space header must read \"n=<n> size=<m>\", got \"" + header + "\"");
    }
    try {
      n = std::stoul(n_tok.substr(2));
      size = std::stoul(size_tok.substr(5));
    } catch (const std::exception&) {
      throw ParseError("space header has non-numeric fields: \"" + header + "\"");
    }
  }
  std::vector<BitVector> strings;
  strings.reserve(size);
  std::string line;
  while (strings.size() < size && std::getline(in, line)) {
    if (line.size() != n) {
      throw ParseError("space line " + std::to_string(strings.size() + 2) + " has length " +
                       std::to_string(line.size()) + ", expected " + std::to_string(n));
    }
    strings.push_back(BitVector::from_string(line));
  }
  if (strings.size() != size) throw ParseError("space file ends before " + std::to_string(size) + " strings");
  return SampleSpace(n, std::move(strings));
}

std::string space_to_text(const SampleSpace& space) {
  std::ostringstream out;
  write_space(out, space);
  return out.str();
}

SampleSpace space_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_space(in);
}

}  // namespace qrand
