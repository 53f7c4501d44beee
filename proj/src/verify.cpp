#include "qrand/verify.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <thread>

#include "qrand/error.hpp"
#include "qrand/rng.hpp"

namespace qrand {

namespace {

constexpr std::uint64_t kCatalogSeed = 0x51a7c0de2006ULL;
constexpr std::uint64_t kScanSeed = 0x5ca11ab1eULL;
constexpr std::size_t kExhaustiveScanQubits = 6;
constexpr std::size_t kSampledWitnesses = 4096;
constexpr std::size_t kFamilyCap = 6561;
constexpr std::uint64_t kClimbStream = std::uint64_t{1} << 40;

double variation_from_uniform(const std::vector<std::uint64_t>& counts, std::size_t total) {
  const double uniform = 1.0 / static_cast<double>(counts.size());
  double dist = 0.0;
  for (auto c : counts) dist += std::abs(static_cast<double>(c) / static_cast<double>(total) - uniform);
  return dist;
}

std::size_t key_qubits(const SampleSpace& space) {
  if (space.n() % 2) throw DimensionError("key space must hold 2n-bit strings");
  return space.n() / 2;
}

bool all_identity(std::string_view w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c == 'I'; });
}

std::string sampled_word(std::string_view alphabet, std::size_t n, CounterRng& rng) {
  std::string w(n, alphabet.front());
  for (auto& ch : w) ch = alphabet[rng.below(alphabet.size())];
  return w;
}

// Either every word (when there are at most `cap`) or `cap` uniform samples.
std::vector<std::string> words_or_sample(std::string_view alphabet, std::size_t n, std::size_t cap, bool skip_identity,
                                         std::uint64_t seed, bool* exhaustive) {
  const double total = std::pow(static_cast<double>(alphabet.size()), static_cast<double>(n));
  std::vector<std::string> out;
  if (total <= static_cast<double>(cap) + (skip_identity ? 1.0 : 0.0)) {
    for (auto& w : all_words(alphabet, n)) {
      if (skip_identity && all_identity(w)) continue;
      out.push_back(std::move(w));
    }
    if (exhaustive) *exhaustive = true;
    return out;
  }
  CounterRng rng(seed);
  while (out.size() < cap) {
    auto w = sampled_word(alphabet, n, rng);
    if (skip_identity && all_identity(w)) continue;
    out.push_back(std::move(w));
  }
  if (exhaustive) *exhaustive = false;
  return out;
}

// values[i] = f(i), computed on `threads` workers with a static partition.
template <typename F>
std::vector<double> parallel_values(std::size_t count, unsigned threads, F&& f) {
  std::vector<double> values(count);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) values[i] = f(i);
    return values;
  }
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) values[i] = f(i);
    });
  }
  return values;
}

struct Candidate {
  std::string origin;
  std::function<StateVector()> make;
};

// Binary symplectic Clifford moves on generator rows (a | b).
void apply_h(BitMatrix& g, std::size_t n, std::size_t j) {
  for (std::size_t i = 0; i < g.rows(); ++i) {
    const bool a = g.get(i, j);
    const bool b = g.get(i, n + j);
    g.set(i, j, b);
    g.set(i, n + j, a);
  }
}

void apply_s(BitMatrix& g, std::size_t n, std::size_t j) {
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (g.get(i, j)) g.set(i, n + j, !g.get(i, n + j));
  }
}

void apply_cnot(BitMatrix& g, std::size_t n, std::size_t c, std::size_t t) {
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (g.get(i, c)) g.set(i, t, !g.get(i, t));
    if (g.get(i, n + t)) g.set(i, n + c, !g.get(i, n + c));
  }
}

BitMatrix z_group(std::size_t n) {
  BitMatrix g(n, 2 * n);
  for (std::size_t j = 0; j < n; ++j) g.set(j, n + j);
  return g;
}

}  // namespace

std::vector<std::string> all_words(std::string_view alphabet, std::size_t n) {
  std::vector<std::string> out;
  std::vector<std::size_t> digit(n, 0);
  while (true) {
    std::string w(n, ' ');
    for (std::size_t j = 0; j < n; ++j) w[j] = alphabet[digit[j]];
    out.push_back(std::move(w));
    std::size_t j = 0;
    while (j < n && ++digit[j] == alphabet.size()) digit[j++] = 0;
    if (j == n) break;
  }
  return out;
}

StateVector product_eigenstate(std::string_view basis, const BitVector& signs) {
  const std::size_t n = basis.size();
  if (signs.size() != n) throw DimensionError("product_eigenstate: sign string length mismatch");
  if (n > kMaxDenseQubits) throw CapacityError("product_eigenstate supports at most 10 qubits");
  const double h = 1.0 / std::sqrt(2.0);
  // amplitudes[j][bit] of the single-qubit factor
  std::vector<std::array<cplx, 2>> factor(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = signs.get(j) ? -1.0 : 1.0;
    switch (basis[j]) {
      case 'Z':
        factor[j] = signs.get(j) ? std::array<cplx, 2>{0.0, 1.0} : std::array<cplx, 2>{1.0, 0.0};
        break;
      case 'X':
        factor[j] = {h, s * h};
        break;
      case 'Y':
        factor[j] = {h, cplx(0.0, s * h)};
        break;
      default:
        throw InvalidTestError("product eigenstates need a basis over {X,Y,Z}");
    }
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  StateVector psi(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    cplx amp = 1.0;
    for (std::size_t j = 0; j < n; ++j) amp *= factor[j][(static_cast<std::uint64_t>(c) >> j) & 1u];
    psi(c) = amp;
  }
  return psi;
}

StateVector product_eigenstate(std::string_view basis) { return product_eigenstate(basis, BitVector(basis.size())); }

PauliOp cat_flip_operator(std::string_view w) {
  check_basis_string(w, w.size());
  BitVector a(w.size()), b(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] == 'Z' || w[j] == 'Y') a.set(j);
    if (w[j] == 'X' || w[j] == 'Y') b.set(j);
  }
  return PauliOp::hermitian(std::move(a), std::move(b));
}

StateVector cat_state(std::string_view w) {
  check_basis_string(w, w.size());
  if (all_identity(w)) throw InvalidTestError("cat state needs at least one non-identity position");
  std::string base(w.size(), 'Z');
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] == 'X') base[j] = 'X';
  }
  const StateVector phi = product_eigenstate(base);
  const StateVector cat = phi + pauli_apply(cat_flip_operator(w), phi);
  return cat / cat.norm();
}

StateVector subspace_state(const BitMatrix& basis) {
  const std::size_t n = basis.cols();
  const std::size_t k = basis.rows();
  if (n > kMaxDenseQubits) throw CapacityError("subspace_state supports at most 10 qubits");
  if (gf2_rank(basis) != k) throw DependentGeneratorsError("subspace basis rows are dependent");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  StateVector psi = StateVector::Zero(dim);
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(k));
  for (std::uint64_t combo = 0; combo < (std::uint64_t{1} << k); ++combo) {
    BitVector w(n);
    for (std::size_t i = 0; i < k; ++i) {
      if ((combo >> i) & 1u) w ^= basis.row(i);
    }
    psi(static_cast<Eigen::Index>(w.to_word())) = amp;
  }
  return psi;
}

std::vector<StabilizerGroup> stabilizer_catalog(std::size_t n) {
  if (n == 0) throw DimensionError("stabilizer catalog needs n >= 1");
  std::vector<StabilizerGroup> groups;

  bool exhaustive = true;
  for (const auto& v : words_or_sample("XYZ", n, n <= kExhaustiveScanQubits ? kFamilyCap : 243, false, kCatalogSeed,
                                       &exhaustive)) {
    BitMatrix g(n, 2 * n);
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] != 'Z') g.set(j, j);
      if (v[j] != 'X') g.set(j, n + j);
    }
    groups.push_back(stab_validate(std::move(g)));
  }

  // GHZ: X^{(x)n} and Z_j Z_{j+1}
  BitMatrix ghz(n, 2 * n);
  for (std::size_t j = 0; j < n; ++j) ghz.set(0, j);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    ghz.set(j + 1, n + j);
    ghz.set(j + 1, n + j + 1);
  }
  BitMatrix ghz_x = swap_halves(ghz);
  BitMatrix ghz_y = ghz_x;
  for (std::size_t j = 0; j < n; ++j) apply_s(ghz_y, n, j);
  groups.push_back(stab_validate(ghz));
  groups.push_back(stab_validate(ghz_x));
  groups.push_back(stab_validate(ghz_y));

  // linear cluster: X_j Z_{j-1} Z_{j+1}
  BitMatrix cluster(n, 2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    cluster.set(j, j);
    if (j > 0) cluster.set(j, n + j - 1);
    if (j + 1 < n) cluster.set(j, n + j + 1);
  }
  groups.push_back(stab_validate(cluster));
  groups.push_back(stab_validate(swap_halves(cluster)));

  CounterRng rng(kCatalogSeed);
  for (int k = 0; k < 32; ++k) {
    BitMatrix g = z_group(n);
    const std::size_t gates = 4 * n * n + 4;
    for (std::size_t step = 0; step < gates; ++step) {
      const auto kind = rng.below(n > 1 ? 3 : 2);
      const auto j = static_cast<std::size_t>(rng.below(n));
      if (kind == 0) {
        apply_h(g, n, j);
      } else if (kind == 1) {
        apply_s(g, n, j);
      } else {
        auto t = static_cast<std::size_t>(rng.below(n - 1));
        if (t >= j) ++t;
        apply_cnot(g, n, j, t);
      }
    }
    BitVector signs(n);
    for (std::size_t j = 0; j < n; ++j) signs.set(j, rng() >> 63);
    groups.push_back(stab_validate(std::move(g), std::move(signs)));
  }
  return groups;
}

double evaluate_state(const PauliChannel& channel, const StateVector& psi, NormKind norm) {
  return distance_from_mixed(apply_channel_pure(channel, psi), norm);
}

AttackReport empirical_epsilon(const PureAction& action, std::size_t n, const AttackOptions& options) {
  if (n > kMaxChannelQubits) {
    throw CapacityError("empirical_epsilon supports at most 8 qubits, got " + std::to_string(n));
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  const CounterRng root(options.seed);
  auto objective = [&](const StateVector& psi) { return distance_from_mixed(action(psi), options.norm); };

  AttackReport report;
  report.norm_kind = options.norm;
  report.probes = options.probes;

  std::vector<Candidate> candidates;
  if (options.families.product) {
    report.families_used.emplace_back("product");
    for (auto& v : words_or_sample("XYZ", n, kFamilyCap, false, kScanSeed, nullptr)) {
      candidates.push_back({"product", [v] { return product_eigenstate(v); }});
    }
  }
  if (options.families.cat) {
    report.families_used.emplace_back("cat");
    for (auto& w : words_or_sample("IXYZ", n, kFamilyCap, true, kScanSeed + 1, nullptr)) {
      candidates.push_back({"cat", [w] { return cat_state(w); }});
    }
  }
  if (options.families.stabilizer) {
    report.families_used.emplace_back("stabilizer");
    for (auto& g : stabilizer_catalog(n)) {
      candidates.push_back({"stabilizer", [g] { return stab_state(g); }});
    }
  }
  if (options.probes > 0) {
    report.families_used.emplace_back("random");
    for (std::size_t i = 0; i < options.probes; ++i) {
      candidates.push_back({"random", [&root, i, dim] {
                              CounterRng rng = root.derive(i);
                              return random_state(dim, rng);
                            }});
    }
  }
  if (candidates.empty()) throw InvalidTestError("attack needs probes or at least one state family");
  report.candidates = candidates.size();

  const auto values =
      parallel_values(candidates.size(), options.threads, [&](std::size_t i) { return objective(candidates[i].make()); });

  // Best candidates first; ties keep the earlier index.
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
  const std::size_t restarts = std::max<std::size_t>(1, std::min(options.restarts, order.size()));

  struct Climb {
    double value;
    StateVector state;
    int improvements;
  };
  std::vector<Climb> climbs(restarts);
  auto climb = [&](std::size_t r) {
    StateVector current = candidates[order[r]].make();
    double value = values[order[r]];
    int improvements = 0;
    CounterRng rng = root.derive(kClimbStream + r);
    double sigma = 0.1;
    int failures = 0;
    for (int round = 0; round < options.climb_rounds; ++round) {
      StateVector trial = current;
      for (Eigen::Index i = 0; i < dim; ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        trial(i) += sigma * cplx(re, im);
      }
      trial /= trial.norm();
      const double v = objective(trial);
      if (v > value) {
        value = v;
        current = std::move(trial);
        failures = 0;
        ++improvements;
      } else if (++failures >= 10) {
        sigma /= 2.0;
        failures = 0;
      }
    }
    climbs[r] = {value, std::move(current), improvements};
    return value;
  };
  if (options.climb_rounds > 0) {
    report.families_used.emplace_back("hill_climb");
    parallel_values(restarts, options.threads, climb);
  } else {
    for (std::size_t r = 0; r < restarts; ++r) climbs[r] = {values[order[r]], candidates[order[r]].make(), 0};
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (climbs[r].value > climbs[best].value) best = r;
  }
  report.witness = climbs[best].state;
  report.epsilon_hat = objective(report.witness);
  report.witness_origin = candidates[order[best]].origin;
  report.climb_improvements = climbs[best].improvements;
  return report;
}

AttackReport empirical_epsilon(const PauliChannel& channel, const AttackOptions& options) {
  return empirical_epsilon([&](const StateVector& psi) { return apply_channel_pure(channel, psi); }, channel.n(),
                           options);
}

AttackReport empirical_epsilon(const UnitaryChannel& channel, const AttackOptions& options) {
  const auto dim = static_cast<std::size_t>(channel.dim());
  if (dim == 0 || (dim & (dim - 1))) throw DimensionError("attack families need a power-of-two dimension");
  const auto n = static_cast<std::size_t>(std::countr_zero(dim));
  return empirical_epsilon([&](const StateVector& psi) { return apply_channel_pure(channel, psi); }, n, options);
}

double sigma_v_condition(const SampleSpace& space, std::string_view basis) {
  const std::size_t n = key_qubits(space);
  check_basis_string(basis, n);
  if (all_identity(basis)) throw InvalidTestError("sigma_v_condition needs a non-identity basis string");
  const auto ell = static_cast<std::size_t>(std::count_if(basis.begin(), basis.end(), [](char c) { return c != 'I'; }));
  if (ell > 20) throw CapacityError("sigma_v_condition supports at most 20 non-identity positions");
  std::vector<std::uint64_t> counts(std::size_t{1} << ell, 0);
  for (const auto& z : space.strings()) {
    ++counts[sigma_v(basis, {z.slice(0, n), z.slice(n, n)}).to_word()];
  }
  return variation_from_uniform(counts, space.size());
}

BitVector cat_test_vector(std::string_view w) {
  check_basis_string(w, w.size());
  if (all_identity(w)) throw InvalidTestError("cat_condition needs a non-identity string");
  const std::size_t n = w.size();
  BitVector alpha(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    if (w[j] == 'X' || w[j] == 'Y') alpha.set(j);
    if (w[j] == 'Z' || w[j] == 'Y') alpha.set(n + j);
  }
  return alpha;
}

double cat_condition(const SampleSpace& space, std::string_view w) {
  const std::size_t n = key_qubits(space);
  check_basis_string(w, n);
  return bias_at(space, cat_test_vector(w));
}

double stabilizer_condition(const SampleSpace& space, const StabilizerGroup& group) {
  const std::size_t n = key_qubits(space);
  if (group.n() != n) throw DimensionError("stabilizer group acts on the wrong number of qubits");
  if (n > kMaxDenseQubits) throw CapacityError("stabilizer_condition supports at most 10 qubits");
  const BitMatrix h = stab_dual(group);
  std::vector<std::uint64_t> counts(std::size_t{1} << n, 0);
  for (const auto& z : space.strings()) ++counts[(h * z).to_word()];
  return variation_from_uniform(counts, space.size());
}

double subspace_condition(const SampleSpace& space, const BitMatrix& basis) {
  const std::size_t n = key_qubits(space);
  if (basis.cols() != n) throw DimensionError("subspace basis has the wrong length");
  if (basis.rows() > n) throw DimensionError("subspace basis has more rows than qubits");
  if (gf2_rank(basis) != basis.rows()) throw DependentGeneratorsError("subspace basis rows are dependent");
  if (n > 20) throw CapacityError("subspace_condition supports at most 20 qubits");
  const BitMatrix parity = gf2_kernel(basis);  // rows span W-perp: H a = 0 iff a in W
  std::vector<std::uint64_t> counts(std::size_t{1} << n, 0);
  for (const auto& z : space.strings()) {
    const BitVector label = (parity * z.slice(0, n)).concat(basis * z.slice(n, n));
    ++counts[label.to_word()];
  }
  return variation_from_uniform(counts, space.size());
}

bool rank_bound(std::size_t m, std::size_t d, double epsilon) {
  return static_cast<double>(m) >= static_cast<double>(d) * (1.0 - epsilon / 2.0);
}

DiagnosticsReport diagnose(const PauliChannel& channel) {
  if (!channel.source()) throw NotApplicableError("diagnostics need the channel's source key space");
  const SampleSpace& space = *channel.source();
  const std::size_t n = channel.n();
  DiagnosticsReport rep;

  bool exhaustive_v = true;
  bool exhaustive_w = true;
  const std::size_t cap_v = n <= kExhaustiveScanQubits ? kFamilyCap : kSampledWitnesses;
  const std::size_t cap_w = n <= kExhaustiveScanQubits ? kFamilyCap : kSampledWitnesses;
  rep.sigma_v_max = -1.0;
  for (const auto& v : words_or_sample("XYZ", n, cap_v, false, kScanSeed, &exhaustive_v)) {
    const double d = sigma_v_condition(space, v);
    if (d > rep.sigma_v_max) {
      rep.sigma_v_max = d;
      rep.sigma_v_witness = v;
    }
  }
  rep.cat_max = -1.0;
  for (const auto& w : words_or_sample("IXYZ", n, cap_w, true, kScanSeed + 1, &exhaustive_w)) {
    const double b = cat_condition(space, w);
    if (b > rep.cat_max) {
      rep.cat_max = b;
      rep.cat_witness = w;
    }
  }
  const auto catalog = stabilizer_catalog(n);
  rep.stabilizer_groups = catalog.size();
  rep.stabilizer_max = -1.0;
  for (const auto& g : catalog) {
    const double d = stabilizer_condition(space, g);
    if (d > rep.stabilizer_max) {
      rep.stabilizer_max = d;
      rep.stabilizer_witness = g.to_string();
    }
  }
  rep.exhaustive = exhaustive_v && exhaustive_w;
  rep.certified_epsilon = certified_epsilon(channel);
  rep.rank_bound_ok = rank_bound(channel.m(), channel.dim(), rep.certified_epsilon);
  return rep;
}

}  // namespace qrand
