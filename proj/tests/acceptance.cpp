#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qrand/channel.hpp"
#include "qrand/linalg.hpp"
#include "qrand/pauli.hpp"
#include "qrand/smallbias.hpp"
#include "qrand/verify.hpp"

using namespace qrand;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

SampleSpace ixz_space() {
  return SampleSpace(2, {BitVector::from_string("00"), BitVector::from_string("10"), BitVector::from_string("01")});
}

double distance_at(const PauliChannel& ch, const StateVector& psi) {
  return oracle::distance_from_mixed(oracle::dense_channel(ch, psi * psi.adjoint()));
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

Outcome qotp_exactness() {
  double worst = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto ch = qotp(n);
    const auto dim = static_cast<Eigen::Index>(ch.dim());
    CounterRng rng(1000 + n);
    for (int t = 0; t < 100; ++t) {
      const auto rho = random_density(dim, rng);
      const auto out = apply_channel(ch, rho);
      worst = std::max(worst, trace_distance(out, DensityMatrix::maximally_mixed(dim)));
    }
  }
  return {worst <= 1e-10, fmt("max trace distance %.3g", worst)};
}

Outcome one_qubit_optimum() {
  const auto ch = channel_from_space(ixz_space());
  const double third = 1.0 / 3.0;
  const auto attack = empirical_epsilon(ch);
  const double cert = certified_epsilon(ch);
  const auto diag = diagnose(ch);
  const double att_err = attack.epsilon_hat - third;
  const bool ok = att_err >= -1e-6 && att_err <= 1e-9 && std::abs(cert - std::sqrt(2.0) / 3.0) <= 1e-12 &&
                  std::abs(diag.sigma_v_max - third) <= 1e-9 && std::abs(diag.cat_max - third) <= 1e-9 &&
                  std::abs(diag.stabilizer_max - third) <= 1e-9;
  return {ok, fmt("epsilon_hat %.12f certified %.15f", attack.epsilon_hat, cert) +
                  fmt(" diagnostics %.12f %.12f %.12f", diag.sigma_v_max, diag.cat_max, diag.stabilizer_max)};
}

Outcome aghp_bias_bound() {
  int cases = 0;
  double worst_ratio = 0.0;
  bool ok = true;
  for (unsigned r = 1; r <= 5; ++r)
    for (unsigned s = 1; s <= 5; ++s) {
      if (r * s > 24) continue;
      const double bound = static_cast<double>(s - 1) / std::ldexp(1.0, static_cast<int>(r));
      const double b = max_bias(aghp_space(r, s)).max_bias;
      ok = ok && b <= bound + 1e-15;
      if (bound > 0) worst_ratio = std::max(worst_ratio, b / bound);
      ++cases;
    }
  return {ok, fmt("%.0f (r,s) pairs, max bias/bound %.4f", cases, worst_ratio)};
}

Outcome certificate_soundness() {
  AttackOptions options;
  options.probes = 2000;
  double worst_gap = -1e300;
  int channels = 0;
  bool ok = true;
  auto check = [&](const PauliChannel& ch, std::uint64_t seed) {
    options.seed = seed;
    const double e = empirical_epsilon(ch, options).epsilon_hat;
    const double c = certified_epsilon(ch);
    ok = ok && e <= c + 1e-9;
    worst_gap = std::max(worst_gap, e - c);
    ++channels;
  };
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::uint64_t i = 0; i < 10; ++i) {
      const std::size_t size = 2 + (i * 7 + n) % (std::size_t{1} << (n + 1));
      check(channel_from_space(random_space(2 * n, size, 5000 + 100 * n + i)), i);
    }
    for (double eps : {0.5, 1.0, 1.5}) check(aghp_channel(n, eps), n);
    for (unsigned r = 1; r <= 4; ++r) {
      const unsigned s = (2 * static_cast<unsigned>(n) + r - 1) / r;
      if (r * s > 24) continue;
      const auto space = aghp_space(r, s);
      std::vector<BitVector> keys;
      for (const auto& x : space.strings()) keys.push_back(x.slice(0, 2 * n));
      check(channel_from_space(SampleSpace(2 * n, std::move(keys))), r);
    }
  }
  return {ok, fmt("%.0f channels, max (epsilon_hat - certified) %.4f", channels, worst_gap)};
}

Outcome key_length() {
  const auto params = aghp_parameters(8, 0.5);
  const auto ch = aghp_channel(8, 0.5);
  const double bound = 8.0 + 2.0 * std::log2(1.0 / 0.5) + 2.0;
  const double cert = certified_epsilon(ch);
  bool ok = ch.key_bits() == 12 && params.key_bits == 12 && !params.fallback && ch.key_bits() <= bound && cert <= 0.5;
  int fallbacks = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    const double edge = std::ldexp(1.0, -static_cast<int>(n) / 2) / (n % 2 ? std::sqrt(2.0) : 1.0);
    for (double eps : {edge, edge / 2.0, edge / 10.0}) {
      const auto p = aghp_parameters(n, eps);
      ok = ok && p.fallback && p.key_bits == 2 * n;
      ++fallbacks;
    }
  }
  const auto small = aghp_channel(3, 0.25);
  ok = ok && small.m() == 64;
  return {ok, fmt("key_bits %.0f, bound %.0f, certified %.6f", ch.key_bits(), bound, cert) +
                  fmt(", %.0f fallback cases", fallbacks)};
}

Outcome diagnostic_identities() {
  double worst = 0.0;
  CounterRng rng(6006);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const std::size_t n = 1 + i % 4;
    const auto space = random_space(2 * n, 2 + (5 * i) % 40, 6000 + i);
    const auto ch = channel_from_space(space);
    for (const auto& v : all_words("XYZ", n)) {
      BitVector signs(n);
      for (std::size_t j = 0; j < n; ++j) signs.set(j, rng() >> 63);
      worst = std::max(worst, std::abs(distance_at(ch, product_eigenstate(v, signs)) - sigma_v_condition(space, v)));
    }
    for (const auto& g : stabilizer_catalog(n))
      worst = std::max(worst, std::abs(distance_at(ch, stab_state(g)) - stabilizer_condition(space, g)));
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (n * n)); mask += 1 + (rng() % 5)) {
      BitMatrix w(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) w.set(r, c, (mask >> (r * n + c)) & 1u);
      std::vector<std::size_t> keep;
      BitMatrix basis(0, n);
      for (std::size_t r = 0; r < n; ++r) {
        BitMatrix trial(basis.rows() + 1, n);
        for (std::size_t q = 0; q < basis.rows(); ++q)
          for (std::size_t c = 0; c < n; ++c) trial.set(q, c, basis.get(q, c));
        for (std::size_t c = 0; c < n; ++c) trial.set(basis.rows(), c, w.get(r, c));
        if (gf2_rank(trial) == trial.rows()) basis = trial;
      }
      if (basis.rows() == 0) continue;
      worst = std::max(worst, std::abs(distance_at(ch, subspace_state(basis)) - subspace_condition(space, basis)));
    }
  }
  return {worst <= 1e-9, fmt("max |trace distance - condition| %.3g", worst)};
}

Outcome norm_inequalities() {
  CounterRng rng(7007);
  double worst = -1e300;
  int count = 0;
  for (Eigen::Index d : {2, 4, 8, 16}) {
    const double sd = std::sqrt(static_cast<double>(d));
    for (int t = 0; t < 250; ++t) {
      const ComplexMatrix h = random_hermitian(d, rng);
      const double tr = matrix_norm(h, NormKind::trace);
      const double fr = matrix_norm(h, NormKind::frobenius);
      const double inf = matrix_norm(h, NormKind::infinity);
      worst = std::max({worst, fr - tr, inf - fr, tr - sd * fr, tr - static_cast<double>(d) * inf});
      ++count;
    }
  }
  return {worst <= 1e-9, fmt("%.0f matrices, max violation %.3g", count, worst)};
}

Outcome pauli_oracle() {
  double worst = 0.0;
  bool commute_ok = true;
  long pairs = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<PauliOp> ops;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t a = 0; a < count; ++a)
      for (std::uint64_t b = 0; b < count; ++b)
        for (int ph = 0; ph < 4; ++ph) ops.emplace_back(BitVector::from_word(n, a), BitVector::from_word(n, b), ph);
    std::vector<ComplexMatrix> dense;
    for (const auto& p : ops) dense.push_back(oracle::dense_pauli(p));
    const auto dim = static_cast<Eigen::Index>(count);
    std::vector<StateVector> inputs;
    for (Eigen::Index k = 0; k < dim; ++k) inputs.push_back(StateVector::Unit(dim, k));
    inputs.push_back(random_state(dim, 8000 + n));
    for (std::size_t i = 0; i < ops.size(); ++i) {
      for (const auto& psi : inputs)
        worst = std::max(worst, (pauli_apply(ops[i], psi) - dense[i] * psi).cwiseAbs().maxCoeff());
      for (std::size_t j = 0; j < ops.size(); ++j) {
        const ComplexMatrix prod = dense[i] * dense[j];
        worst = std::max(worst, (oracle::dense_pauli(pauli_mul(ops[i], ops[j])) - prod).cwiseAbs().maxCoeff());
        const bool commute = oracle::near(prod, dense[j] * dense[i], 1e-12);
        commute_ok = commute_ok && pauli_commutes(ops[i], ops[j]) == commute;
        ++pairs;
      }
    }
  }
  return {worst <= 1e-12 && commute_ok, fmt("%.0f ordered pairs, max entry error %.3g", static_cast<double>(pairs), worst)};
}

Outcome rank_bound_falsification() {
  const PauliChannel ch(2, {PauliOp::parse("II"), PauliOp::parse("XZ")});
  const double e = empirical_epsilon(ch).epsilon_hat;
  const double predicted = 2.0 * (1.0 - 2.0 / 4.0);
  return {e >= 1.0 - 1e-6 && e >= predicted - 1e-6, fmt("epsilon_hat %.12f, 2(1 - m/d) = %.1f", e, predicted)};
}

Outcome random_trend() {
  const std::vector<std::size_t> ms = {32, 64, 128, 256};
  std::vector<double> medians;
  for (std::size_t m : ms) {
    std::vector<double> values;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      AttackOptions options;
      options.seed = seed;
      values.push_back(empirical_epsilon(random_pauli_channel(4, m, seed), options).epsilon_hat);
    }
    medians.push_back(median(values));
  }
  bool ok = true;
  for (std::size_t i = 1; i < medians.size(); ++i) ok = ok && medians[i] <= medians[i - 1];
  ok = ok && medians.back() < 0.3;
  return {ok, fmt("medians %.4f %.4f %.4f", medians[0], medians[1], medians[2]) + fmt(" %.4f", medians[3])};
}

Outcome vazirani_bounds() {
  std::uint64_t violations = 0;
  std::uint64_t subsets = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const std::size_t n = 3 + i % 10;
    const std::size_t k = 1 + i % 4;
    const auto space = random_space(n, 8 + 13 * i, 11000 + i);
    const auto rep = vazirani_report(space, std::min(k, n));
    violations += rep.violations;
    subsets += rep.subsets_checked;
  }
  return {violations == 0, fmt("%.0f subsets, %.0f violations", static_cast<double>(subsets), static_cast<double>(violations))};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "one-time pad exactness", 30, qotp_exactness},
      {2, "one-qubit optimum", 5, one_qubit_optimum},
      {3, "aghp bias bound", 120, aghp_bias_bound},
      {4, "certificate soundness", 300, certificate_soundness},
      {5, "explicit construction key length", 60, key_length},
      {6, "diagnostic identities", 180, diagnostic_identities},
      {7, "norm inequalities", 30, norm_inequalities},
      {8, "pauli algebra oracle", 60, pauli_oracle},
      {9, "rank bound falsification", 10, rank_bound_falsification},
      {10, "random channel trend", 600, random_trend},
      {11, "vazirani bounds", 120, vazirani_bounds},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.budget_seconds;
    const bool pass = out.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s %2d %-34s %s | %.2fs (budget %.0fs)%s\n", pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(),
                seconds, c.budget_seconds, in_time ? "" : " over budget");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
