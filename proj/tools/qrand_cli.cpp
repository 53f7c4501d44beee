#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qrand/channel.hpp"
#include "qrand/error.hpp"
#include "qrand/report.hpp"
#include "qrand/smallbias.hpp"
#include "qrand/verify.hpp"

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string construction;
  std::string scheme;
  std::size_t n = 0;
  unsigned r = 0;
  unsigned s = 0;
  std::size_t size = 0;
  std::size_t m = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::size_t probes = 1000;
  std::size_t restarts = 1;
  std::string norm = "trace";
  unsigned threads = 1;
  std::optional<std::size_t> max_weight;
  std::string in;
  std::string out;
  std::string m_list;
  std::size_t seeds = 1;
};

std::string slurp(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw qrand::ParseError("cannot open " + path);
  std::ostringstream text;
  text << file.rdbuf();
  return text.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw qrand::ParseError("cannot write " + out_path);
  file << text;
}

void emit_json(const nlohmann::json& report, const std::string& out_path) {
  emit(report.dump(2) + "\n", out_path);
}

void require(bool present, const std::string& what) {
  if (!present) throw UsageError(what);
}

qrand::AttackOptions attack_options(const RunConfig& cfg) {
  qrand::AttackOptions options;
  options.probes = cfg.probes;
  options.seed = cfg.seed;
  options.norm = qrand::norm_kind_from_string(cfg.norm);
  options.restarts = std::max<std::size_t>(1, cfg.restarts);
  options.threads = std::max(1u, cfg.threads);
  return options;
}

void space_build(const RunConfig& cfg) {
  qrand::SampleSpace space = [&] {
    if (cfg.construction == "aghp") {
      require(cfg.r > 0 && cfg.s > 0, "--construction aghp needs --r and --s");
      return qrand::aghp_space(cfg.r, cfg.s);
    }
    if (cfg.construction == "full") {
      require(cfg.n > 0, "--construction full needs --n");
      return qrand::full_cube(cfg.n);
    }
    require(cfg.n > 0 && cfg.size > 0, "--construction random needs --n and --size");
    return qrand::random_space(cfg.n, cfg.size, cfg.seed);
  }();
  emit(qrand::space_to_text(space), cfg.out);
}

void space_bias(const RunConfig& cfg) {
  const auto space = qrand::space_from_text(slurp(cfg.in));
  emit_json(qrand::to_json(qrand::max_bias(space, cfg.max_weight)), cfg.out);
}

void channel_build(const RunConfig& cfg) {
  qrand::PauliChannel channel = [&] {
    if (cfg.scheme == "qotp") {
      require(cfg.n > 0, "--scheme qotp needs --n");
      return qrand::qotp(cfg.n);
    }
    if (cfg.scheme == "aghp") {
      require(cfg.n > 0 && cfg.epsilon > 0.0, "--scheme aghp needs --n and --epsilon");
      return qrand::aghp_channel(cfg.n, cfg.epsilon);
    }
    if (cfg.scheme == "random") {
      require(cfg.n > 0 && cfg.m > 0, "--scheme random needs --n and --m");
      return qrand::random_pauli_channel(cfg.n, cfg.m, cfg.seed);
    }
    require(!cfg.in.empty(), "--scheme from-space needs --in");
    return qrand::channel_from_space(qrand::space_from_text(slurp(cfg.in)));
  }();
  emit(qrand::channel_to_text(channel), cfg.out);
}

qrand::PauliChannel load_channel(const RunConfig& cfg) { return qrand::channel_from_text(slurp(cfg.in)); }

void channel_certify(const RunConfig& cfg) {
  const auto cert = qrand::certify(load_channel(cfg));
  emit_json(qrand::to_json(cert), cfg.out);
}

void channel_attack(const RunConfig& cfg) {
  const auto channel = load_channel(cfg);
  if (channel.n() > qrand::kMaxChannelQubits)
    throw qrand::CapacityError("attack supports n <= " + std::to_string(qrand::kMaxChannelQubits) +
                               " qubits, got n = " + std::to_string(channel.n()));
  emit_json(qrand::to_json(qrand::empirical_epsilon(channel, attack_options(cfg))), cfg.out);
}

void channel_diagnose(const RunConfig& cfg) { emit_json(qrand::to_json(qrand::diagnose(load_channel(cfg))), cfg.out); }

std::vector<std::size_t> parse_m_list(const std::string& text) {
  std::vector<std::size_t> values;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || value == 0) throw UsageError("--m-list entries must be positive integers, got \"" + token + "\"");
    values.push_back(value);
  }
  if (values.empty()) throw UsageError("sweep random needs a non-empty --m-list");
  return values;
}

void sweep_random(const RunConfig& cfg) {
  require(cfg.n > 0, "sweep random needs --n");
  const auto m_values = parse_m_list(cfg.m_list);
  require(cfg.seeds > 0, "--seeds must be positive");

  std::ostringstream csv;
  csv << "n,m,seed,epsilon_hat,certified_epsilon,runtime_ms\n";
  csv << std::setprecision(17);
  for (std::size_t m : m_values) {
    for (std::size_t i = 0; i < cfg.seeds; ++i) {
      const std::uint64_t seed = cfg.seed + i;
      const auto start = std::chrono::steady_clock::now();
      const auto channel = qrand::random_pauli_channel(cfg.n, m, seed);
      auto options = attack_options(cfg);
      options.seed = seed;
      const auto attack = qrand::empirical_epsilon(channel, options);
      const double cert = qrand::certified_epsilon(channel);
      const auto ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
      csv << cfg.n << ',' << m << ',' << seed << ',' << attack.epsilon_hat << ',' << cert << ',' << ms << '\n';
    }
  }
  emit(csv.str(), cfg.out);
}

void add_attack_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--probes", cfg.probes, "Random probe states")->capture_default_str();
  cmd->add_option("--restarts", cfg.restarts, "Hill-climb restarts")->capture_default_str();
  cmd->add_option("--norm", cfg.norm, "Norm for the distance from I/d")
      ->check(CLI::IsMember({"trace", "frobenius", "infinity"}))
      ->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "Worker threads")->envname("QRAND_THREADS")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qrand: Pauli randomizing channels, small-bias spaces, certification and attacks"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::function<void()> action;

  auto on = [&](CLI::App* cmd, void (*fn)(const RunConfig&)) {
    cmd->callback([&action, &cfg, fn] { action = [&cfg, fn] { fn(cfg); }; });
  };
  auto add_seed = [&](CLI::App* cmd) { cmd->add_option("--seed", cfg.seed, "Seed for all randomness")->capture_default_str(); };

  auto* space = app.add_subcommand("space", "Sample spaces over GF(2)^n")->require_subcommand(1);

  auto* space_build_cmd = space->add_subcommand("build", "Construct a sample space");
  space_build_cmd->add_option("--construction", cfg.construction)
      ->required()
      ->check(CLI::IsMember({"aghp", "full", "random"}));
  space_build_cmd->add_option("--r", cfg.r, "Field degree (aghp)");
  space_build_cmd->add_option("--s", cfg.s, "Block count (aghp)");
  space_build_cmd->add_option("--n", cfg.n, "String length (full, random)");
  space_build_cmd->add_option("--size", cfg.size, "Number of strings (random)");
  add_seed(space_build_cmd);
  space_build_cmd->add_option("--out", cfg.out, "Output file (stdout if omitted)");
  on(space_build_cmd, space_build);

  auto* space_bias_cmd = space->add_subcommand("bias", "Exhaustive maximum bias");
  space_bias_cmd->add_option("--in", cfg.in)->required();
  space_bias_cmd->add_option("--max-weight", cfg.max_weight, "Restrict tests to weight <= k");
  space_bias_cmd->add_option("--out", cfg.out);
  on(space_bias_cmd, space_bias);

  auto* channel = app.add_subcommand("channel", "Pauli randomizing channels")->require_subcommand(1);

  auto* channel_build_cmd = channel->add_subcommand("build", "Construct a channel");
  channel_build_cmd->add_option("--scheme", cfg.scheme)
      ->required()
      ->check(CLI::IsMember({"qotp", "aghp", "random", "from-space"}));
  channel_build_cmd->add_option("--n", cfg.n, "Qubits");
  channel_build_cmd->add_option("--epsilon", cfg.epsilon, "Target epsilon (aghp)");
  channel_build_cmd->add_option("--m", cfg.m, "Operator count (random)");
  add_seed(channel_build_cmd);
  channel_build_cmd->add_option("--in", cfg.in, "Space file (from-space)");
  channel_build_cmd->add_option("--out", cfg.out, "Output file (stdout if omitted)");
  on(channel_build_cmd, channel_build);

  auto* certify_cmd = channel->add_subcommand("certify", "Fourier certificate");
  certify_cmd->add_option("--in", cfg.in)->required();
  certify_cmd->add_option("--out", cfg.out);
  on(certify_cmd, channel_certify);

  auto* attack_cmd = channel->add_subcommand("attack", "Worst-case state search");
  attack_cmd->add_option("--in", cfg.in)->required();
  add_seed(attack_cmd);
  add_attack_flags(attack_cmd, cfg);
  attack_cmd->add_option("--out", cfg.out);
  on(attack_cmd, channel_attack);

  auto* diagnose_cmd = channel->add_subcommand("diagnose", "Necessary-condition scans");
  diagnose_cmd->add_option("--in", cfg.in)->required();
  diagnose_cmd->add_option("--out", cfg.out);
  on(diagnose_cmd, channel_diagnose);

  auto* sweep = app.add_subcommand("sweep", "Parameter sweeps")->require_subcommand(1);
  auto* sweep_random_cmd = sweep->add_subcommand("random", "epsilon_hat of random Pauli channels versus m");
  sweep_random_cmd->add_option("--n", cfg.n)->required();
  sweep_random_cmd->add_option("--m-list", cfg.m_list, "Comma-separated operator counts");
  sweep_random_cmd->add_option("--seeds", cfg.seeds, "Seeds per m")->capture_default_str();
  add_seed(sweep_random_cmd);
  add_attack_flags(sweep_random_cmd, cfg);
  sweep_random_cmd->add_option("--out", cfg.out);
  on(sweep_random_cmd, sweep_random);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (action) action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qrand::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return 0;
}
