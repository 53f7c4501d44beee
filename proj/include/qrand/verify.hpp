#pragma once

// Lower bounds on a channel's epsilon: a worst-case state search over
// adversarial state families, random probes and a stochastic hill-climb, plus
// the necessary conditions on the key multiset S that follow from the
// channel's action on Pauli eigenstates, cat states, subspace states and
// stabilizer states.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qrand/channel.hpp"

namespace qrand {

struct AttackFamilies {
  bool product = true;     // Pauli product eigenstates, one per V in {X,Y,Z}^n
  bool cat = true;         // cat states, one per w in {I,X,Y,Z}^n \ {I^n}
  bool stabilizer = true;  // stabilizer_catalog(n)

  static AttackFamilies none() { return {false, false, false}; }
};

struct AttackOptions {
  std::size_t probes = 1000;
  std::uint64_t seed = 0;
  NormKind norm = NormKind::trace;
  AttackFamilies families{};
  int climb_rounds = 200;
  std::size_t restarts = 1;  // hill-climbs start from the best `restarts` candidates
  unsigned threads = 1;
};

struct AttackReport {
  double epsilon_hat = 0.0;
  StateVector witness;
  NormKind norm_kind = NormKind::trace;
  std::size_t probes = 0;
  std::vector<std::string> families_used;
  std::string witness_origin;  // family that produced the starting point of the winner
  std::size_t candidates = 0;  // states evaluated before the climb
  int climb_improvements = 0;
};

/// Maps a pure input state to the channel's output density matrix.
using PureAction = std::function<ComplexMatrix(const StateVector&)>;

/// Estimates sup_phi ||E(phi) - I/d|| from below. n <= 8.
AttackReport empirical_epsilon(const PauliChannel& channel, const AttackOptions& options = {});
AttackReport empirical_epsilon(const UnitaryChannel& channel, const AttackOptions& options = {});
/// Generic form; `n` is the qubit count used to build the state families.
AttackReport empirical_epsilon(const PureAction& action, std::size_t n, const AttackOptions& options);

/// ||E(|psi><psi|) - I/d|| for the given channel.
double evaluate_state(const PauliChannel& channel, const StateVector& psi, NormKind norm = NormKind::trace);

// State families. Qubit j of the register is bit j of the basis index.

/// Product of single-qubit eigenstates of V_j with eigenvalue (-1)^{w_j}.
/// V over {X,Y,Z}; 'Z' with w_j = 0 is |0>, 'X' is |+>, 'Y' is (|0> + i|1>)/sqrt2.
StateVector product_eigenstate(std::string_view basis, const BitVector& signs);
StateVector product_eigenstate(std::string_view basis);

/// Pauli T = prod_j T_j with T_j = X for w_j = Z, Z for X, Y for Y, I for I.
PauliOp cat_flip_operator(std::string_view w);
/// (|phi> + T|phi>)/sqrt2, |phi> the product of |0> (Z, Y, I positions) and |+> (X positions).
/// Its T expectation after the channel is the signed bias of the parity selected by w.
StateVector cat_state(std::string_view w);

/// Uniform superposition over span of the (independent) rows of `basis`.
StateVector subspace_state(const BitMatrix& basis);

/// Stabilizer groups used by the attack and by diagnose: every single-qubit-
/// factor group (3^n of them for n <= 6, 243 sampled above), GHZ groups in the
/// X, Y and Z bases, the linear cluster group and its Hadamard dual, and 32
/// random groups from random Clifford circuits. Fixed seed; deterministic.
std::vector<StabilizerGroup> stabilizer_catalog(std::size_t n);

// Necessary conditions. `space` holds 2n-bit keys (a | b).

/// Variation distance of sigma_V(S) from uniform on the non-I positions of V.
double sigma_v_condition(const SampleSpace& space, std::string_view basis);

/// Bias of the parity of (a,b) selected by w (X -> a_j, Z -> b_j, Y -> a_j xor b_j).
double cat_condition(const SampleSpace& space, std::string_view w);
/// The 2n-bit linear test used by cat_condition.
BitVector cat_test_vector(std::string_view w);

/// Variation distance from uniform of the syndromes stab_dual(G) * (a,b).
double stabilizer_condition(const SampleSpace& space, const StabilizerGroup& group);

/// Variation distance from uniform of the coset labels (H a, G^T b), with H a
/// parity check of W = rowspan(basis) and G^T = basis.
double subspace_condition(const SampleSpace& space, const BitMatrix& basis);

/// m >= d (1 - eps/2).
bool rank_bound(std::size_t m, std::size_t d, double epsilon);

struct DiagnosticsReport {
  double sigma_v_max = 0.0;
  std::string sigma_v_witness;
  double cat_max = 0.0;
  std::string cat_witness;
  double stabilizer_max = 0.0;
  std::string stabilizer_witness;
  double certified_epsilon = 0.0;
  bool rank_bound_ok = true;
  bool exhaustive = true;  // false when V / w were sampled (n > 6)
  std::size_t stabilizer_groups = 0;
};

/// Runs every necessary-condition scan on the channel's source space.
/// Throws NotApplicableError when the channel has no source.
DiagnosticsReport diagnose(const PauliChannel& channel);

/// All strings over `alphabet` of length n, in odometer order (position 0 fastest).
std::vector<std::string> all_words(std::string_view alphabet, std::size_t n);

}  // namespace qrand
