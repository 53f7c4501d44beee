#pragma once

// n-qubit Pauli operators in symplectic form i^phase X^a Z^b, their action on
// state vectors, sigma_V reductions, and stabilizer groups.
//
// Basis state |c> of an n-qubit register is indexed by the integer whose bit j
// is the value of qubit j+1, matching bit j of a BitVector label.

#include <cstdint>
#include <string>
#include <string_view>

#include "qrand/bitlin.hpp"
#include "qrand/linalg.hpp"

namespace qrand {

/// Largest register handled by the dense state-vector routines.
inline constexpr std::size_t kMaxDenseQubits = 10;

class PauliOp {
 public:
  PauliOp() = default;
  /// Identity on n qubits.
  explicit PauliOp(std::size_t n) : a_(n), b_(n) {}
  /// i^phase X^a Z^b.
  PauliOp(BitVector a, BitVector b, int phase = 0);

  /// The Hermitian member of the coset: i^{a.b} X^a Z^b (e.g. (1,1) gives Y).
  static PauliOp hermitian(BitVector a, BitVector b);

  /// Text form: optional prefix in {"", "i", "-", "-i"} then one of I,X,Y,Z per qubit, Y = iXZ.
  static PauliOp parse(std::string_view text);
  std::string to_string() const;

  std::size_t n() const noexcept { return a_.size(); }
  const BitVector& a() const noexcept { return a_; }
  const BitVector& b() const noexcept { return b_; }
  int phase() const noexcept { return phase_; }
  SymplecticPair label() const { return {a_, b_}; }

  std::uint64_t a_word() const { return a_.to_word(); }
  std::uint64_t b_word() const { return b_.to_word(); }

  /// Same (a, b) with phase 0.
  PauliOp phase_free() const { return PauliOp(a_, b_, 0); }

  friend bool operator==(const PauliOp&, const PauliOp&) = default;

 private:
  BitVector a_;
  BitVector b_;
  int phase_ = 0;
};

/// P Q in normal form: phase adds 2 (b_P . a_Q) from moving Z^{b_P} past X^{a_Q}.
PauliOp pauli_mul(const PauliOp& p, const PauliOp& q);

/// True iff the symplectic product of the labels vanishes.
bool pauli_commutes(const PauliOp& p, const PauliOp& q);

/// |c> -> i^phase (-1)^{b.c} |c xor a>.
StateVector pauli_apply(const PauliOp& p, const StateVector& psi);

/// Reduction of the label (a, b) along basis string V over {I,X,Y,Z}: position
/// j contributes a_j for Z, b_j for X, a_j xor b_j for Y and nothing for I.
BitVector sigma_v(std::string_view basis, const SymplecticPair& label);

/// Validates a string over {I,X,Y,Z} of the given length.
void check_basis_string(std::string_view basis, std::size_t n);

class StabilizerGroup {
 public:
  std::size_t n() const noexcept { return n_; }
  /// n x 2n generator matrix with rows (a_i | b_i).
  const BitMatrix& generators() const noexcept { return g_; }
  const BitVector& signs() const noexcept { return signs_; }

  /// Generator i as a Hermitian Pauli with its sign applied.
  PauliOp generator(std::size_t i) const;

  std::string to_string() const;  // generators joined by ','

  friend bool operator==(const StabilizerGroup&, const StabilizerGroup&) = default;

 private:
  friend StabilizerGroup stab_validate(BitMatrix g, BitVector signs);
  StabilizerGroup(std::size_t n, BitMatrix g, BitVector signs) : n_(n), g_(std::move(g)), signs_(std::move(signs)) {}

  std::size_t n_ = 0;
  BitMatrix g_;
  BitVector signs_;
};

/// Checks, in order, that the rows of G = (a | b) pairwise commute
/// (NotAbelianError), are independent (DependentGeneratorsError) and number
/// exactly n for 2n columns (DimensionError).
StabilizerGroup stab_validate(BitMatrix g, BitVector signs);
StabilizerGroup stab_validate(BitMatrix g);
/// Generators given as Pauli strings (phases other than sign are ignored).
StabilizerGroup stab_from_strings(std::initializer_list<std::string_view> generators);

/// Rows (b_i | a_i): the matrix whose GF(2) product with (a,b) gives the
/// anti-commutation syndrome of X^aZ^b against each generator.
BitMatrix stab_dual(const StabilizerGroup& group);
/// Half swap on an arbitrary n x 2n matrix.
BitMatrix swap_halves(const BitMatrix& m);

/// Unit vector spanning the range of prod_i (I + (-1)^{s_i} g_i)/2; first
/// nonzero amplitude made real positive. Requires n <= 10.
StateVector stab_state(const StabilizerGroup& group);


}  // namespace qrand
