#include "qrand/gf2ext.hpp"

#include <array>
#include <string>
#include <vector>

#include "qrand/error.hpp"

namespace qrand {

namespace {

// Smallest primitive polynomial of each degree (as an integer, bit j <-> x^j).
constexpr std::array<std::uint64_t, kMaxFieldDegree> kPrimitive = {
    0x3,       0x7,        0xb,        0x13,       0x25,       0x43,        0x83,       0x11d,
    0x211,     0x409,      0x805,      0x1053,     0x201b,     0x402b,      0x8003,     0x1002d,
    0x20009,   0x40027,    0x80027,    0x100009,   0x200005,   0x400003,    0x800021,   0x100001b,
    0x2000009, 0x4000047,  0x8000027,  0x10000009, 0x20000005, 0x40000053,  0x80000009, 0x1000000af,
};

// Carry-less product of two values below 2^r, reduced top-down modulo `modulus`.
std::uint64_t mul_reduce(std::uint64_t a, std::uint64_t b, std::uint64_t modulus, unsigned r) {
  std::uint64_t acc = 0;
  for (unsigned j = 0; j < r; ++j) {
    if ((b >> j) & 1u) acc ^= a << j;
  }
  for (unsigned bit = 2 * r - 1; bit >= r && bit < 64; --bit) {
    if ((acc >> bit) & 1u) acc ^= modulus << (bit - r);
  }
  return acc;
}

std::uint64_t pow_reduce(std::uint64_t base, std::uint64_t k, std::uint64_t modulus, unsigned r) {
  std::uint64_t result = 1;
  while (k) {
    if (k & 1u) result = mul_reduce(result, base, modulus, r);
    base = mul_reduce(base, base, modulus, r);
    k >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

bool is_primitive(std::uint64_t modulus, unsigned r) {
  if (r == 0 || r > kMaxFieldDegree) return false;
  if ((modulus >> r) != 1u) return false;
  const std::uint64_t order = (std::uint64_t{1} << r) - 1;
  // x reduced mod the modulus; for r = 1 that is the constant term.
  const std::uint64_t x = r == 1 ? (modulus & 1u) : 2u;
  if (pow_reduce(x, order, modulus, r) != 1) return false;
  for (auto p : prime_factors(order)) {
    if (pow_reduce(x, order / p, modulus, r) == 1) return false;
  }
  return true;
}

FieldSpec field_spec(unsigned r) {
  if (r < 1 || r > kMaxFieldDegree) {
    throw UnsupportedDegreeError("field degree " + std::to_string(r) + " outside 1..32");
  }
  const std::uint64_t modulus = kPrimitive[r - 1];
  if (!is_primitive(modulus, r)) {
    throw InternalError("primitive polynomial table entry for degree " + std::to_string(r) + " failed verification");
  }
  return FieldSpec(r, modulus);
}

FieldElement FieldSpec::element(std::uint64_t value) const {
  if (value >> degree_) {
    throw DimensionError("value does not fit in GF(2^" + std::to_string(degree_) + ")");
  }
  return {value, degree_};
}

FieldElement FieldSpec::generator() const { return {degree_ == 1 ? (modulus_ & 1u) : 2u, degree_}; }

FieldElement gf_mul(const FieldSpec& spec, const FieldElement& a, const FieldElement& b) {
  if (a.degree != spec.degree() || b.degree != spec.degree()) {
    throw DimensionError("gf_mul: element degree does not match field");
  }
  return {mul_reduce(a.value, b.value, spec.modulus(), spec.degree()), spec.degree()};
}

FieldElement gf_pow(const FieldSpec& spec, FieldElement a, std::uint64_t k) {
  if (a.degree != spec.degree()) throw DimensionError("gf_pow: element degree does not match field");
  return {pow_reduce(a.value, k, spec.modulus(), spec.degree()), spec.degree()};
}

}  // namespace qrand
