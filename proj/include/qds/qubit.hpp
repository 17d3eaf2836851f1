#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "qds/rng.hpp"

namespace qds {

enum class Basis : std::uint8_t { X, Z };

enum class Eigenvalue : std::int8_t { Plus1 = +1, Minus1 = -1 };

/// One (eigenvalue, basis) pair: 2 bits, the atomic unit of private key
/// and signature material.
struct KeyCell {
  Eigenvalue eigenvalue;
  Basis basis;

  bool operator==(const KeyCell&) const = default;
};

enum class Bb84Label : std::uint8_t { Zero, One, Plus, Minus };

struct QubitState {
  std::complex<double> amp0;
  std::complex<double> amp1;
};

/// Exact Born-rule probability for a single qubit; only three values occur.
enum class BornProb : std::uint8_t { Zero, Half, One };

inline double to_double(BornProb p) {
  switch (p) {
    case BornProb::Zero: return 0.0;
    case BornProb::Half: return 0.5;
    default: return 1.0;
  }
}

/// (+1,Z)->|0>, (-1,Z)->|1>, (+1,X)->|+>, (-1,X)->|->.
Bb84Label state_from_cell(KeyCell cell);

/// Inverse of state_from_cell.
KeyCell cell_from_state(Bb84Label label);

/// Canonical amplitudes (global phase fixed to +1 on the first component).
QubitState amplitudes(Bb84Label label);

/// P(outcome = eig | measure label in basis), exact.
BornProb outcome_probability(Bb84Label label, Basis basis, Eigenvalue eig);

/// Sample one projective measurement. Deterministic under a fixed rng state.
Eigenvalue measure(Bb84Label label, Basis basis, Rng& rng);

/// "+Z", "-Z", "+X", "-X"
std::string cell_to_string(KeyCell cell);
KeyCell cell_from_string(const std::string& s);

/// "0", "1", "+", "-"
std::string label_to_string(Bb84Label label);
Bb84Label label_from_string(const std::string& s);

}  // namespace qds
