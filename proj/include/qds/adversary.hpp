#pragma once

#include <string>
#include <vector>

#include "qds/protocol.hpp"
#include "qds/qubit.hpp"
#include "qds/rng.hpp"

namespace qds {

/// How the adversary fills signature blocks at flipped message positions.
struct ForgeStrategy {
  enum class Kind { BlindFixed, BlindRandom, Measured };

  Kind kind = Kind::BlindRandom;
  KeyCell fixed{Eigenvalue::Plus1, Basis::Z};  // BlindFixed only
  int copies = 0;                              // Measured only, n >= 1

  static ForgeStrategy blind_fixed(KeyCell cell) {
    return {Kind::BlindFixed, cell, 0};
  }
  static ForgeStrategy blind_random() { return {Kind::BlindRandom}; }
  static ForgeStrategy measured(int copies) {
    return {Kind::Measured, {Eigenvalue::Plus1, Basis::Z}, copies};
  }
};

std::string strategy_name(const ForgeStrategy& s);
ForgeStrategy strategy_from_name(const std::string& name, int copies);

struct ForgedPackage {
  Message m_prime;
  Signature sig;
  std::vector<int> flipped_positions;
};

/// Guess a cell with no quantum information.
KeyCell blind_cell(const ForgeStrategy& strategy, Rng& rng);

/// Jointly measures the copies of one qubit pooled from the colluders'
/// registers (slot (a, k, c) in each) with the optimal n-copy estimator and
/// returns the acceptance-maximizing cell. Consumes all the slots.
KeyCell measured_cell(const std::vector<QubitRegister*>& registers, int a,
                      int k, int c, Rng& rng);

/// Builds (m', s'): published blocks reused where m' agrees with m,
/// strategy-generated blocks at the flipped positions.
ForgedPackage splice_forge(const Message& m, const Signature& sig,
                           const Message& m_prime,
                           const std::vector<QubitRegister*>& colluders,
                           const ForgeStrategy& strategy, Rng& rng);

}  // namespace qds
