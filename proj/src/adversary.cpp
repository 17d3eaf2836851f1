#include "qds/adversary.hpp"

#include <stdexcept>

#include "qds/state_id.hpp"

namespace qds {

std::string strategy_name(const ForgeStrategy& s) {
  switch (s.kind) {
    case ForgeStrategy::Kind::BlindFixed: return "blind-fixed";
    case ForgeStrategy::Kind::BlindRandom: return "blind-random";
    default: return "measured";
  }
}

ForgeStrategy strategy_from_name(const std::string& name, int copies) {
  if (name == "blind-fixed")
    return ForgeStrategy::blind_fixed({Eigenvalue::Plus1, Basis::Z});
  if (name == "blind-random") return ForgeStrategy::blind_random();
  if (name == "measured") return ForgeStrategy::measured(copies);
  throw std::invalid_argument("unknown strategy: " + name);
}

KeyCell blind_cell(const ForgeStrategy& strategy, Rng& rng) {
  switch (strategy.kind) {
    case ForgeStrategy::Kind::BlindFixed:
      return strategy.fixed;
    case ForgeStrategy::Kind::BlindRandom:
      return {rng.next_bool() ? Eigenvalue::Plus1 : Eigenvalue::Minus1,
              rng.next_bool() ? Basis::Z : Basis::X};
    default:
      throw std::logic_error("blind_cell called with measured strategy");
  }
}

KeyCell measured_cell(const std::vector<QubitRegister*>& registers, int a,
                      int k, int c, Rng& rng) {
  const int n = static_cast<int>(registers.size());
  if (n < 1) throw std::invalid_argument("measured_cell: no copies");
  Bb84Label truth = registers[0]->take(a, k, c);
  for (int i = 1; i < n; ++i) {
    if (registers[i]->take(a, k, c) != truth)
      throw std::logic_error("measured_cell: copies disagree");
  }
  const int xhat = sample_estimate(label_phase_index(truth), n, rng);
  return cell_from_state(label_from_phase_index(xhat));
}

ForgedPackage splice_forge(const Message& m, const Signature& sig,
                           const Message& m_prime,
                           const std::vector<QubitRegister*>& colluders,
                           const ForgeStrategy& strategy, Rng& rng) {
  const int l = static_cast<int>(m.bits.size());
  if (int(m_prime.bits.size()) != l)
    throw std::invalid_argument("splice_forge: message length mismatch");
  if (sig.blocks() != l)
    throw std::invalid_argument("splice_forge: signature shape mismatch");

  ForgedPackage pkg;
  pkg.m_prime = m_prime;
  pkg.sig.lambda = sig.lambda;
  for (int a = 0; a < l; ++a)
    if (m.bits[a] != m_prime.bits[a]) pkg.flipped_positions.push_back(a);
  if (pkg.flipped_positions.empty())
    throw std::invalid_argument("splice_forge: m' must differ from m");

  if (strategy.kind == ForgeStrategy::Kind::Measured &&
      int(colluders.size()) != strategy.copies)
    throw std::invalid_argument(
        "splice_forge: measured strategy needs one register per copy");

  for (int a = 0; a < l; ++a) {
    if (m.bits[a] == m_prime.bits[a]) {
      for (int c = 0; c < sig.lambda; ++c)
        pkg.sig.cells.push_back(sig.cell(a, c));
      continue;
    }
    for (int c = 0; c < sig.lambda; ++c) {
      if (strategy.kind == ForgeStrategy::Kind::Measured) {
        pkg.sig.cells.push_back(
            measured_cell(colluders, a, m_prime.bits[a], c, rng));
      } else {
        pkg.sig.cells.push_back(blind_cell(strategy, rng));
      }
    }
  }
  return pkg;
}

}  // namespace qds
