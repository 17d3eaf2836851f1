#include "qds/qubit.hpp"

#include <cmath>
#include <stdexcept>

namespace qds {

Bb84Label state_from_cell(KeyCell cell) {
  if (cell.basis == Basis::Z) {
    return cell.eigenvalue == Eigenvalue::Plus1 ? Bb84Label::Zero
                                                : Bb84Label::One;
  }
  return cell.eigenvalue == Eigenvalue::Plus1 ? Bb84Label::Plus
                                              : Bb84Label::Minus;
}

KeyCell cell_from_state(Bb84Label label) {
  switch (label) {
    case Bb84Label::Zero: return {Eigenvalue::Plus1, Basis::Z};
    case Bb84Label::One: return {Eigenvalue::Minus1, Basis::Z};
    case Bb84Label::Plus: return {Eigenvalue::Plus1, Basis::X};
    default: return {Eigenvalue::Minus1, Basis::X};
  }
}

QubitState amplitudes(Bb84Label label) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (label) {
    case Bb84Label::Zero: return {{1.0, 0.0}, {0.0, 0.0}};
    case Bb84Label::One: return {{0.0, 0.0}, {1.0, 0.0}};
    case Bb84Label::Plus: return {{r, 0.0}, {r, 0.0}};
    default: return {{r, 0.0}, {-r, 0.0}};
  }
}

BornProb outcome_probability(Bb84Label label, Basis basis, Eigenvalue eig) {
  const KeyCell prep = cell_from_state(label);
  if (prep.basis != basis) return BornProb::Half;
  return prep.eigenvalue == eig ? BornProb::One : BornProb::Zero;
}

Eigenvalue measure(Bb84Label label, Basis basis, Rng& rng) {
  const KeyCell prep = cell_from_state(label);
  if (prep.basis == basis) return prep.eigenvalue;
  return rng.next_bool() ? Eigenvalue::Plus1 : Eigenvalue::Minus1;
}

std::string cell_to_string(KeyCell cell) {
  std::string s;
  s += cell.eigenvalue == Eigenvalue::Plus1 ? '+' : '-';
  s += cell.basis == Basis::Z ? 'Z' : 'X';
  return s;
}

KeyCell cell_from_string(const std::string& s) {
  if (s.size() != 2 || (s[0] != '+' && s[0] != '-') ||
      (s[1] != 'Z' && s[1] != 'X')) {
    throw std::invalid_argument("bad cell encoding: " + s);
  }
  return {s[0] == '+' ? Eigenvalue::Plus1 : Eigenvalue::Minus1,
          s[1] == 'Z' ? Basis::Z : Basis::X};
}

std::string label_to_string(Bb84Label label) {
  switch (label) {
    case Bb84Label::Zero: return "0";
    case Bb84Label::One: return "1";
    case Bb84Label::Plus: return "+";
    default: return "-";
  }
}

Bb84Label label_from_string(const std::string& s) {
  if (s == "0") return Bb84Label::Zero;
  if (s == "1") return Bb84Label::One;
  if (s == "+") return Bb84Label::Plus;
  if (s == "-") return Bb84Label::Minus;
  throw std::invalid_argument("bad label encoding: " + s);
}

}  // namespace qds
