#include "qds/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qds {

void ProtocolParams::validate() const {
  if (lambda < 1) throw std::invalid_argument("lambda must be >= 1");
  if (l < 1) throw std::invalid_argument("message length l must be >= 1");
  if (n_participants < 1)
    throw std::invalid_argument("n_participants must be >= 1");
}

void DyadicProb::multiply_by(BornProb p) {
  switch (p) {
    case BornProb::Zero: numerator = 0; break;
    case BornProb::Half: ++log2_denominator; break;
    case BornProb::One: break;
  }
}

double DyadicProb::value() const {
  return std::ldexp(static_cast<double>(numerator),
                    -static_cast<int>(log2_denominator));
}

PrivateKey::PrivateKey(ProtocolParams params, std::vector<KeyCell> cells)
    : params_(params), cells_(std::move(cells)) {
  params_.validate();
  if (cells_.size() != std::size_t(params_.l) * 2 * params_.lambda)
    throw std::invalid_argument("private key cell count mismatch");
}

int PrivateKey::index(int a, int k, int c) const {
  return (a * 2 + k) * params_.lambda + c;
}

void PrivateKey::mark_used() {
  if (used_) throw std::logic_error("private key already used to sign");
  used_ = true;
}

PublicKeyDescription::PublicKeyDescription(ProtocolParams params,
                                           std::vector<Bb84Label> labels)
    : params_(params), labels_(std::move(labels)) {
  params_.validate();
  if (labels_.size() != std::size_t(params_.l) * 2 * params_.lambda)
    throw std::invalid_argument("public key label count mismatch");
}

int PublicKeyDescription::index(int a, int k, int c) const {
  return (a * 2 + k) * params_.lambda + c;
}

QubitRegister::QubitRegister(const PublicKeyDescription& pk, int owner)
    : params_(pk.params()), owner_(owner) {
  slots_.reserve(pk.labels().size());
  for (Bb84Label s : pk.labels()) slots_.emplace_back(s);
}

int QubitRegister::index(int a, int k, int c) const {
  if (a < 0 || a >= params_.l || k < 0 || k > 1 || c < 0 || c >= params_.lambda)
    throw std::out_of_range("register slot index out of range");
  return (a * 2 + k) * params_.lambda + c;
}

bool QubitRegister::present(int a, int k, int c) const {
  return slots_[index(a, k, c)].has_value();
}

int QubitRegister::remaining() const {
  int count = 0;
  for (const auto& s : slots_)
    if (s) ++count;
  return count;
}

Bb84Label QubitRegister::take(int a, int k, int c) {
  auto& slot = slots_[index(a, k, c)];
  if (!slot) throw std::logic_error("register slot already consumed");
  Bb84Label s = *slot;
  slot.reset();
  return s;
}

Eigenvalue QubitRegister::measure_slot(int a, int k, int c, Basis basis,
                                       Rng& rng) {
  return measure(take(a, k, c), basis, rng);
}

PrivateKey sk_gen(const ProtocolParams& params, Rng& rng) {
  params.validate();
  std::vector<KeyCell> cells;
  cells.reserve(std::size_t(params.l) * 2 * params.lambda);
  for (int i = 0; i < params.l * 2 * params.lambda; ++i) {
    cells.push_back(
        {rng.next_bool() ? Eigenvalue::Plus1 : Eigenvalue::Minus1,
         rng.next_bool() ? Basis::Z : Basis::X});
  }
  return PrivateKey(params, std::move(cells));
}

PublicKeyDescription pk_gen(const PrivateKey& sk) {
  std::vector<Bb84Label> labels;
  labels.reserve(sk.cells().size());
  for (KeyCell c : sk.cells()) labels.push_back(state_from_cell(c));
  return PublicKeyDescription(sk.params(), std::move(labels));
}

QubitRegister issue_copy(const PublicKeyDescription& pk, int owner) {
  return QubitRegister(pk, owner);
}

Signature sign(PrivateKey& sk, const Message& m) {
  const auto& p = sk.params();
  if (int(m.bits.size()) != p.l)
    throw std::invalid_argument("message length does not match key");
  sk.mark_used();
  Signature sig;
  sig.lambda = p.lambda;
  sig.cells.reserve(std::size_t(p.l) * p.lambda);
  for (int a = 0; a < p.l; ++a)
    for (int c = 0; c < p.lambda; ++c)
      sig.cells.push_back(sk.cell(a, m.bits[a], c));
  return sig;
}

Verdict verify(QubitRegister& reg, const Message& m, const Signature& sig,
               Rng& rng) {
  const auto& p = reg.params();
  if (int(m.bits.size()) != p.l || sig.lambda != p.lambda ||
      sig.blocks() != p.l)
    throw std::invalid_argument("verify: shape mismatch");
  bool accept = true;
  // All lambda*l slots are measured even after a mismatch: the physical
  // verifier learns every outcome before deciding.
  for (int a = 0; a < p.l; ++a) {
    for (int c = 0; c < p.lambda; ++c) {
      const KeyCell claim = sig.cell(a, c);
      const Eigenvalue out =
          reg.measure_slot(a, m.bits[a], c, claim.basis, rng);
      if (out != claim.eigenvalue) accept = false;
    }
  }
  return accept ? Verdict::Accept : Verdict::Reject;
}

DyadicProb acceptance_probability(const PublicKeyDescription& pk,
                                  const Message& m, const Signature& sig) {
  const auto& p = pk.params();
  if (int(m.bits.size()) != p.l || sig.lambda != p.lambda ||
      sig.blocks() != p.l)
    throw std::invalid_argument("acceptance_probability: shape mismatch");
  DyadicProb prob;
  for (int a = 0; a < p.l; ++a) {
    for (int c = 0; c < p.lambda; ++c) {
      const KeyCell claim = sig.cell(a, c);
      prob.multiply_by(outcome_probability(pk.label(a, m.bits[a], c),
                                           claim.basis, claim.eigenvalue));
    }
  }
  return prob;
}

Message random_message(int l, Rng& rng) {
  Message m;
  m.bits.reserve(l);
  for (int a = 0; a < l; ++a) m.bits.push_back(rng.next_bool() ? 1 : 0);
  return m;
}

namespace {

nlohmann::json params_to_json(const ProtocolParams& p) {
  return {{"lambda", p.lambda}, {"l", p.l}, {"n_participants", p.n_participants}};
}

ProtocolParams params_from_json(const nlohmann::json& j) {
  ProtocolParams p;
  p.lambda = j.at("lambda").get<int>();
  p.l = j.at("l").get<int>();
  p.n_participants = j.value("n_participants", 1);
  return p;
}

}  // namespace

nlohmann::json to_json(const PrivateKey& sk) {
  const auto& p = sk.params();
  nlohmann::json cells = nlohmann::json::array();
  for (int a = 0; a < p.l; ++a) {
    nlohmann::json branches = nlohmann::json::array();
    for (int k = 0; k < 2; ++k) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < p.lambda; ++c)
        row.push_back(cell_to_string(sk.cell(a, k, c)));
      branches.push_back(std::move(row));
    }
    cells.push_back(std::move(branches));
  }
  return {{"params", params_to_json(p)}, {"cells", std::move(cells)}};
}

nlohmann::json to_json(const PublicKeyDescription& pk) {
  const auto& p = pk.params();
  nlohmann::json labels = nlohmann::json::array();
  for (int a = 0; a < p.l; ++a) {
    nlohmann::json branches = nlohmann::json::array();
    for (int k = 0; k < 2; ++k) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < p.lambda; ++c)
        row.push_back(label_to_string(pk.label(a, k, c)));
      branches.push_back(std::move(row));
    }
    labels.push_back(std::move(branches));
  }
  return {{"params", params_to_json(p)}, {"labels", std::move(labels)}};
}

nlohmann::json to_json(const Message& m) { return {{"bits", m.bits}}; }

nlohmann::json to_json(const Signature& sig) {
  nlohmann::json blocks = nlohmann::json::array();
  for (int a = 0; a < sig.blocks(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < sig.lambda; ++c)
      row.push_back(cell_to_string(sig.cell(a, c)));
    blocks.push_back(std::move(row));
  }
  return {{"lambda", sig.lambda}, {"blocks", std::move(blocks)}};
}

PrivateKey private_key_from_json(const nlohmann::json& j) {
  ProtocolParams p = params_from_json(j.at("params"));
  std::vector<KeyCell> cells;
  for (const auto& branches : j.at("cells"))
    for (const auto& row : branches)
      for (const auto& s : row)
        cells.push_back(cell_from_string(s.get<std::string>()));
  return PrivateKey(p, std::move(cells));
}

PublicKeyDescription public_key_from_json(const nlohmann::json& j) {
  ProtocolParams p = params_from_json(j.at("params"));
  std::vector<Bb84Label> labels;
  for (const auto& branches : j.at("labels"))
    for (const auto& row : branches)
      for (const auto& s : row)
        labels.push_back(label_from_string(s.get<std::string>()));
  return PublicKeyDescription(p, std::move(labels));
}

Message message_from_json(const nlohmann::json& j) {
  Message m;
  m.bits = j.at("bits").get<std::vector<int>>();
  for (int b : m.bits)
    if (b != 0 && b != 1)
      throw std::invalid_argument("message bits must be 0 or 1");
  return m;
}

Signature signature_from_json(const nlohmann::json& j) {
  Signature sig;
  sig.lambda = j.at("lambda").get<int>();
  for (const auto& row : j.at("blocks")) {
    if (int(row.size()) != sig.lambda)
      throw std::invalid_argument("signature block length mismatch");
    for (const auto& s : row)
      sig.cells.push_back(cell_from_string(s.get<std::string>()));
  }
  return sig;
}

}  // namespace qds
