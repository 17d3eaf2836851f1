#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qds/qubit.hpp"
#include "qds/rng.hpp"

namespace qds {

struct ProtocolParams {
  int lambda = 1;          // cells per signature block
  int l = 1;               // message length in bits
  int n_participants = 1;  // public-key copies distributed

  void validate() const;
};

/// Probability of the form numerator / 2^log2_denominator, kept exact so
/// products over thousands of cells never underflow.
struct DyadicProb {
  std::uint64_t numerator = 1;
  unsigned log2_denominator = 0;

  void multiply_by(BornProb p);
  double value() const;
};

/// Private key: cells indexed (position a, branch k, cell c), 4*lambda*l bits.
/// One-time use: sign() marks it used and a second call throws.
class PrivateKey {
 public:
  PrivateKey(ProtocolParams params, std::vector<KeyCell> cells);

  const ProtocolParams& params() const { return params_; }
  KeyCell cell(int a, int k, int c) const { return cells_[index(a, k, c)]; }
  const std::vector<KeyCell>& cells() const { return cells_; }
  bool used() const { return used_; }
  void mark_used();

  int index(int a, int k, int c) const;

 private:
  ProtocolParams params_;
  std::vector<KeyCell> cells_;
  bool used_ = false;
};

/// Alice's classical record of the public key: one BB84 label per cell.
class PublicKeyDescription {
 public:
  PublicKeyDescription(ProtocolParams params, std::vector<Bb84Label> labels);

  const ProtocolParams& params() const { return params_; }
  Bb84Label label(int a, int k, int c) const { return labels_[index(a, k, c)]; }
  const std::vector<Bb84Label>& labels() const { return labels_; }

  int index(int a, int k, int c) const;

 private:
  ProtocolParams params_;
  std::vector<Bb84Label> labels_;
};

/// One physical copy of the public key. A slot holds its label until
/// measured; measurement consumes it permanently.
class QubitRegister {
 public:
  QubitRegister(const PublicKeyDescription& pk, int owner);

  int owner() const { return owner_; }
  const ProtocolParams& params() const { return params_; }

  bool present(int a, int k, int c) const;
  int remaining() const;

  /// Removes the qubit from the register and returns its label (simulation
  /// ground truth for joint measurements). Throws if already consumed.
  Bb84Label take(int a, int k, int c);

  /// Projective measurement of one slot; consumes it.
  Eigenvalue measure_slot(int a, int k, int c, Basis basis, Rng& rng);

 private:
  int index(int a, int k, int c) const;

  ProtocolParams params_;
  std::vector<std::optional<Bb84Label>> slots_;
  int owner_;
};

struct Message {
  std::vector<int> bits;  // each in {0,1}, length l
};

struct Signature {
  int lambda = 0;
  std::vector<KeyCell> cells;  // indexed a*lambda + c, 2*lambda*l bits

  KeyCell cell(int a, int c) const { return cells[a * lambda + c]; }
  int blocks() const { return lambda == 0 ? 0 : int(cells.size()) / lambda; }

  bool operator==(const Signature&) const = default;
};

enum class Verdict : std::uint8_t { Accept, Reject };

PrivateKey sk_gen(const ProtocolParams& params, Rng& rng);
PublicKeyDescription pk_gen(const PrivateKey& sk);
QubitRegister issue_copy(const PublicKeyDescription& pk, int owner);
Signature sign(PrivateKey& sk, const Message& m);

/// Measures slot (a, m_a, c) in the signature's basis for every a, c;
/// Accept iff every outcome matches. Consumes exactly the lambda*l slots
/// on the m_a branch; the other branch is untouched.
Verdict verify(QubitRegister& reg, const Message& m, const Signature& sig,
               Rng& rng);

/// Exact acceptance probability of (m, sig) against the published states.
DyadicProb acceptance_probability(const PublicKeyDescription& pk,
                                  const Message& m, const Signature& sig);

Message random_message(int l, Rng& rng);

// JSON encoding: cells as "+Z"/"-Z"/"+X"/"-X", labels as "0"/"1"/"+"/"-",
// arrays nested [a][k][c] (signatures [a][c]).
nlohmann::json to_json(const PrivateKey& sk);
nlohmann::json to_json(const PublicKeyDescription& pk);
nlohmann::json to_json(const Message& m);
nlohmann::json to_json(const Signature& sig);
PrivateKey private_key_from_json(const nlohmann::json& j);
PublicKeyDescription public_key_from_json(const nlohmann::json& j);
Message message_from_json(const nlohmann::json& j);
Signature signature_from_json(const nlohmann::json& j);

}  // namespace qds
