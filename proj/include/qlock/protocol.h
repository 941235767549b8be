// Copyright 2026 The qlock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QLOCK_PROTOCOL_H
#define QLOCK_PROTOCOL_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qlock/bit_string.h"
#include "qlock/circuit.h"
#include "qlock/rng.h"
#include "qlock/sampling.h"
#include "qlock/tableau.h"

namespace qlock {

/// Index of the shared circuit, 0 <= k < K.
struct SecretKey {
    uint64_t k = 0;
};

/// ceil(log2 K) bits; 0 for K = 1. Throws std::invalid_argument for K = 0.
unsigned key_bits(uint64_t K);

/// Uniform key in [0, K).
SecretKey keygen(uint64_t K, Rng &rng);

/// The public list of K circuits C_0 ... C_{K-1}.
///
/// File form (ASCII, LF):
///   QDLCB v1 n=<n> K=<K> delta=<float> seed=<32 hex>
///   0: <circuit>
///   ...
///   K-1: <circuit>
class Codebook {
   public:
    /// Derives circuit k from (master_seed, k) with an approximate-design sampler.
    /// Throws std::invalid_argument unless n >= 1, K >= 1 and 0 < delta < 1.
    static Codebook build(size_t n, uint64_t K, double delta, const Seed128 &master_seed, double depth_factor = 1.0,
                          size_t jobs = 1);
    /// Same derivation with an arbitrary sampler configuration.
    static Codebook build(const SamplerConfig &cfg, uint64_t K, const Seed128 &master_seed, size_t jobs = 1);
    /// Wraps explicit circuits; each must act on exactly n qubits.
    static Codebook from_circuits(size_t n, double delta, const Seed128 &master_seed,
                                  std::vector<CliffordCircuit> circuits);

    size_t num_qubits() const { return n_; }
    uint64_t size() const { return circuits_.size(); }
    double delta() const { return delta_; }
    const Seed128 &seed() const { return seed_; }
    const CliffordCircuit &circuit(uint64_t k) const;
    const std::vector<CliffordCircuit> &circuits() const { return circuits_; }

    std::string serialize() const;
    static Codebook parse(std::string_view text);

    bool operator==(const Codebook &other) const = default;

   private:
    size_t n_ = 0;
    double delta_ = 0.0;
    Seed128 seed_;
    std::vector<CliffordCircuit> circuits_;
};

/// Encrypted code word C_k|x>, held as its stabilizer tableau.
///
/// File form: "QDLCT v1 n=<n>" followed by the tableau text.
struct CipherState {
    Tableau tableau{0};

    size_t num_qubits() const { return tableau.num_qubits(); }
    std::string serialize() const;
    static CipherState parse(std::string_view text);
};

/// Tableau of C_k|x>. Throws std::invalid_argument on length or key range violations.
CipherState encrypt(const Codebook &codebook, const SecretKey &key, const BitString &x);

struct Decryption {
    BitString x;
    /// True when every qubit read out deterministically after C_k^-1.
    bool deterministic = true;
};

/// Applies C_k^-1 and reads every qubit in the computational basis. Random
/// outcomes are drawn from rng and clear the deterministic flag.
Decryption decrypt(const Codebook &codebook, const SecretKey &key, const CipherState &cipher, Rng &rng);

}  // namespace qlock

#endif
