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

#ifndef QLOCK_SAMPLING_H
#define QLOCK_SAMPLING_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qlock/circuit.h"
#include "qlock/rng.h"

namespace qlock {

/// Order of the two-qubit Clifford group modulo global phase, split into its
/// symplectic part (Sp(4,2)) and its Pauli part.
inline constexpr uint32_t kTwoQubitSymplecticCount = 720;
inline constexpr uint32_t kTwoQubitPauliCount = 16;
inline constexpr uint32_t kTwoQubitCliffordCount = kTwoQubitSymplecticCount * kTwoQubitPauliCount;
inline constexpr uint32_t kSingleQubitCliffordCount = 24;

enum class SamplerMode {
    /// Random circuit of two-qubit Clifford fragments on random pairs.
    kApproxDesign,
    /// Exactly uniform n-qubit Clifford element.
    kUniformClifford,
    /// n = 1 only: the 24 single-qubit Cliffords; derive_circuit picks element k mod 24.
    kSingleQubitExhaustive,
};

struct SamplerConfig {
    size_t num_qubits = 1;
    double delta = 0.01;
    double depth_factor = 1.0;
    SamplerMode mode = SamplerMode::kApproxDesign;

    /// Throws std::invalid_argument unless 0 < delta < 1, depth_factor > 0 and the
    /// mode is compatible with num_qubits.
    void validate() const;
};

struct SeedContext {
    Seed128 master_seed;
    uint64_t stream_index = 0;
};

/// Number of two-qubit fragments L = ceil(c * n * (n + log2(1/delta))).
size_t design_length(const SamplerConfig &cfg);

/// Clifford on n qubits selected by a mixed-radix index: symplectic_index in
/// [0, |Sp(2n,2)|) and pauli_index in [0, 4^n). Distinct index pairs give
/// distinct Clifford operators. Supports n <= 2.
CliffordCircuit clifford_from_index(size_t num_qubits, uint64_t symplectic_index, uint64_t pauli_index);

/// Uniform draw from the 11,520-element two-qubit Clifford group.
CliffordCircuit sample_two_qubit_clifford(Rng &rng);

/// Uniform n-qubit Clifford, built by reducing a random anticommuting Pauli
/// pair onto (X_q, Z_q) for q = 0, 1, ..., n - 1.
CliffordCircuit sample_uniform_clifford(size_t num_qubits, Rng &rng);

/// The L two-qubit fragments of a kApproxDesign circuit, each already placed on
/// a uniformly random ordered qubit pair of the n-qubit register. Requires n >= 2.
std::vector<CliffordCircuit> sample_design_fragments(const SamplerConfig &cfg, Rng &rng);

/// Draws one circuit according to cfg.mode. kApproxDesign with n = 1 falls back
/// to a uniform single-qubit Clifford.
CliffordCircuit sample_design_circuit(const SamplerConfig &cfg, Rng &rng);

/// Deterministic circuit for (master_seed, k): identical inputs give an identical gate list.
CliffordCircuit derive_circuit(const SeedContext &ctx, const SamplerConfig &cfg);

}  // namespace qlock

#endif
