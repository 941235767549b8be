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

#ifndef QLOCK_CIRCUIT_H
#define QLOCK_CIRCUIT_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qlock {

enum class GateKind : uint8_t { H, S, SDG, X, Y, Z, CZ, SWAP, CNOT };

/// Number of qubit operands for a gate kind (1 or 2).
size_t gate_arity(GateKind kind);
std::string_view gate_name(GateKind kind);
/// Throws std::invalid_argument for unknown names.
GateKind gate_kind_from_name(std::string_view name);

struct Gate {
    GateKind kind;
    uint32_t q0;
    uint32_t q1 = 0;  // unused for single-qubit kinds; target for CNOT

    bool operator==(const Gate &other) const;
};

Gate inverse_gate(const Gate &gate);

/// Ordered list of Clifford gates on a fixed register. Gates apply left to right.
class CliffordCircuit {
   public:
    CliffordCircuit() = default;
    explicit CliffordCircuit(size_t num_qubits) : num_qubits_(num_qubits) {}

    size_t num_qubits() const { return num_qubits_; }
    const std::vector<Gate> &gates() const { return gates_; }
    size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

    /// Throws std::invalid_argument if operands are out of range or coincide.
    void append(const Gate &gate);
    void append(GateKind kind, uint32_t q0) { append(Gate{kind, q0, 0}); }
    void append(GateKind kind, uint32_t q0, uint32_t q1) { append(Gate{kind, q0, q1}); }
    /// Appends all gates of other; other must act on at most num_qubits() qubits.
    void append(const CliffordCircuit &other);

    /// Semicolon-separated text form, e.g. "H 0; SDG 2; CNOT 0 3". Empty circuit -> "".
    std::string serialize() const;
    static CliffordCircuit parse(std::string_view text, size_t num_qubits);

    bool operator==(const CliffordCircuit &other) const = default;

   private:
    size_t num_qubits_ = 0;
    std::vector<Gate> gates_;
};

/// Reversed gate list with each gate replaced by its inverse.
CliffordCircuit invert_circuit(const CliffordCircuit &circuit);

}  // namespace qlock

#endif
