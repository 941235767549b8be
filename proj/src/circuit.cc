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

#include "qlock/circuit.h"

#include <array>
#include <charconv>
#include <stdexcept>

namespace qlock {

namespace {

constexpr std::array<std::string_view, 9> kGateNames = {"H", "S", "SDG", "X", "Y", "Z", "CZ", "SWAP", "CNOT"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

uint32_t parse_qubit(std::string_view token) {
    uint32_t q = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), q);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw std::invalid_argument("bad qubit index '" + std::string(token) + "'");
    }
    return q;
}

}  // namespace

size_t gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CZ:
        case GateKind::SWAP:
        case GateKind::CNOT:
            return 2;
        default:
            return 1;
    }
}

std::string_view gate_name(GateKind kind) {
    return kGateNames[static_cast<size_t>(kind)];
}

GateKind gate_kind_from_name(std::string_view name) {
    for (size_t i = 0; i < kGateNames.size(); i++) {
        if (kGateNames[i] == name) {
            return static_cast<GateKind>(i);
        }
    }
    throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

bool Gate::operator==(const Gate &other) const {
    if (kind != other.kind || q0 != other.q0) {
        return false;
    }
    return gate_arity(kind) == 1 || q1 == other.q1;
}

Gate inverse_gate(const Gate &gate) {
    Gate inv = gate;
    if (gate.kind == GateKind::S) {
        inv.kind = GateKind::SDG;
    } else if (gate.kind == GateKind::SDG) {
        inv.kind = GateKind::S;
    }
    return inv;
}

void CliffordCircuit::append(const Gate &gate) {
    if (gate.q0 >= num_qubits_) {
        throw std::invalid_argument("gate qubit index out of range");
    }
    Gate stored = gate;
    if (gate_arity(gate.kind) == 2) {
        if (gate.q1 >= num_qubits_) {
            throw std::invalid_argument("gate qubit index out of range");
        }
        if (gate.q0 == gate.q1) {
            throw std::invalid_argument("two-qubit gate needs distinct qubits");
        }
    } else {
        stored.q1 = 0;
    }
    gates_.push_back(stored);
}

void CliffordCircuit::append(const CliffordCircuit &other) {
    if (other.num_qubits_ > num_qubits_) {
        throw std::invalid_argument("appended circuit acts on more qubits than the target");
    }
    gates_.reserve(gates_.size() + other.gates_.size());
    for (const Gate &g : other.gates_) {
        gates_.push_back(g);
    }
}

std::string CliffordCircuit::serialize() const {
    std::string out;
    for (size_t i = 0; i < gates_.size(); i++) {
        const Gate &g = gates_[i];
        if (i > 0) {
            out += "; ";
        }
        out += gate_name(g.kind);
        out += ' ';
        out += std::to_string(g.q0);
        if (gate_arity(g.kind) == 2) {
            out += ' ';
            out += std::to_string(g.q1);
        }
    }
    return out;
}

CliffordCircuit CliffordCircuit::parse(std::string_view text, size_t num_qubits) {
    CliffordCircuit circuit(num_qubits);
    text = trim(text);
    if (text.empty()) {
        return circuit;
    }
    while (true) {
        size_t semi = text.find(';');
        std::string_view item = trim(text.substr(0, semi));
        if (item.empty()) {
            throw std::invalid_argument("empty gate in circuit text");
        }
        std::vector<std::string_view> tokens;
        while (!item.empty()) {
            size_t sp = item.find(' ');
            tokens.push_back(item.substr(0, sp));
            item = sp == std::string_view::npos ? std::string_view{} : trim(item.substr(sp + 1));
        }
        GateKind kind = gate_kind_from_name(tokens[0]);
        if (tokens.size() != gate_arity(kind) + 1) {
            throw std::invalid_argument("wrong operand count for gate " + std::string(tokens[0]));
        }
        Gate g{kind, parse_qubit(tokens[1]), 0};
        if (tokens.size() == 3) {
            g.q1 = parse_qubit(tokens[2]);
        }
        circuit.append(g);
        if (semi == std::string_view::npos) {
            break;
        }
        text = text.substr(semi + 1);
    }
    return circuit;
}

CliffordCircuit invert_circuit(const CliffordCircuit &circuit) {
    CliffordCircuit out(circuit.num_qubits());
    const auto &gates = circuit.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        out.append(inverse_gate(*it));
    }
    return out;
}

}  // namespace qlock
