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

#include "qlock/sampling.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qlock/tableau.h"

namespace qlock {

namespace {

// Records gates into a circuit while conjugating the pair being reduced.
struct Reducer {
    CliffordCircuit &out;
    PauliRow &a;
    PauliRow &b;

    void emit(GateKind kind, uint32_t q0, uint32_t q1 = 0) {
        Gate g{kind, q0, q1};
        out.append(g);
        conjugate(a, g);
        conjugate(b, g);
    }
};

// Pauli on the listed qubits of an n-qubit register from a 2m-bit code:
// bit 2j is the x bit and bit 2j+1 the z bit of active[j].
PauliRow pauli_from_code(uint64_t code, const std::vector<uint32_t> &active, size_t n) {
    PauliRow p;
    p.x.assign(n, 0);
    p.z.assign(n, 0);
    for (size_t j = 0; j < active.size(); j++) {
        p.x[active[j]] = (code >> (2 * j)) & 1;
        p.z[active[j]] = (code >> (2 * j + 1)) & 1;
    }
    return p;
}

bool codes_anticommute(uint64_t a, uint64_t b, size_t m) {
    uint8_t acc = 0;
    for (size_t j = 0; j < m; j++) {
        uint8_t ax = (a >> (2 * j)) & 1, az = (a >> (2 * j + 1)) & 1;
        uint8_t bx = (b >> (2 * j)) & 1, bz = (b >> (2 * j + 1)) & 1;
        acc ^= (ax & bz) ^ (az & bx);
    }
    return acc != 0;
}

// Appends gates mapping the anticommuting pair (a, b), supported on active,
// to (+X_q, +Z_q) where q = active[0]. The appended circuit V satisfies
// V a V^dag = X_q and V b V^dag = Z_q.
void reduce_pair(PauliRow a, PauliRow b, const std::vector<uint32_t> &active, CliffordCircuit &out) {
    Reducer r{out, a, b};
    const uint32_t q = active[0];

    // a -> product of X's.
    for (uint32_t j : active) {
        if (a.z[j]) {
            r.emit(a.x[j] ? GateKind::S : GateKind::H, j);
        }
    }
    // Fold the X support of a onto one qubit, then move it to q.
    uint32_t pivot = UINT32_MAX;
    for (uint32_t j : active) {
        if (a.x[j]) {
            if (pivot == UINT32_MAX) {
                pivot = j;
            } else {
                r.emit(GateKind::CNOT, pivot, j);
            }
        }
    }
    if (pivot == UINT32_MAX) {
        throw std::logic_error("cannot reduce the identity Pauli");
    }
    if (pivot != q) {
        r.emit(GateKind::SWAP, q, pivot);
    }

    // b anticommutes with X_q, so it carries Z on q. Make it exactly Z_q.
    bool b_is_zq = !b.x[q];
    for (uint32_t j : active) {
        if (j != q && (b.x[j] || b.z[j])) {
            b_is_zq = false;
        }
    }
    if (!b_is_zq) {
        r.emit(GateKind::H, q);  // a = Z_q, b has X on q
        for (uint32_t j : active) {
            if (b.z[j]) {
                // b.x[q] is set here, so q only ever receives S, which fixes Z_q.
                r.emit(b.x[j] ? GateKind::S : GateKind::H, j);
            }
        }
        for (uint32_t j : active) {
            if (j != q && b.x[j]) {
                r.emit(GateKind::CNOT, q, j);
            }
        }
        r.emit(GateKind::H, q);
    }

    if (a.negative && b.negative) {
        r.emit(GateKind::Y, q);
    } else if (a.negative) {
        r.emit(GateKind::Z, q);
    } else if (b.negative) {
        r.emit(GateKind::X, q);
    }
}

// Number of Paulis on m qubits anticommuting with a fixed non-identity one.
uint64_t anticommuting_count(size_t m) {
    return uint64_t{2} << (2 * (m - 1));
}

uint64_t symplectic_order(size_t n) {
    uint64_t order = 1;
    for (size_t m = 1; m <= n; m++) {
        order *= ((uint64_t{1} << (2 * m)) - 1) * anticommuting_count(m);
    }
    return order;
}

}  // namespace

void SamplerConfig::validate() const {
    if (num_qubits == 0) {
        throw std::invalid_argument("sampler needs at least one qubit");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    if (!(depth_factor > 0.0) || !std::isfinite(depth_factor)) {
        throw std::invalid_argument("depth factor must be positive");
    }
    if (mode == SamplerMode::kSingleQubitExhaustive && num_qubits != 1) {
        throw std::invalid_argument("exhaustive single-qubit mode requires n = 1");
    }
}

size_t design_length(const SamplerConfig &cfg) {
    cfg.validate();
    const double n = static_cast<double>(cfg.num_qubits);
    return static_cast<size_t>(std::ceil(cfg.depth_factor * n * (n + std::log2(1.0 / cfg.delta))));
}

CliffordCircuit clifford_from_index(size_t num_qubits, uint64_t symplectic_index, uint64_t pauli_index) {
    if (num_qubits == 0 || num_qubits > 2) {
        throw std::invalid_argument("indexed Clifford construction supports 1 or 2 qubits");
    }
    if (symplectic_index >= symplectic_order(num_qubits) || pauli_index >= (uint64_t{1} << (2 * num_qubits))) {
        throw std::invalid_argument("Clifford index out of range");
    }
    CliffordCircuit out(num_qubits);
    // Mixed radix, most significant step first: step q chooses a in
    // [0, 4^m - 1) and b among the 2 * 4^(m-1) Paulis anticommuting with a.
    std::vector<uint64_t> radices;
    for (size_t q = 0; q < num_qubits; q++) {
        radices.push_back(((uint64_t{1} << (2 * (num_qubits - q))) - 1) * anticommuting_count(num_qubits - q));
    }
    for (size_t q = 0; q < num_qubits; q++) {
        uint64_t below = 1;
        for (size_t r = q + 1; r < num_qubits; r++) {
            below *= radices[r];
        }
        uint64_t step = (symplectic_index / below) % radices[q];
        const size_t m = num_qubits - q;
        uint64_t a_code = step / anticommuting_count(m) + 1;
        uint64_t b_rank = step % anticommuting_count(m);
        uint64_t b_code = 0;
        for (uint64_t c = 1;; c++) {
            if (codes_anticommute(a_code, c, m) && b_rank-- == 0) {
                b_code = c;
                break;
            }
        }
        std::vector<uint32_t> active;
        for (size_t j = q; j < num_qubits; j++) {
            active.push_back(static_cast<uint32_t>(j));
        }
        PauliRow a = pauli_from_code(a_code, active, num_qubits);
        PauliRow b = pauli_from_code(b_code, active, num_qubits);
        uint64_t signs = (pauli_index >> (2 * (num_qubits - 1 - q))) & 3;
        a.negative = (signs & 1) != 0;
        b.negative = (signs & 2) != 0;
        reduce_pair(std::move(a), std::move(b), active, out);
    }
    return out;
}

CliffordCircuit sample_two_qubit_clifford(Rng &rng) {
    uint64_t index = rng.below(kTwoQubitCliffordCount);
    return clifford_from_index(2, index / kTwoQubitPauliCount, index % kTwoQubitPauliCount);
}

CliffordCircuit sample_uniform_clifford(size_t num_qubits, Rng &rng) {
    if (num_qubits == 0) {
        throw std::invalid_argument("uniform Clifford needs at least one qubit");
    }
    CliffordCircuit out(num_qubits);
    std::vector<uint32_t> active;
    for (size_t j = 0; j < num_qubits; j++) {
        active.push_back(static_cast<uint32_t>(j));
    }
    while (!active.empty()) {
        auto random_pauli = [&]() {
            PauliRow p;
            p.x.assign(num_qubits, 0);
            p.z.assign(num_qubits, 0);
            for (uint32_t j : active) {
                uint64_t two = rng.below(4);
                p.x[j] = two & 1;
                p.z[j] = (two >> 1) & 1;
            }
            return p;
        };
        PauliRow a;
        bool nonzero = false;
        while (!nonzero) {
            a = random_pauli();
            for (uint32_t j : active) {
                nonzero = nonzero || a.x[j] || a.z[j];
            }
        }
        PauliRow b = random_pauli();
        while (b.commutes_with(a)) {
            b = random_pauli();
        }
        a.negative = rng.bit();
        b.negative = rng.bit();
        reduce_pair(std::move(a), std::move(b), active, out);
        active.erase(active.begin());
    }
    return out;
}

CliffordCircuit sample_design_circuit(const SamplerConfig &cfg, Rng &rng) {
    cfg.validate();
    const size_t n = cfg.num_qubits;
    switch (cfg.mode) {
        case SamplerMode::kUniformClifford:
            return sample_uniform_clifford(n, rng);
        case SamplerMode::kSingleQubitExhaustive: {
            uint64_t index = rng.below(kSingleQubitCliffordCount);
            return clifford_from_index(1, index / 4, index % 4);
        }
        case SamplerMode::kApproxDesign:
            break;
    }
    if (n == 1) {
        return sample_uniform_clifford(1, rng);
    }
    CliffordCircuit out(n);
    for (const CliffordCircuit &fragment : sample_design_fragments(cfg, rng)) {
        out.append(fragment);
    }
    return out;
}

std::vector<CliffordCircuit> sample_design_fragments(const SamplerConfig &cfg, Rng &rng) {
    cfg.validate();
    const size_t n = cfg.num_qubits;
    if (n < 2) {
        throw std::invalid_argument("two-qubit fragments need at least two qubits");
    }
    const size_t count = design_length(cfg);
    std::vector<CliffordCircuit> fragments;
    fragments.reserve(count);
    for (size_t f = 0; f < count; f++) {
        uint32_t a = static_cast<uint32_t>(rng.below(n));
        uint32_t b = static_cast<uint32_t>(rng.below(n - 1));
        if (b >= a) {
            b++;
        }
        const uint32_t wires[2] = {a, b};
        const CliffordCircuit local = sample_two_qubit_clifford(rng);
        CliffordCircuit placed(n);
        for (const Gate &g : local.gates()) {
            Gate moved = g;
            moved.q0 = wires[g.q0];
            if (gate_arity(g.kind) == 2) {
                moved.q1 = wires[g.q1];
            }
            placed.append(moved);
        }
        fragments.push_back(std::move(placed));
    }
    return fragments;
}

CliffordCircuit derive_circuit(const SeedContext &ctx, const SamplerConfig &cfg) {
    cfg.validate();
    if (cfg.mode == SamplerMode::kSingleQubitExhaustive) {
        uint64_t index = ctx.stream_index % kSingleQubitCliffordCount;
        return clifford_from_index(1, index / 4, index % 4);
    }
    Rng rng(ctx.master_seed, StreamDomain::kCodebook, ctx.stream_index);
    return sample_design_circuit(cfg, rng);
}

}  // namespace qlock
