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

#ifndef QLOCK_TESTS_TEST_UTIL_H
#define QLOCK_TESTS_TEST_UTIL_H

#include <cmath>
#include <complex>
#include <vector>

#include "qlock/circuit.h"
#include "qlock/dense.h"
#include "qlock/rng.h"

namespace qlock::testing {

/// Gate-by-gate random circuit over the full gate set; independent of the samplers.
inline CliffordCircuit random_circuit(size_t n, size_t num_gates, Rng &rng) {
    CliffordCircuit c(n);
    for (size_t i = 0; i < num_gates; i++) {
        auto kind = static_cast<GateKind>(rng.below(n >= 2 ? 9 : 6));
        uint32_t a = static_cast<uint32_t>(rng.below(n));
        if (gate_arity(kind) == 1) {
            c.append(kind, a);
        } else {
            uint32_t b = static_cast<uint32_t>(rng.below(n - 1));
            if (b >= a) {
                b++;
            }
            c.append(kind, a, b);
        }
    }
    return c;
}

/// Equality up to a global phase.
inline bool same_up_to_phase(const Matrix &a, const Matrix &b, double tol = 1e-9) {
    Complex phase{};
    for (size_t r = 0; r < a.dim() && phase == Complex{}; r++) {
        for (size_t c = 0; c < a.dim(); c++) {
            if (std::abs(b(r, c)) > 0.5 / static_cast<double>(a.dim())) {
                phase = a(r, c) / b(r, c);
                break;
            }
        }
    }
    if (std::abs(std::abs(phase) - 1.0) > tol) {
        return false;
    }
    for (size_t r = 0; r < a.dim(); r++) {
        for (size_t c = 0; c < a.dim(); c++) {
            if (std::abs(a(r, c) - phase * b(r, c)) > tol) {
                return false;
            }
        }
    }
    return true;
}

/// The single-qubit Clifford group as dense 2x2 matrices, found by closing
/// {H, S} under multiplication and deduplicating up to global phase.
inline std::vector<Matrix> single_qubit_clifford_group() {
    Matrix h(2);
    h(0, 0) = h(0, 1) = h(1, 0) = std::sqrt(0.5);
    h(1, 1) = -std::sqrt(0.5);
    Matrix s(2);
    s(0, 0) = 1.0;
    s(1, 1) = Complex(0.0, 1.0);
    std::vector<Matrix> group{Matrix::identity(2)};
    for (size_t i = 0; i < group.size(); i++) {
        for (const Matrix *g : {&h, &s}) {
            Matrix next = *g * group[i];
            bool seen = false;
            for (const Matrix &m : group) {
                seen = seen || same_up_to_phase(m, next);
            }
            if (!seen) {
                group.push_back(next);
            }
        }
    }
    return group;
}

}  // namespace qlock::testing

#endif
