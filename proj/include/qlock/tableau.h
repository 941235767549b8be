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

#ifndef QLOCK_TABLEAU_H
#define QLOCK_TABLEAU_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlock/bit_string.h"
#include "qlock/circuit.h"

namespace qlock {

/// Signed Pauli product. Bit pair (x, z) on a qubit encodes I, X, Z, Y as
/// (0,0), (1,0), (0,1), (1,1).
struct PauliRow {
    std::vector<uint8_t> x;
    std::vector<uint8_t> z;
    bool negative = false;

    size_t size() const { return x.size(); }
    /// Parses strings like "+XIZ" or "-Y_Z" ('_' and 'I' both mean identity).
    static PauliRow parse(std::string_view text);
    std::string str() const;
    bool commutes_with(const PauliRow &other) const;

    bool operator==(const PauliRow &other) const = default;
};

/// Replaces row by gate * row * gate^dagger.
void conjugate(PauliRow &row, const Gate &gate);

/// Stabilizer state stored as n destabilizer rows followed by n stabilizer rows.
///
/// Rows are bit-packed into 64-bit words so that row products cost O(n / 64)
/// word operations. Row signs are +1 or -1 only; the +-i bookkeeping of a
/// product lives inside multiply_row_into.
class Tableau {
   public:
    /// The all-zeros state: destabilizers X_i, stabilizers Z_i.
    explicit Tableau(size_t num_qubits);
    /// Stabilized by (-1)^{x_i} Z_i; destabilizers X_i.
    static Tableau basis_state(const BitString &x);

    size_t num_qubits() const { return n_; }

    bool x(size_t row, size_t qubit) const { return (xs_[row * words_ + qubit / 64] >> (qubit % 64)) & 1; }
    bool z(size_t row, size_t qubit) const { return (zs_[row * words_ + qubit / 64] >> (qubit % 64)) & 1; }
    bool sign(size_t row) const { return signs_[row] != 0; }
    PauliRow destabilizer(size_t i) const { return row(i); }
    PauliRow stabilizer(size_t i) const { return row(n_ + i); }

    /// Conjugates every row by the gate. Throws std::out_of_range on bad indices.
    void apply(const Gate &gate);
    void apply(const CliffordCircuit &circuit);

    /// Outcome of a computational-basis measurement of qubit if it is fixed.
    std::optional<bool> deterministic_outcome(size_t qubit) const;

    /// Probability of observing bit on qubit (1, 1/2 or 0). On probability
    /// 1/2 the state is projected onto the outcome; otherwise it is unchanged.
    double measure_postselect(size_t qubit, bool bit);

    /// Checks the commutation relations of a symplectic basis on all row pairs.
    bool is_valid() const;

    /// Header "n=<n>" then 2n lines "D|S <x-bits> <z-bits> <+|->", LF-terminated.
    std::string serialize() const;
    static Tableau parse(std::string_view text);

    bool operator==(const Tableau &other) const = default;

   private:
    PauliRow row(size_t r) const;
    void check_qubit(size_t q) const;
    void multiply_row_into(size_t target, size_t source);
    void copy_row(size_t target, size_t source);
    void clear_row(size_t r);

    size_t n_ = 0;
    size_t words_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    std::vector<uint8_t> signs_;
};

Tableau apply_gate(Tableau state, const Gate &gate);
std::pair<double, Tableau> measure_postselect(Tableau state, size_t qubit, bool bit);

/// |<y|C|x>|^2 as log2 of its inverse: s with probability 2^-s, or nullopt when it is zero.
std::optional<int> basis_overlap_log2(const CliffordCircuit &circuit, const BitString &x, const BitString &y);
/// |<y|C|x>|^2 via postselection qubit by qubit.
double basis_overlap_prob(const CliffordCircuit &circuit, const BitString &x, const BitString &y);

}  // namespace qlock

#endif
