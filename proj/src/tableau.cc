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

#include "qlock/tableau.h"

#include <bit>
#include <charconv>
#include <cmath>
#include <algorithm>
#include <stdexcept>

namespace qlock {

namespace {

// lhs <- lhs * rhs on packed words; returns the accumulated power of i.
// Per qubit the product picks up +i on the cyclic orders XY, YZ, ZX and -i
// on the reverse orders.
int multiply_words(uint64_t *x1, uint64_t *z1, const uint64_t *x2, const uint64_t *z2, size_t words) {
    int log_i = 0;
    for (size_t w = 0; w < words; w++) {
        uint64_t a_x = x1[w] & ~z1[w];
        uint64_t a_y = x1[w] & z1[w];
        uint64_t a_z = ~x1[w] & z1[w];
        uint64_t b_x = x2[w] & ~z2[w];
        uint64_t b_y = x2[w] & z2[w];
        uint64_t b_z = ~x2[w] & z2[w];
        uint64_t plus = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
        uint64_t minus = (a_y & b_x) | (a_z & b_y) | (a_x & b_z);
        log_i += std::popcount(plus) - std::popcount(minus);
        x1[w] ^= x2[w];
        z1[w] ^= z2[w];
    }
    return log_i;
}

// Conjugation rules on one qubit's (x, z) bits; returns 1 when the sign flips.
uint8_t conjugate_bits(GateKind kind, uint8_t &x, uint8_t &z) {
    uint8_t flip = 0;
    switch (kind) {
        case GateKind::H:
            flip = x & z;
            std::swap(x, z);
            break;
        case GateKind::S:
            flip = x & z;
            z ^= x;
            break;
        case GateKind::SDG:
            flip = x & (z ^ 1);
            z ^= x;
            break;
        case GateKind::X:
            flip = z;
            break;
        case GateKind::Y:
            flip = x ^ z;
            break;
        case GateKind::Z:
            flip = x;
            break;
        default:
            break;
    }
    return flip;
}

// Two-qubit rules; for CNOT a is the control and b the target.
uint8_t conjugate_bits(GateKind kind, uint8_t &xa, uint8_t &za, uint8_t &xb, uint8_t &zb) {
    uint8_t flip = 0;
    switch (kind) {
        case GateKind::CNOT:
            flip = xa & zb & (xb ^ za ^ 1);
            xb ^= xa;
            za ^= zb;
            break;
        case GateKind::CZ:
            flip = xa & xb & (za ^ zb);
            za ^= xb;
            zb ^= xa;
            break;
        case GateKind::SWAP:
            std::swap(xa, xb);
            std::swap(za, zb);
            break;
        default:
            break;
    }
    return flip;
}

}  // namespace

void conjugate(PauliRow &row, const Gate &gate) {
    if (gate.q0 >= row.size() || (gate_arity(gate.kind) == 2 && gate.q1 >= row.size())) {
        throw std::out_of_range("gate qubit index out of range for Pauli row");
    }
    uint8_t flip;
    if (gate_arity(gate.kind) == 1) {
        flip = conjugate_bits(gate.kind, row.x[gate.q0], row.z[gate.q0]);
    } else {
        if (gate.q0 == gate.q1) {
            throw std::invalid_argument("two-qubit gate needs distinct qubits");
        }
        flip = conjugate_bits(gate.kind, row.x[gate.q0], row.z[gate.q0], row.x[gate.q1], row.z[gate.q1]);
    }
    row.negative ^= flip != 0;
}

PauliRow PauliRow::parse(std::string_view text) {
    PauliRow row;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        row.negative = text[0] == '-';
        text.remove_prefix(1);
    }
    for (char c : text) {
        switch (c) {
            case 'I':
            case '_':
                row.x.push_back(0), row.z.push_back(0);
                break;
            case 'X':
                row.x.push_back(1), row.z.push_back(0);
                break;
            case 'Y':
                row.x.push_back(1), row.z.push_back(1);
                break;
            case 'Z':
                row.x.push_back(0), row.z.push_back(1);
                break;
            default:
                throw std::invalid_argument("bad Pauli character in '" + std::string(text) + "'");
        }
    }
    return row;
}

std::string PauliRow::str() const {
    static constexpr char kChars[] = {'_', 'X', 'Z', 'Y'};
    std::string s(1, negative ? '-' : '+');
    for (size_t i = 0; i < x.size(); i++) {
        s += kChars[x[i] | (z[i] << 1)];
    }
    return s;
}

bool PauliRow::commutes_with(const PauliRow &other) const {
    bool anti = false;
    for (size_t i = 0; i < x.size(); i++) {
        anti ^= (x[i] & other.z[i]) ^ (z[i] & other.x[i]);
    }
    return !anti;
}

Tableau::Tableau(size_t num_qubits)
    : n_(num_qubits),
      words_((num_qubits + 63) / 64),
      xs_(2 * num_qubits * words_, 0),
      zs_(2 * num_qubits * words_, 0),
      signs_(2 * num_qubits, 0) {
    for (size_t i = 0; i < n_; i++) {
        xs_[i * words_ + i / 64] |= uint64_t{1} << (i % 64);
        zs_[(n_ + i) * words_ + i / 64] |= uint64_t{1} << (i % 64);
    }
}

Tableau Tableau::basis_state(const BitString &x) {
    Tableau t(x.size());
    for (size_t i = 0; i < x.size(); i++) {
        t.signs_[t.n_ + i] = x[i] ? 1 : 0;
    }
    return t;
}

void Tableau::check_qubit(size_t q) const {
    if (q >= n_) {
        throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " + std::to_string(n_) +
                                " qubits");
    }
}

void Tableau::apply(const Gate &gate) {
    check_qubit(gate.q0);
    const size_t wa = gate.q0 / 64;
    const unsigned sa = gate.q0 % 64;
    const size_t rows = 2 * n_;

    if (gate_arity(gate.kind) == 1) {
        for (size_t r = 0; r < rows; r++) {
            uint64_t &xw = xs_[r * words_ + wa];
            uint64_t &zw = zs_[r * words_ + wa];
            uint8_t x = (xw >> sa) & 1;
            uint8_t z = (zw >> sa) & 1;
            uint8_t flip = conjugate_bits(gate.kind, x, z);
            xw = (xw & ~(uint64_t{1} << sa)) | (uint64_t{x} << sa);
            zw = (zw & ~(uint64_t{1} << sa)) | (uint64_t{z} << sa);
            signs_[r] ^= flip;
        }
        return;
    }

    check_qubit(gate.q1);
    if (gate.q0 == gate.q1) {
        throw std::invalid_argument("two-qubit gate needs distinct qubits");
    }
    const size_t wb = gate.q1 / 64;
    const unsigned sb = gate.q1 % 64;
    for (size_t r = 0; r < rows; r++) {
        uint64_t &xa_w = xs_[r * words_ + wa];
        uint64_t &za_w = zs_[r * words_ + wa];
        uint64_t &xb_w = xs_[r * words_ + wb];
        uint64_t &zb_w = zs_[r * words_ + wb];
        uint8_t xa = (xa_w >> sa) & 1;
        uint8_t za = (za_w >> sa) & 1;
        uint8_t xb = (xb_w >> sb) & 1;
        uint8_t zb = (zb_w >> sb) & 1;
        uint8_t flip = conjugate_bits(gate.kind, xa, za, xb, zb);
        // a and b may share a word, so clear and set through the references one at a time.
        xa_w = (xa_w & ~(uint64_t{1} << sa)) | (uint64_t{xa} << sa);
        za_w = (za_w & ~(uint64_t{1} << sa)) | (uint64_t{za} << sa);
        xb_w = (xb_w & ~(uint64_t{1} << sb)) | (uint64_t{xb} << sb);
        zb_w = (zb_w & ~(uint64_t{1} << sb)) | (uint64_t{zb} << sb);
        signs_[r] ^= flip;
    }
}

void Tableau::apply(const CliffordCircuit &circuit) {
    if (circuit.num_qubits() > n_) {
        throw std::out_of_range("circuit acts on more qubits than the tableau holds");
    }
    for (const Gate &g : circuit.gates()) {
        check_qubit(g.q0);
        if (gate_arity(g.kind) == 2) {
            check_qubit(g.q1);
            if (g.q0 == g.q1) {
                throw std::invalid_argument("two-qubit gate needs distinct qubits");
            }
        }
    }
    if (circuit.size() < 4) {
        for (const Gate &g : circuit.gates()) {
            apply(g);
        }
        return;
    }

    // Long circuits run on the transposed tableau, where a gate touches only
    // the columns of its qubits and every row is updated in parallel.
    const size_t rows = 2 * n_;
    const size_t rw = (rows + 63) / 64;
    std::vector<uint64_t> xc(n_ * rw, 0), zc(n_ * rw, 0), sc(rw, 0);
    for (size_t r = 0; r < rows; r++) {
        const uint64_t bit = uint64_t{1} << (r % 64);
        for (size_t q = 0; q < n_; q++) {
            if ((xs_[r * words_ + q / 64] >> (q % 64)) & 1) {
                xc[q * rw + r / 64] |= bit;
            }
            if ((zs_[r * words_ + q / 64] >> (q % 64)) & 1) {
                zc[q * rw + r / 64] |= bit;
            }
        }
        if (signs_[r]) {
            sc[r / 64] |= bit;
        }
    }

    for (const Gate &g : circuit.gates()) {
        uint64_t *xa = &xc[g.q0 * rw];
        uint64_t *za = &zc[g.q0 * rw];
        uint64_t *xb = &xc[g.q1 * rw];
        uint64_t *zb = &zc[g.q1 * rw];
        for (size_t w = 0; w < rw; w++) {
            switch (g.kind) {
                case GateKind::H:
                    sc[w] ^= xa[w] & za[w];
                    std::swap(xa[w], za[w]);
                    break;
                case GateKind::S:
                    sc[w] ^= xa[w] & za[w];
                    za[w] ^= xa[w];
                    break;
                case GateKind::SDG:
                    sc[w] ^= xa[w] & ~za[w];
                    za[w] ^= xa[w];
                    break;
                case GateKind::X:
                    sc[w] ^= za[w];
                    break;
                case GateKind::Y:
                    sc[w] ^= xa[w] ^ za[w];
                    break;
                case GateKind::Z:
                    sc[w] ^= xa[w];
                    break;
                case GateKind::CZ:
                    sc[w] ^= xa[w] & xb[w] & (za[w] ^ zb[w]);
                    za[w] ^= xb[w];
                    zb[w] ^= xa[w];
                    break;
                case GateKind::SWAP:
                    std::swap(xa[w], xb[w]);
                    std::swap(za[w], zb[w]);
                    break;
                case GateKind::CNOT:
                    sc[w] ^= xa[w] & zb[w] & ~(xb[w] ^ za[w]);
                    xb[w] ^= xa[w];
                    za[w] ^= zb[w];
                    break;
            }
        }
    }

    std::fill(xs_.begin(), xs_.end(), 0);
    std::fill(zs_.begin(), zs_.end(), 0);
    for (size_t q = 0; q < n_; q++) {
        const uint64_t bit = uint64_t{1} << (q % 64);
        for (size_t r = 0; r < rows; r++) {
            if ((xc[q * rw + r / 64] >> (r % 64)) & 1) {
                xs_[r * words_ + q / 64] |= bit;
            }
            if ((zc[q * rw + r / 64] >> (r % 64)) & 1) {
                zs_[r * words_ + q / 64] |= bit;
            }
        }
    }
    for (size_t r = 0; r < rows; r++) {
        signs_[r] = (sc[r / 64] >> (r % 64)) & 1;
    }
}

void Tableau::multiply_row_into(size_t target, size_t source) {
    int log_i = multiply_words(&xs_[target * words_], &zs_[target * words_], &xs_[source * words_],
                               &zs_[source * words_], words_);
    log_i = (log_i + 2 * (signs_[target] + signs_[source])) & 3;
    if (log_i & 1) {
        throw std::logic_error("row product of anticommuting rows");
    }
    signs_[target] = static_cast<uint8_t>(log_i >> 1);
}

void Tableau::copy_row(size_t target, size_t source) {
    for (size_t w = 0; w < words_; w++) {
        xs_[target * words_ + w] = xs_[source * words_ + w];
        zs_[target * words_ + w] = zs_[source * words_ + w];
    }
    signs_[target] = signs_[source];
}

void Tableau::clear_row(size_t r) {
    for (size_t w = 0; w < words_; w++) {
        xs_[r * words_ + w] = 0;
        zs_[r * words_ + w] = 0;
    }
    signs_[r] = 0;
}

std::optional<bool> Tableau::deterministic_outcome(size_t qubit) const {
    check_qubit(qubit);
    for (size_t i = 0; i < n_; i++) {
        if (x(n_ + i, qubit)) {
            return std::nullopt;
        }
    }
    // Z_qubit is the product of the stabilizers paired with destabilizers
    // that anticommute with it.
    std::vector<uint64_t> acc_x(words_, 0);
    std::vector<uint64_t> acc_z(words_, 0);
    int log_i = 0;
    for (size_t i = 0; i < n_; i++) {
        if (x(i, qubit)) {
            size_t r = n_ + i;
            log_i += multiply_words(acc_x.data(), acc_z.data(), &xs_[r * words_], &zs_[r * words_], words_);
            log_i += 2 * signs_[r];
        }
    }
    return (log_i & 2) != 0;
}

double Tableau::measure_postselect(size_t qubit, bool bit) {
    check_qubit(qubit);
    size_t pivot = 2 * n_;
    for (size_t i = n_; i < 2 * n_; i++) {
        if (x(i, qubit)) {
            pivot = i;
            break;
        }
    }
    if (pivot == 2 * n_) {
        return *deterministic_outcome(qubit) == bit ? 1.0 : 0.0;
    }
    for (size_t r = 0; r < 2 * n_; r++) {
        if (r != pivot && r != pivot - n_ && x(r, qubit)) {
            multiply_row_into(r, pivot);
        }
    }
    copy_row(pivot - n_, pivot);
    clear_row(pivot);
    zs_[pivot * words_ + qubit / 64] |= uint64_t{1} << (qubit % 64);
    signs_[pivot] = bit ? 1 : 0;
    return 0.5;
}

PauliRow Tableau::row(size_t r) const {
    PauliRow out;
    out.x.resize(n_);
    out.z.resize(n_);
    for (size_t q = 0; q < n_; q++) {
        out.x[q] = x(r, q);
        out.z[q] = z(r, q);
    }
    out.negative = sign(r);
    return out;
}

bool Tableau::is_valid() const {
    auto anticommute = [&](size_t a, size_t b) {
        uint64_t acc = 0;
        for (size_t w = 0; w < words_; w++) {
            acc ^= (xs_[a * words_ + w] & zs_[b * words_ + w]) ^ (zs_[a * words_ + w] & xs_[b * words_ + w]);
        }
        return (std::popcount(acc) & 1) != 0;
    };
    for (size_t a = 0; a < 2 * n_; a++) {
        for (size_t b = a + 1; b < 2 * n_; b++) {
            bool expect = (b == a + n_) && a < n_;
            if (anticommute(a, b) != expect) {
                return false;
            }
        }
    }
    return true;
}

std::string Tableau::serialize() const {
    std::string out = "n=" + std::to_string(n_) + "\n";
    out.reserve(out.size() + 2 * n_ * (2 * n_ + 6));
    for (size_t r = 0; r < 2 * n_; r++) {
        out += r < n_ ? 'D' : 'S';
        out += ' ';
        for (size_t q = 0; q < n_; q++) {
            out += x(r, q) ? '1' : '0';
        }
        out += ' ';
        for (size_t q = 0; q < n_; q++) {
            out += z(r, q) ? '1' : '0';
        }
        out += ' ';
        out += sign(r) ? '-' : '+';
        out += '\n';
    }
    return out;
}

Tableau Tableau::parse(std::string_view text) {
    auto next_line = [&text]() -> std::string_view {
        if (text.empty()) {
            throw std::invalid_argument("tableau text ended early");
        }
        size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        return line;
    };
    std::string_view header = next_line();
    if (!header.starts_with("n=")) {
        throw std::invalid_argument("tableau header must be 'n=<n>'");
    }
    size_t n = 0;
    auto [ptr, ec] = std::from_chars(header.data() + 2, header.data() + header.size(), n);
    if (ec != std::errc() || ptr != header.data() + header.size()) {
        throw std::invalid_argument("bad qubit count in tableau header");
    }
    Tableau t(n);
    for (size_t r = 0; r < 2 * n; r++) {
        std::string_view line = next_line();
        char kind = r < n ? 'D' : 'S';
        if (line.size() != 2 * n + 5 || line[0] != kind || line[1] != ' ' || line[n + 2] != ' ' ||
            line[2 * n + 3] != ' ') {
            throw std::invalid_argument("malformed tableau row " + std::to_string(r));
        }
        t.clear_row(r);
        for (size_t q = 0; q < n; q++) {
            char cx = line[2 + q];
            char cz = line[n + 3 + q];
            if ((cx != '0' && cx != '1') || (cz != '0' && cz != '1')) {
                throw std::invalid_argument("malformed tableau row " + std::to_string(r));
            }
            if (cx == '1') {
                t.xs_[r * t.words_ + q / 64] |= uint64_t{1} << (q % 64);
            }
            if (cz == '1') {
                t.zs_[r * t.words_ + q / 64] |= uint64_t{1} << (q % 64);
            }
        }
        char s = line[2 * n + 4];
        if (s != '+' && s != '-') {
            throw std::invalid_argument("malformed sign in tableau row " + std::to_string(r));
        }
        t.signs_[r] = s == '-' ? 1 : 0;
    }
    while (!text.empty()) {
        if (!next_line().empty()) {
            throw std::invalid_argument("trailing content after tableau rows");
        }
    }
    if (!t.is_valid()) {
        throw std::invalid_argument("tableau rows do not form a symplectic basis");
    }
    return t;
}

Tableau apply_gate(Tableau state, const Gate &gate) {
    state.apply(gate);
    return state;
}

std::pair<double, Tableau> measure_postselect(Tableau state, size_t qubit, bool bit) {
    double p = state.measure_postselect(qubit, bit);
    return {p, std::move(state)};
}

std::optional<int> basis_overlap_log2(const CliffordCircuit &circuit, const BitString &x, const BitString &y) {
    if (x.size() != circuit.num_qubits() || y.size() != circuit.num_qubits()) {
        throw std::invalid_argument("bit string length does not match circuit width");
    }
    Tableau t = Tableau::basis_state(x);
    t.apply(circuit);
    int halvings = 0;
    for (size_t q = 0; q < y.size(); q++) {
        double p = t.measure_postselect(q, y[q]);
        if (p == 0.0) {
            return std::nullopt;
        }
        if (p == 0.5) {
            halvings++;
        }
    }
    return halvings;
}

double basis_overlap_prob(const CliffordCircuit &circuit, const BitString &x, const BitString &y) {
    auto s = basis_overlap_log2(circuit, x, y);
    return s ? std::ldexp(1.0, -*s) : 0.0;
}

}  // namespace qlock
