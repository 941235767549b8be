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

#include "qlock/dense.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qlock {

namespace {

constexpr size_t kDefaultCutoff = 12;
constexpr double kHermitianTol = 1e-9;
constexpr double kJacobiTol = 1e-12;
constexpr int kMaxSweeps = 100;
constexpr double kEntropyClip = 1e-12;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

size_t log2_exact(size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("dimension must be a power of two");
    }
    size_t n = 0;
    while ((size_t{1} << n) < dim) {
        n++;
    }
    return n;
}

void check_hermitian(const Matrix &m) {
    for (size_t r = 0; r < m.dim(); r++) {
        for (size_t c = r; c < m.dim(); c++) {
            if (std::abs(m(r, c) - std::conj(m(c, r))) > kHermitianTol) {
                throw std::invalid_argument("matrix is not Hermitian");
            }
        }
    }
}

}  // namespace

size_t dense_cutoff() {
    if (const char *env = std::getenv("QLOCK_DENSE_CUTOFF")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v < 31) {
            return static_cast<size_t>(v);
        }
        throw std::invalid_argument("QLOCK_DENSE_CUTOFF must be an integer in [1, 30]");
    }
    return kDefaultCutoff;
}

void require_dense(size_t num_qubits) {
    size_t cutoff = dense_cutoff();
    if (num_qubits > cutoff) {
        throw std::invalid_argument("dense backend limited to " + std::to_string(cutoff) + " qubits, got " +
                                    std::to_string(num_qubits));
    }
}

Matrix Matrix::identity(size_t dim) {
    Matrix m(dim);
    for (size_t i = 0; i < dim; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(dim_);
    for (size_t r = 0; r < dim_; r++) {
        for (size_t c = 0; c < dim_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

Matrix Matrix::operator*(const Matrix &rhs) const {
    if (rhs.dim_ != dim_) {
        throw std::invalid_argument("matrix dimension mismatch");
    }
    Matrix out(dim_);
    for (size_t r = 0; r < dim_; r++) {
        for (size_t k = 0; k < dim_; k++) {
            Complex a = (*this)(r, k);
            if (a == Complex{}) {
                continue;
            }
            for (size_t c = 0; c < dim_; c++) {
                out(r, c) += a * rhs(k, c);
            }
        }
    }
    return out;
}

Matrix &Matrix::operator+=(const Matrix &rhs) {
    if (rhs.dim_ != dim_) {
        throw std::invalid_argument("matrix dimension mismatch");
    }
    for (size_t i = 0; i < data_.size(); i++) {
        data_[i] += rhs.data_[i];
    }
    return *this;
}

Matrix &Matrix::operator*=(double scale) {
    for (Complex &v : data_) {
        v *= scale;
    }
    return *this;
}

Complex Matrix::trace() const {
    Complex t{};
    for (size_t i = 0; i < dim_; i++) {
        t += (*this)(i, i);
    }
    return t;
}

double Matrix::max_abs_diff(const Matrix &other) const {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("matrix dimension mismatch");
    }
    double worst = 0.0;
    for (size_t i = 0; i < data_.size(); i++) {
        worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    }
    return worst;
}

StateVector::StateVector(std::vector<Complex> amps) : n_(log2_exact(amps.size())), amps_(std::move(amps)) {
    double norm2 = 0.0;
    for (const Complex &a : amps_) {
        norm2 += std::norm(a);
    }
    if (!(norm2 > 0.0)) {
        throw std::invalid_argument("state vector has zero norm");
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (Complex &a : amps_) {
        a *= inv;
    }
}

StateVector StateVector::basis(const BitString &x) {
    require_dense(x.size());
    std::vector<Complex> amps(size_t{1} << x.size());
    amps[x.to_index()] = 1.0;
    return StateVector(std::move(amps));
}

StateVector StateVector::haar_random(size_t num_qubits, Rng &rng) {
    require_dense(num_qubits);
    std::vector<Complex> amps(size_t{1} << num_qubits);
    for (Complex &a : amps) {
        double re = rng.normal();
        double im = rng.normal();
        a = Complex(re, im);
    }
    return StateVector(std::move(amps));
}

void StateVector::apply(const Gate &gate) {
    apply_gate(amps_, n_, gate);
}

void StateVector::apply(const CliffordCircuit &circuit) {
    if (circuit.num_qubits() > n_) {
        throw std::invalid_argument("circuit acts on more qubits than the state holds");
    }
    for (const Gate &g : circuit.gates()) {
        apply_gate(amps_, n_, g);
    }
}

Complex StateVector::inner(const StateVector &other) const {
    if (other.amps_.size() != amps_.size()) {
        throw std::invalid_argument("state dimension mismatch");
    }
    Complex acc{};
    for (size_t i = 0; i < amps_.size(); i++) {
        acc += std::conj(amps_[i]) * other.amps_[i];
    }
    return acc;
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
    check_hermitian(m_);
    if (std::abs(m_.trace() - 1.0) > kHermitianTol) {
        throw std::invalid_argument("density matrix trace differs from one");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector &psi) {
    DensityMatrix rho = from_trusted(Matrix(psi.dim()));
    rho.add_projector(psi, 1.0);
    return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(size_t dim) {
    Matrix m = Matrix::identity(dim);
    m *= 1.0 / static_cast<double>(dim);
    return from_trusted(std::move(m));
}

DensityMatrix DensityMatrix::from_trusted(Matrix m) {
    DensityMatrix rho;
    rho.m_ = std::move(m);
    return rho;
}

double DensityMatrix::expectation(const StateVector &phi) const {
    if (phi.dim() != dim()) {
        throw std::invalid_argument("state dimension mismatch");
    }
    Complex acc{};
    for (size_t r = 0; r < dim(); r++) {
        Complex row{};
        for (size_t c = 0; c < dim(); c++) {
            row += m_(r, c) * phi[c];
        }
        acc += std::conj(phi[r]) * row;
    }
    return acc.real();
}

void DensityMatrix::add_projector(const StateVector &psi, double weight) {
    if (psi.dim() != dim()) {
        throw std::invalid_argument("state dimension mismatch");
    }
    for (size_t r = 0; r < dim(); r++) {
        Complex a = weight * psi[r];
        if (a == Complex{}) {
            continue;
        }
        for (size_t c = 0; c < dim(); c++) {
            m_(r, c) += a * std::conj(psi[c]);
        }
    }
}

void apply_gate(std::span<Complex> amps, size_t num_qubits, const Gate &gate) {
    if (gate.q0 >= num_qubits || (gate_arity(gate.kind) == 2 && gate.q1 >= num_qubits)) {
        throw std::out_of_range("gate qubit index out of range");
    }
    const size_t dim = amps.size();
    const size_t ma = size_t{1} << (num_qubits - 1 - gate.q0);
    const Complex i_unit(0.0, 1.0);
    if (gate_arity(gate.kind) == 1) {
        for (size_t i = 0; i < dim; i++) {
            if (i & ma) {
                continue;
            }
            Complex &a0 = amps[i];
            Complex &a1 = amps[i | ma];
            switch (gate.kind) {
                case GateKind::H: {
                    Complex s = (a0 + a1) * kInvSqrt2;
                    Complex d = (a0 - a1) * kInvSqrt2;
                    a0 = s;
                    a1 = d;
                    break;
                }
                case GateKind::S:
                    a1 *= i_unit;
                    break;
                case GateKind::SDG:
                    a1 *= -i_unit;
                    break;
                case GateKind::X:
                    std::swap(a0, a1);
                    break;
                case GateKind::Y: {
                    Complex t0 = -i_unit * a1;
                    a1 = i_unit * a0;
                    a0 = t0;
                    break;
                }
                case GateKind::Z:
                    a1 = -a1;
                    break;
                default:
                    break;
            }
        }
        return;
    }
    if (gate.q0 == gate.q1) {
        throw std::invalid_argument("two-qubit gate needs distinct qubits");
    }
    const size_t mb = size_t{1} << (num_qubits - 1 - gate.q1);
    for (size_t i = 0; i < dim; i++) {
        switch (gate.kind) {
            case GateKind::CNOT:
                if ((i & ma) && !(i & mb)) {
                    std::swap(amps[i], amps[i | mb]);
                }
                break;
            case GateKind::CZ:
                if ((i & ma) && (i & mb)) {
                    amps[i] = -amps[i];
                }
                break;
            case GateKind::SWAP:
                if ((i & ma) && !(i & mb)) {
                    std::swap(amps[i], amps[(i ^ ma) | mb]);
                }
                break;
            default:
                break;
        }
    }
}

Matrix circuit_unitary(const CliffordCircuit &circuit) {
    const size_t n = circuit.num_qubits();
    require_dense(n);
    const size_t dim = size_t{1} << n;
    // Column c of U is U|c>; evolve each basis column through the gates.
    Matrix u(dim);
    std::vector<Complex> column(dim);
    for (size_t c = 0; c < dim; c++) {
        std::fill(column.begin(), column.end(), Complex{});
        column[c] = 1.0;
        for (const Gate &g : circuit.gates()) {
            apply_gate(column, n, g);
        }
        for (size_t r = 0; r < dim; r++) {
            u(r, c) = column[r];
        }
    }
    return u;
}

double overlap_prob(const StateVector &alpha, const CliffordCircuit &circuit, const StateVector &beta) {
    if (alpha.num_qubits() != circuit.num_qubits() || beta.num_qubits() != circuit.num_qubits()) {
        throw std::invalid_argument("state and circuit widths differ");
    }
    StateVector evolved = beta;
    evolved.apply(circuit);
    return std::norm(alpha.inner(evolved));
}

std::vector<double> eigvalsh(const Matrix &input) {
    check_hermitian(input);
    const size_t d = input.dim();
    Matrix a = input;
    double scale = 0.0;
    for (size_t r = 0; r < d; r++) {
        for (size_t c = 0; c < d; c++) {
            scale += std::norm(a(r, c));
        }
    }
    const double tol = kJacobiTol * std::max(1.0, std::sqrt(scale));

    auto off_norm = [&]() {
        double s = 0.0;
        for (size_t r = 0; r < d; r++) {
            for (size_t c = r + 1; c < d; c++) {
                s += 2.0 * std::norm(a(r, c));
            }
        }
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_norm() > tol) {
        if (++sweep > kMaxSweeps) {
            throw std::runtime_error("Jacobi eigensolver did not converge");
        }
        for (size_t p = 0; p < d; p++) {
            for (size_t q = p + 1; q < d; q++) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) {
                    continue;
                }
                // J = diag(1, conj(phase)) * [[c, s], [-s, c]] zeroes a(p, q) in J^dag A J.
                const Complex phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * std::conj(phase);
                const Complex jqq = c * std::conj(phase);
                for (size_t k = 0; k < d; k++) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (size_t k = 0; k < d; k++) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    std::vector<double> values(d);
    for (size_t i = 0; i < d; i++) {
        values[i] = a(i, i).real();
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

double von_neumann_entropy(const DensityMatrix &rho) {
    double s = 0.0;
    for (double lambda : eigvalsh(rho.matrix())) {
        if (lambda < -kHermitianTol) {
            throw std::invalid_argument("density matrix has a negative eigenvalue");
        }
        if (lambda > kEntropyClip) {
            s -= lambda * std::log2(lambda);
        }
    }
    return s;
}

Matrix haar_unitary(size_t dim, Rng &rng) {
    Matrix u(dim);
    std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
    for (size_t c = 0; c < dim; c++) {
        auto &v = cols[c];
        for (Complex &e : v) {
            double re = rng.normal();
            double im = rng.normal();
            e = Complex(re, im);
        }
        // Modified Gram-Schmidt against the earlier columns.
        for (size_t k = 0; k < c; k++) {
            Complex proj{};
            for (size_t r = 0; r < dim; r++) {
                proj += std::conj(cols[k][r]) * v[r];
            }
            for (size_t r = 0; r < dim; r++) {
                v[r] -= proj * cols[k][r];
            }
        }
        double norm2 = 0.0;
        for (const Complex &e : v) {
            norm2 += std::norm(e);
        }
        double inv = 1.0 / std::sqrt(norm2);
        for (size_t r = 0; r < dim; r++) {
            v[r] *= inv;
            u(r, c) = v[r];
        }
    }
    return u;
}

}  // namespace qlock
