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

#ifndef QLOCK_DENSE_H
#define QLOCK_DENSE_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qlock/bit_string.h"
#include "qlock/circuit.h"
#include "qlock/rng.h"

namespace qlock {

using Complex = std::complex<double>;

/// Largest register the dense routines accept: QLOCK_DENSE_CUTOFF if set, else 12.
size_t dense_cutoff();
/// Throws std::invalid_argument when num_qubits exceeds dense_cutoff().
void require_dense(size_t num_qubits);

/// Row-major square complex matrix.
class Matrix {
   public:
    Matrix() = default;
    explicit Matrix(size_t dim) : dim_(dim), data_(dim * dim) {}

    static Matrix identity(size_t dim);

    size_t dim() const { return dim_; }
    Complex &operator()(size_t r, size_t c) { return data_[r * dim_ + c]; }
    const Complex &operator()(size_t r, size_t c) const { return data_[r * dim_ + c]; }

    Matrix adjoint() const;
    Matrix operator*(const Matrix &rhs) const;
    Matrix &operator+=(const Matrix &rhs);
    Matrix &operator*=(double scale);
    Complex trace() const;
    /// Largest absolute entry of (this - other).
    double max_abs_diff(const Matrix &other) const;

   private:
    size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// Normalized n-qubit pure state. Index bit (n - 1 - q) holds qubit q, so the
/// basis state |x> sits at BitString::to_index().
class StateVector {
   public:
    StateVector() = default;
    /// Normalizes amps; throws if the dimension is not a power of two or the norm is zero.
    explicit StateVector(std::vector<Complex> amps);

    static StateVector basis(const BitString &x);
    /// Complex standard normal entries, normalized.
    static StateVector haar_random(size_t num_qubits, Rng &rng);

    size_t num_qubits() const { return n_; }
    size_t dim() const { return amps_.size(); }
    std::span<const Complex> amplitudes() const { return amps_; }
    std::span<Complex> amplitudes() { return amps_; }
    Complex operator[](size_t i) const { return amps_[i]; }

    void apply(const Gate &gate);
    void apply(const CliffordCircuit &circuit);
    /// <this|other>
    Complex inner(const StateVector &other) const;

   private:
    size_t n_ = 0;
    std::vector<Complex> amps_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
   public:
    DensityMatrix() = default;
    /// Validates Hermiticity and unit trace within 1e-9; throws std::invalid_argument otherwise.
    explicit DensityMatrix(Matrix m);

    static DensityMatrix pure(const StateVector &psi);
    static DensityMatrix maximally_mixed(size_t dim);
    /// Skips validation; for accumulators whose weights are known to sum to one.
    static DensityMatrix from_trusted(Matrix m);

    size_t dim() const { return m_.dim(); }
    const Matrix &matrix() const { return m_; }
    Complex operator()(size_t r, size_t c) const { return m_(r, c); }
    /// <phi|rho|phi>, real part.
    double expectation(const StateVector &phi) const;
    void add_projector(const StateVector &psi, double weight);

   private:
    Matrix m_;
};

/// Applies a gate to 2^n amplitudes in place.
void apply_gate(std::span<Complex> amps, size_t num_qubits, const Gate &gate);

/// Product of gate matrices in circuit order.
Matrix circuit_unitary(const CliffordCircuit &circuit);

/// |<alpha|U_C|beta>|^2
double overlap_prob(const StateVector &alpha, const CliffordCircuit &circuit, const StateVector &beta);

/// Eigenvalues of a Hermitian matrix in descending order (cyclic complex Jacobi).
/// Throws std::invalid_argument if the input is not Hermitian within 1e-9 and
/// std::runtime_error if 100 sweeps do not bring the off-diagonal norm below 1e-12.
std::vector<double> eigvalsh(const Matrix &m);

/// -sum lambda log2 lambda, with eigenvalues below 1e-12 treated as zero.
double von_neumann_entropy(const DensityMatrix &rho);

/// Haar-distributed unitary via Gram-Schmidt on a complex Gaussian matrix.
Matrix haar_unitary(size_t dim, Rng &rng);

}  // namespace qlock

#endif
