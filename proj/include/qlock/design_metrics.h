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

#ifndef QLOCK_DESIGN_METRICS_H
#define QLOCK_DESIGN_METRICS_H

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "qlock/bit_string.h"
#include "qlock/circuit.h"
#include "qlock/dense.h"
#include "qlock/rng.h"

namespace qlock {

/// Exact fraction in lowest terms with a positive denominator.
struct Rational {
    __int128 num = 0;
    __int128 den = 1;

    Rational() = default;
    Rational(__int128 n, __int128 d);

    Rational operator+(const Rational &o) const;
    Rational operator*(const Rational &o) const;
    Rational operator/(const Rational &o) const;
    bool operator==(const Rational &o) const { return num == o.num && den == o.den; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
};

/// Haar moment M_l = l! (d-1)! / (l+d-1)! = E|<a|U|b>|^(2l). Throws
/// std::invalid_argument unless l >= 1 and d >= 2, std::overflow_error if the
/// exact value does not fit in 128 bits.
Rational haar_moment(unsigned l, uint64_t d);

enum class VectorMode { kBasis, kHaar };

/// The fixed pair (alpha, beta) whose overlap |<alpha|C|beta>|^2 is sampled.
struct MomentProbe {
    VectorMode mode = VectorMode::kBasis;
    BitString alpha_bits;
    BitString beta_bits;
    StateVector alpha_state;
    StateVector beta_state;

    static MomentProbe basis(BitString alpha, BitString beta);
    static MomentProbe haar(StateVector alpha, StateVector beta);
    /// Draws alpha and beta once from the Haar measure.
    static MomentProbe random_haar(size_t num_qubits, Rng &rng);

    size_t num_qubits() const;
    double overlap(const CliffordCircuit &c) const;
};

struct MomentEstimate {
    uint64_t dim = 0;
    double mean2 = 0.0;
    double mean4 = 0.0;
    double stderr2 = 0.0;
    double stderr4 = 0.0;
    uint64_t samples = 0;
};

/// Running sums of p and p^2 where p = |<alpha|C|beta>|^2.
struct MomentAccumulator {
    uint64_t count = 0;
    double sum2 = 0.0;
    double sum2_sq = 0.0;
    double sum4 = 0.0;
    double sum4_sq = 0.0;

    void add(double p);
    void merge(const MomentAccumulator &other);
    MomentEstimate finish(uint64_t dim) const;
};

using CircuitSampler = std::function<CliffordCircuit(Rng &)>;

/// Monte-Carlo means of |<alpha|C|beta>|^2 and ^4 with standard errors.
/// Throws std::invalid_argument for zero samples.
MomentEstimate estimate_moments(const CircuitSampler &sampler, const MomentProbe &probe, uint64_t samples, Rng &rng);

/// Same estimator split into fixed chunks with one generator per chunk; the
/// result is independent of `jobs`.
MomentEstimate estimate_moments(const CircuitSampler &sampler, const MomentProbe &probe, uint64_t samples,
                                const Seed128 &seed, size_t jobs);

/// Averages over an explicit ensemble, each element weighted once. stderr is zero.
MomentEstimate ensemble_moments(std::span<const CliffordCircuit> ensemble, const MomentProbe &probe);

/// Exact rational E|<y|C|x>|^2 and E|<y|C|x>|^4 over an ensemble, from tableau overlaps.
std::pair<Rational, Rational> exact_basis_moments(std::span<const CliffordCircuit> ensemble, const BitString &x,
                                                  const BitString &y);

/// gamma = mean4 / mean2^2. Throws std::domain_error when mean2 is zero.
double gamma_of(const MomentEstimate &est);
/// First-order propagated standard error of gamma_of.
double gamma_stderr(const MomentEstimate &est);

/// 2(1 + delta) / (1 - delta)^2; throws std::invalid_argument unless 0 <= delta < 1.
double gamma_bound(double delta);

struct DesignCheck {
    double haar1 = 0.0;
    double haar2 = 0.0;
    bool pass1 = false;
    bool pass2 = false;
    /// Distance from the estimate to the nearest edge of its acceptance band;
    /// negative when outside.
    double margin1 = 0.0;
    double margin2 = 0.0;

    bool pass() const { return pass1 && pass2; }
};

/// mean_l must lie in [(1 - delta) M_l - z stderr_l, (1 + delta) M_l + z stderr_l] for l = 1, 2.
DesignCheck check_design(const MomentEstimate &est, double delta, double z = 3.0);

}  // namespace qlock

#endif
