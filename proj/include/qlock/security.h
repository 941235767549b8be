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

#ifndef QLOCK_SECURITY_H
#define QLOCK_SECURITY_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlock/bit_string.h"
#include "qlock/dense.h"
#include "qlock/protocol.h"
#include "qlock/rng.h"
#include "qlock/sampling.h"

namespace qlock {

/// Plaintext prior p(x): either uniform over all 2^n strings or an explicit sparse list.
class PriorDistribution {
   public:
    static PriorDistribution uniform(size_t n);
    /// Throws std::invalid_argument unless every p > 0, the strings are distinct
    /// with length n, and the probabilities sum to 1 within 1e-9.
    static PriorDistribution sparse(size_t n, std::vector<std::pair<BitString, double>> entries);
    /// Uniform over the first `size` strings in index order.
    static PriorDistribution uniform_subset(size_t n, uint64_t size);

    size_t num_qubits() const { return n_; }
    bool is_uniform() const { return uniform_; }
    double p_max() const;
    double probability(const BitString &x) const;
    /// Explicit (x, p) list; uniform priors are expanded, so n must be at most 30.
    std::vector<std::pair<BitString, double>> support() const;
    /// Shannon entropy H(X) in bits.
    double shannon_bits() const;

   private:
    size_t n_ = 0;
    bool uniform_ = true;
    std::vector<std::pair<BitString, double>> entries_;
};

/// -log2 max_x p(x).
double min_entropy(const PriorDistribution &prior);

/// Parameters of the tail bounds and key threshold. All fields are plain numbers;
/// M and p_max may be astronomically large or small, they are used in log form.
struct SecurityParams {
    size_t n = 1;
    double epsilon = 0.1;
    double delta = 0.01;
    double p_max = 0.5;
    double M = 2.0;
    double gamma = 2.0;

    /// Throws std::invalid_argument if any field is out of range.
    void validate() const;
    /// Takes p_max from the prior (and M = 2^n). An explicit p_max must match the prior within 1e-12.
    static SecurityParams from_prior(const PriorDistribution &prior, double epsilon, double delta, double gamma,
                                     std::optional<double> p_max = std::nullopt);
};

struct TailBound {
    /// Natural-log exponent; positive values mean the bound is vacuous.
    double exponent = 0;
    /// exp(exponent) clamped to [0, 1].
    double bound = 1;
};

/// exp{n ln2 - K (eps^2/4)(2^-n/p_max)}
TailBound chernoff_p1(const SecurityParams &params, double K);
/// exp{2d ln(20 2^n/eps) + eps lnM/(4 p_max) - K eps^3/(128 gamma p_max)}, d = 2^n.
TailBound maurer_p2(const SecurityParams &params, double K);

enum class ThresholdBranch { kChernoff, kMaurer };
const char *branch_name(ThresholdBranch b);

struct KeyThreshold {
    double chernoff = 0;
    double maurer = 0;
    /// log2 of each branch, exact even when the branch itself overflows.
    double log2_chernoff = 0;
    double log2_maurer = 0;
    ThresholdBranch binding = ThresholdBranch::kChernoff;

    double k_min() const { return binding == ThresholdBranch::kChernoff ? chernoff : maurer; }
    double log2_k_min() const { return binding == ThresholdBranch::kChernoff ? log2_chernoff : log2_maurer; }
};

/// Smallest K making both tail exponents non-positive.
KeyThreshold key_threshold(const SecurityParams &params);

struct KeyLength {
    double exact = 0;
    /// n - H_min + log2 gamma + log2 n + log2(1/eps): both hidden constants set to 1.
    double asymptotic = 0;
};
KeyLength key_length_bits(const SecurityParams &params);

struct ComparisonRows {
    double qotp = 0;
    double approx_otp = 0;
};
/// Quantum one-time pad (2n) and approximate one-time pad (n + log2 n + log2(1/eps^2)) key sizes.
ComparisonRows comparison_rows(double epsilon, size_t n);

/// Unit-rank POVM {alpha_y |phi_y><phi_y|}.
class Measurement {
   public:
    struct Element {
        double weight = 1;
        StateVector phi;
    };

    /// Throws std::invalid_argument if the elements do not sum to the identity within 1e-8.
    Measurement(std::string name, std::vector<Element> elements);

    static Measurement computational(size_t n);
    /// Basis {C|y>}.
    static Measurement clifford_rotated(const CliffordCircuit &circuit, std::string name = "clifford");
    /// Columns of a Haar-random unitary.
    static Measurement haar_basis(size_t n, Rng &rng, std::string name = "haar");

    const std::string &name() const { return name_; }
    size_t dim() const { return dim_; }
    const std::vector<Element> &elements() const { return elements_; }

   private:
    std::string name_;
    size_t dim_ = 0;
    std::vector<Element> elements_;
};

/// Computational basis, then alternating random Clifford-rotated and Haar bases, `random_count` in total.
std::vector<Measurement> measurement_suite(size_t n, size_t random_count, Rng &rng);

/// Prior-weighted family of conditional states rho_E^x.
struct Ensemble {
    std::vector<BitString> xs;
    std::vector<double> probs;
    std::vector<DensityMatrix> states;
};

/// (1/K) sum_k sum_x p(x) C_k|x><x|C_k^dagger
DensityMatrix eve_state(const Codebook &codebook, const PriorDistribution &prior);
/// (1/K) sum_k C_k|x><x|C_k^dagger
DensityMatrix conditional_state(const Codebook &codebook, const BitString &x);
/// Conditional states for every x in the prior support.
Ensemble conditional_ensemble(const Codebook &codebook, const PriorDistribution &prior);

/// S(sum p rho_x) - sum p S(rho_x), in bits.
double holevo(const Ensemble &ensemble);
/// I(X;Y) in bits for the outcome distribution p(y|x) = alpha_y <phi_y|rho_x|phi_y>.
double measured_mi(const Measurement &measurement, const Ensemble &ensemble);

/// Trials build one codebook each from Rng(seed, kTrial, trial); results do not depend on jobs.
struct TrialSettings {
    SamplerConfig sampler;
    Seed128 seed;
    size_t trials = 1;
    size_t jobs = 1;
};

/// Codebook used by a given trial.
Codebook trial_codebook(const TrialSettings &settings, uint64_t K, uint64_t trial);

struct ChernoffReport {
    size_t n = 0;
    uint64_t K = 0;
    double epsilon = 0;
    std::vector<double> lambda_max;
    /// lambda_max 2^n - 1 per trial.
    std::vector<double> empirical_epsilon;
    size_t violations = 0;
    double frequency = 0;
    TailBound p1;
};

/// Largest eigenvalue of the codebook's Eve state.
double eve_lambda_max(const Codebook &codebook, const PriorDistribution &prior);
/// Violations of rho_E <= (1 + eps) 2^-n I over sampled codebooks.
ChernoffReport empirical_chernoff(uint64_t K, const PriorDistribution &prior, double epsilon,
                                  const TrialSettings &settings);

struct MaurerReport {
    size_t n = 0;
    uint64_t K = 0;
    double tau = 0;
    double gamma = 0;
    /// <phi|rho_E^x|phi> per trial.
    std::vector<double> values;
    /// Trials with value < (1 - tau) 2^-n.
    size_t tail_count = 0;
    /// tail_count / trials, or 0 when tau = 0.
    double frequency = 0;
    /// exp(-K tau^2 / (2 gamma))
    double bound = 0;
    /// Binomial standard deviation of the frequency at the bound.
    double sigma = 0;
};

/// Lower-tail frequency of <phi|rho_E^x|phi> < (1 - tau) 2^-n over sampled codebooks. The key
/// threshold's Maurer branch corresponds to tau = eps / 4.
MaurerReport empirical_maurer(uint64_t K, const BitString &x, const StateVector &phi, double tau, double gamma,
                              const TrialSettings &settings);

struct LockingReport {
    size_t n = 0;
    uint64_t K = 0;
    double holevo = 0;
    double eve_entropy = 0;
    std::vector<std::pair<std::string, double>> measured;
    double max_measured = 0;
    /// holevo - max_measured
    double gap = 0;
    /// lambda_max 2^n - 1 of the codebook's Eve state.
    double empirical_epsilon = 0;
    /// 2 n empirical_epsilon
    double reference = 0;
};

LockingReport locking_probe(const Codebook &codebook, const PriorDistribution &prior,
                            const std::vector<Measurement> &measurements);

}  // namespace qlock

#endif
