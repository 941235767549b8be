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

#include "qlock/security.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "qlock/parallel.h"

namespace qlock {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// 2^n p_max without forming 2^n.
double scaled_pmax(size_t n, double p_max) {
    return std::exp2(static_cast<double>(n) + std::log2(p_max));
}

double log_20_d_over_eps(size_t n, double epsilon) {
    return std::log(20.0) + static_cast<double>(n) * kLn2 - std::log(epsilon);
}

TailBound make_bound(double exponent) {
    TailBound b;
    b.exponent = exponent;
    b.bound = exponent >= 0 ? 1.0 : std::exp(exponent);
    return b;
}

double entropy_bits(const std::vector<double> &dist) {
    double h = 0;
    for (double p : dist) {
        if (p > 0) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

StateVector encoded(const CliffordCircuit &circuit, const BitString &x) {
    StateVector psi = StateVector::basis(x);
    psi.apply(circuit);
    return psi;
}

void require_codebook_dense(const Codebook &codebook) { require_dense(codebook.num_qubits()); }

}  // namespace

PriorDistribution PriorDistribution::uniform(size_t n) {
    if (n == 0) {
        throw std::invalid_argument("prior needs at least one bit");
    }
    PriorDistribution p;
    p.n_ = n;
    p.uniform_ = true;
    return p;
}

PriorDistribution PriorDistribution::sparse(size_t n, std::vector<std::pair<BitString, double>> entries) {
    if (n == 0) {
        throw std::invalid_argument("prior needs at least one bit");
    }
    if (entries.empty()) {
        throw std::invalid_argument("prior has no entries");
    }
    std::set<std::string> seen;
    double total = 0;
    for (const auto &[x, p] : entries) {
        if (x.size() != n) {
            throw std::invalid_argument("prior entry " + x.str() + " has the wrong length");
        }
        if (!(p > 0) || !std::isfinite(p)) {
            throw std::invalid_argument("prior probabilities must be positive");
        }
        if (!seen.insert(x.str()).second) {
            throw std::invalid_argument("prior lists " + x.str() + " twice");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("prior probabilities sum to " + std::to_string(total));
    }
    PriorDistribution out;
    out.n_ = n;
    out.uniform_ = false;
    out.entries_ = std::move(entries);
    return out;
}

PriorDistribution PriorDistribution::uniform_subset(size_t n, uint64_t size) {
    if (n < 64 && size > (uint64_t{1} << n)) {
        throw std::invalid_argument("subset larger than the message space");
    }
    if (size == 0) {
        throw std::invalid_argument("prior has no entries");
    }
    std::vector<std::pair<BitString, double>> entries;
    for (uint64_t v = 0; v < size; v++) {
        entries.emplace_back(BitString::from_index(v, n), 1.0 / static_cast<double>(size));
    }
    return sparse(n, std::move(entries));
}

double PriorDistribution::p_max() const {
    if (uniform_) {
        return std::exp2(-static_cast<double>(n_));
    }
    double m = 0;
    for (const auto &e : entries_) {
        m = std::max(m, e.second);
    }
    return m;
}

double PriorDistribution::probability(const BitString &x) const {
    if (x.size() != n_) {
        throw std::invalid_argument("string length differs from the prior");
    }
    if (uniform_) {
        return std::exp2(-static_cast<double>(n_));
    }
    for (const auto &[y, p] : entries_) {
        if (y == x) {
            return p;
        }
    }
    return 0;
}

std::vector<std::pair<BitString, double>> PriorDistribution::support() const {
    if (!uniform_) {
        return entries_;
    }
    if (n_ > 30) {
        throw std::invalid_argument("uniform prior over " + std::to_string(n_) + " bits is too large to list");
    }
    std::vector<std::pair<BitString, double>> out;
    const uint64_t size = uint64_t{1} << n_;
    out.reserve(size);
    for (uint64_t v = 0; v < size; v++) {
        out.emplace_back(BitString::from_index(v, n_), 1.0 / static_cast<double>(size));
    }
    return out;
}

double PriorDistribution::shannon_bits() const {
    if (uniform_) {
        return static_cast<double>(n_);
    }
    std::vector<double> p;
    for (const auto &e : entries_) {
        p.push_back(e.second);
    }
    return entropy_bits(p);
}

double min_entropy(const PriorDistribution &prior) {
    if (prior.is_uniform()) {
        return static_cast<double>(prior.num_qubits());
    }
    return -std::log2(prior.p_max());
}

void SecurityParams::validate() const {
    if (n == 0) {
        throw std::invalid_argument("n must be positive");
    }
    if (!(epsilon > 0 && epsilon < 1)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    if (!(delta >= 0 && delta < 1)) {
        throw std::invalid_argument("delta must lie in [0, 1)");
    }
    if (!(p_max > 0 && p_max <= 1)) {
        throw std::invalid_argument("p_max must lie in (0, 1]");
    }
    if (!(M >= 1) || !std::isfinite(M)) {
        throw std::invalid_argument("M must be at least 1");
    }
    if (!(gamma >= 1) || !std::isfinite(gamma)) {
        throw std::invalid_argument("gamma must be at least 1");
    }
}

SecurityParams SecurityParams::from_prior(const PriorDistribution &prior, double epsilon, double delta,
                                          double gamma, std::optional<double> p_max) {
    SecurityParams params;
    params.n = prior.num_qubits();
    params.epsilon = epsilon;
    params.delta = delta;
    params.gamma = gamma;
    params.p_max = prior.p_max();
    params.M = std::exp2(static_cast<double>(params.n));
    if (p_max && std::abs(*p_max - params.p_max) > 1e-12 * std::max(1.0, params.p_max)) {
        throw std::invalid_argument("p_max disagrees with the prior");
    }
    params.validate();
    return params;
}

TailBound chernoff_p1(const SecurityParams &params, double K) {
    params.validate();
    const double n = static_cast<double>(params.n);
    const double ratio = 1.0 / scaled_pmax(params.n, params.p_max);
    return make_bound(n * kLn2 - K * (params.epsilon * params.epsilon / 4.0) * ratio);
}

TailBound maurer_p2(const SecurityParams &params, double K) {
    params.validate();
    const double eps = params.epsilon;
    // Factor 1/p_max out so the bracket is the one the key threshold sets to zero.
    const double bracket = 2.0 * scaled_pmax(params.n, params.p_max) * log_20_d_over_eps(params.n, eps) +
                           eps * std::log(params.M) / 4.0;
    return make_bound((bracket - K * eps * eps * eps / (128.0 * params.gamma)) / params.p_max);
}

const char *branch_name(ThresholdBranch b) { return b == ThresholdBranch::kChernoff ? "chernoff" : "maurer"; }

KeyThreshold key_threshold(const SecurityParams &params) {
    params.validate();
    const double n = static_cast<double>(params.n);
    const double eps = params.epsilon;
    const double log2_pmax = std::log2(params.p_max);
    KeyThreshold t;
    t.log2_chernoff = std::log2(4.0 * n * kLn2) + n + log2_pmax - 2.0 * std::log2(eps);
    t.chernoff = 4.0 * n * scaled_pmax(params.n, params.p_max) * kLn2 / (eps * eps);

    const double bracket =
        2.0 * scaled_pmax(params.n, params.p_max) * log_20_d_over_eps(params.n, eps) + eps * std::log(params.M) / 4.0;
    t.maurer = 128.0 * params.gamma / (eps * eps * eps) * bracket;
    t.log2_maurer = std::log2(128.0 * params.gamma) - 3.0 * std::log2(eps) + std::log2(bracket);
    t.binding = t.log2_maurer > t.log2_chernoff ? ThresholdBranch::kMaurer : ThresholdBranch::kChernoff;
    return t;
}

KeyLength key_length_bits(const SecurityParams &params) {
    KeyLength k;
    k.exact = key_threshold(params).log2_k_min();
    const double n = static_cast<double>(params.n);
    const double hmin = -std::log2(params.p_max);
    k.asymptotic = n - hmin + std::log2(params.gamma) + std::log2(n) + std::log2(1.0 / params.epsilon);
    return k;
}

ComparisonRows comparison_rows(double epsilon, size_t n) {
    if (n == 0) {
        throw std::invalid_argument("n must be positive");
    }
    if (!(epsilon > 0 && epsilon < 1)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    const double nd = static_cast<double>(n);
    return {2.0 * nd, nd + std::log2(nd) - 2.0 * std::log2(epsilon)};
}

Measurement::Measurement(std::string name, std::vector<Element> elements)
    : name_(std::move(name)), elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw std::invalid_argument("measurement has no outcomes");
    }
    dim_ = elements_[0].phi.dim();
    Matrix sum(dim_);
    for (const Element &e : elements_) {
        if (e.phi.dim() != dim_) {
            throw std::invalid_argument("measurement elements differ in dimension");
        }
        if (!(e.weight >= 0)) {
            throw std::invalid_argument("measurement weights must be non-negative");
        }
        for (size_t r = 0; r < dim_; r++) {
            for (size_t c = 0; c < dim_; c++) {
                sum(r, c) += e.weight * e.phi[r] * std::conj(e.phi[c]);
            }
        }
    }
    double err = sum.max_abs_diff(Matrix::identity(dim_));
    if (err > 1e-8) {
        throw std::invalid_argument("measurement is not complete (deviation " + std::to_string(err) + ")");
    }
}

Measurement Measurement::computational(size_t n) {
    require_dense(n);
    std::vector<Element> elements;
    for (uint64_t v = 0; v < (uint64_t{1} << n); v++) {
        elements.push_back({1.0, StateVector::basis(BitString::from_index(v, n))});
    }
    return Measurement("computational", std::move(elements));
}

Measurement Measurement::clifford_rotated(const CliffordCircuit &circuit, std::string name) {
    const size_t n = circuit.num_qubits();
    require_dense(n);
    std::vector<Element> elements;
    for (uint64_t v = 0; v < (uint64_t{1} << n); v++) {
        elements.push_back({1.0, encoded(circuit, BitString::from_index(v, n))});
    }
    return Measurement(std::move(name), std::move(elements));
}

Measurement Measurement::haar_basis(size_t n, Rng &rng, std::string name) {
    require_dense(n);
    const size_t d = size_t{1} << n;
    Matrix u = haar_unitary(d, rng);
    std::vector<Element> elements;
    for (size_t c = 0; c < d; c++) {
        std::vector<Complex> col(d);
        for (size_t r = 0; r < d; r++) {
            col[r] = u(r, c);
        }
        elements.push_back({1.0, StateVector(std::move(col))});
    }
    return Measurement(std::move(name), std::move(elements));
}

std::vector<Measurement> measurement_suite(size_t n, size_t random_count, Rng &rng) {
    std::vector<Measurement> out;
    out.push_back(Measurement::computational(n));
    for (size_t i = 0; i < random_count; i++) {
        if (i % 2 == 0) {
            out.push_back(Measurement::clifford_rotated(sample_uniform_clifford(n, rng), "clifford_" + std::to_string(i)));
        } else {
            out.push_back(Measurement::haar_basis(n, rng, "haar_" + std::to_string(i)));
        }
    }
    return out;
}

DensityMatrix conditional_state(const Codebook &codebook, const BitString &x) {
    require_codebook_dense(codebook);
    if (x.size() != codebook.num_qubits()) {
        throw std::invalid_argument("string length differs from the codebook");
    }
    const size_t d = size_t{1} << codebook.num_qubits();
    DensityMatrix rho = DensityMatrix::from_trusted(Matrix(d));
    const double w = 1.0 / static_cast<double>(codebook.size());
    for (const CliffordCircuit &c : codebook.circuits()) {
        rho.add_projector(encoded(c, x), w);
    }
    return rho;
}

Ensemble conditional_ensemble(const Codebook &codebook, const PriorDistribution &prior) {
    if (prior.num_qubits() != codebook.num_qubits()) {
        throw std::invalid_argument("prior and codebook disagree on n");
    }
    require_codebook_dense(codebook);
    Ensemble e;
    for (auto &[x, p] : prior.support()) {
        e.states.push_back(conditional_state(codebook, x));
        e.xs.push_back(std::move(x));
        e.probs.push_back(p);
    }
    return e;
}

DensityMatrix eve_state(const Codebook &codebook, const PriorDistribution &prior) {
    if (prior.num_qubits() != codebook.num_qubits()) {
        throw std::invalid_argument("prior and codebook disagree on n");
    }
    require_codebook_dense(codebook);
    const size_t d = size_t{1} << codebook.num_qubits();
    DensityMatrix rho = DensityMatrix::from_trusted(Matrix(d));
    const double inv_k = 1.0 / static_cast<double>(codebook.size());
    for (const auto &[x, p] : prior.support()) {
        for (const CliffordCircuit &c : codebook.circuits()) {
            rho.add_projector(encoded(c, x), p * inv_k);
        }
    }
    return DensityMatrix(rho.matrix());
}

namespace {

Matrix ensemble_average(const Ensemble &ensemble) {
    if (ensemble.states.empty() || ensemble.states.size() != ensemble.probs.size()) {
        throw std::invalid_argument("ensemble is empty or inconsistent");
    }
    const size_t d = ensemble.states[0].dim();
    Matrix avg(d);
    for (size_t i = 0; i < ensemble.states.size(); i++) {
        if (ensemble.states[i].dim() != d) {
            throw std::invalid_argument("ensemble states differ in dimension");
        }
        Matrix term = ensemble.states[i].matrix();
        term *= ensemble.probs[i];
        avg += term;
    }
    return avg;
}

}  // namespace

double holevo(const Ensemble &ensemble) {
    double chi = von_neumann_entropy(DensityMatrix(ensemble_average(ensemble)));
    for (size_t i = 0; i < ensemble.states.size(); i++) {
        chi -= ensemble.probs[i] * von_neumann_entropy(ensemble.states[i]);
    }
    return std::max(0.0, chi);
}

double measured_mi(const Measurement &measurement, const Ensemble &ensemble) {
    if (ensemble.states.empty() || ensemble.states.size() != ensemble.probs.size()) {
        throw std::invalid_argument("ensemble is empty or inconsistent");
    }
    const auto &elements = measurement.elements();
    std::vector<std::vector<double>> cond(ensemble.states.size(), std::vector<double>(elements.size()));
    std::vector<double> marginal(elements.size(), 0.0);
    for (size_t i = 0; i < ensemble.states.size(); i++) {
        if (ensemble.states[i].dim() != measurement.dim()) {
            throw std::invalid_argument("measurement and states differ in dimension");
        }
        for (size_t y = 0; y < elements.size(); y++) {
            double q = elements[y].weight * ensemble.states[i].expectation(elements[y].phi);
            cond[i][y] = std::max(0.0, q);
            marginal[y] += ensemble.probs[i] * cond[i][y];
        }
    }
    double mi = 0;
    for (size_t i = 0; i < ensemble.states.size(); i++) {
        double term = 0;
        for (size_t y = 0; y < elements.size(); y++) {
            if (cond[i][y] > 0 && marginal[y] > 0) {
                term += cond[i][y] * std::log2(cond[i][y] / marginal[y]);
            }
        }
        mi += ensemble.probs[i] * term;
    }
    return std::max(0.0, mi);
}

Codebook trial_codebook(const TrialSettings &settings, uint64_t K, uint64_t trial) {
    Rng rng(settings.seed, StreamDomain::kTrial, trial);
    Seed128 seed;
    seed.hi = rng.next_u64();
    seed.lo = rng.next_u64();
    return Codebook::build(settings.sampler, K, seed);
}

double eve_lambda_max(const Codebook &codebook, const PriorDistribution &prior) {
    return eigvalsh(eve_state(codebook, prior).matrix()).front();
}

ChernoffReport empirical_chernoff(uint64_t K, const PriorDistribution &prior, double epsilon,
                                  const TrialSettings &settings) {
    const size_t n = prior.num_qubits();
    if (settings.sampler.num_qubits != n) {
        throw std::invalid_argument("sampler and prior disagree on n");
    }
    require_dense(n);
    if (settings.trials == 0) {
        throw std::invalid_argument("need at least one trial");
    }
    SecurityParams params;
    params.n = n;
    params.epsilon = epsilon;
    params.p_max = prior.p_max();
    params.M = std::exp2(static_cast<double>(n));
    params.validate();

    ChernoffReport report;
    report.n = n;
    report.K = K;
    report.epsilon = epsilon;
    report.lambda_max.resize(settings.trials);
    report.empirical_epsilon.resize(settings.trials);
    const double d = std::exp2(static_cast<double>(n));
    parallel_for(settings.trials, settings.jobs, [&](size_t t) {
        double lambda = eve_lambda_max(trial_codebook(settings, K, t), prior);
        report.lambda_max[t] = lambda;
        report.empirical_epsilon[t] = lambda * d - 1.0;
    });
    for (double lambda : report.lambda_max) {
        report.violations += lambda > (1.0 + epsilon) / d;
    }
    report.frequency = static_cast<double>(report.violations) / static_cast<double>(settings.trials);
    report.p1 = chernoff_p1(params, static_cast<double>(K));
    return report;
}

MaurerReport empirical_maurer(uint64_t K, const BitString &x, const StateVector &phi, double tau, double gamma,
                              const TrialSettings &settings) {
    const size_t n = x.size();
    if (phi.num_qubits() != n || settings.sampler.num_qubits != n) {
        throw std::invalid_argument("x, phi and sampler disagree on n");
    }
    require_dense(n);
    if (!(tau >= 0 && tau < 1)) {
        throw std::invalid_argument("tau must lie in [0, 1)");
    }
    if (!(gamma >= 1)) {
        throw std::invalid_argument("gamma must be at least 1");
    }
    if (settings.trials == 0) {
        throw std::invalid_argument("need at least one trial");
    }
    MaurerReport report;
    report.n = n;
    report.K = K;
    report.tau = tau;
    report.gamma = gamma;
    report.values.resize(settings.trials);
    parallel_for(settings.trials, settings.jobs, [&](size_t t) {
        Codebook cb = trial_codebook(settings, K, t);
        double sum = 0;
        for (const CliffordCircuit &c : cb.circuits()) {
            sum += std::norm(phi.inner(encoded(c, x)));
        }
        report.values[t] = sum / static_cast<double>(K);
    });
    const double threshold = (1.0 - tau) * std::exp2(-static_cast<double>(n));
    for (double v : report.values) {
        report.tail_count += v < threshold;
    }
    const double trials = static_cast<double>(settings.trials);
    report.frequency = tau == 0 ? 0.0 : static_cast<double>(report.tail_count) / trials;
    report.bound = std::exp(-static_cast<double>(K) * tau * tau / (2.0 * gamma));
    report.sigma = std::sqrt(report.bound * (1.0 - report.bound) / trials);
    return report;
}

LockingReport locking_probe(const Codebook &codebook, const PriorDistribution &prior,
                            const std::vector<Measurement> &measurements) {
    Ensemble ensemble = conditional_ensemble(codebook, prior);
    DensityMatrix eve(ensemble_average(ensemble));
    LockingReport report;
    report.n = codebook.num_qubits();
    report.K = codebook.size();
    report.holevo = holevo(ensemble);
    report.eve_entropy = von_neumann_entropy(eve);
    for (const Measurement &m : measurements) {
        double mi = measured_mi(m, ensemble);
        report.measured.emplace_back(m.name(), mi);
        report.max_measured = std::max(report.max_measured, mi);
    }
    report.gap = report.holevo - report.max_measured;
    report.empirical_epsilon = eigvalsh(eve.matrix()).front() * std::exp2(static_cast<double>(report.n)) - 1.0;
    report.reference = 2.0 * static_cast<double>(report.n) * report.empirical_epsilon;
    return report;
}

}  // namespace qlock
