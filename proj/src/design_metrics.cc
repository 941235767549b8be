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

#include "qlock/design_metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qlock/parallel.h"
#include "qlock/tableau.h"

namespace qlock {

namespace {

constexpr uint64_t kChunkSize = 4096;

__int128 gcd128(__int128 a, __int128 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

__int128 checked_mul(__int128 a, __int128 b) {
    __int128 out;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error("rational arithmetic overflowed 128 bits");
    }
    return out;
}

__int128 checked_add(__int128 a, __int128 b) {
    __int128 out;
    if (__builtin_add_overflow(a, b, &out)) {
        throw std::overflow_error("rational arithmetic overflowed 128 bits");
    }
    return out;
}

std::string int128_str(__int128 v) {
    if (v == 0) {
        return "0";
    }
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    std::string s;
    while (u > 0) {
        s += static_cast<char>('0' + static_cast<int>(u % 10));
        u /= 10;
    }
    if (neg) {
        s += '-';
    }
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace

Rational::Rational(__int128 n, __int128 d) : num(n), den(d) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator+(const Rational &o) const {
    __int128 g = gcd128(den, o.den);
    __int128 scale_a = o.den / g;
    __int128 scale_b = den / g;
    return {checked_add(checked_mul(num, scale_a), checked_mul(o.num, scale_b)), checked_mul(den, scale_a)};
}

Rational Rational::operator*(const Rational &o) const {
    Rational a(num, o.den);
    Rational b(o.num, den);
    return {checked_mul(a.num, b.num), checked_mul(a.den, b.den)};
}

Rational Rational::operator/(const Rational &o) const {
    return *this * Rational(o.den, o.num);
}

std::string Rational::str() const {
    return den == 1 ? int128_str(num) : int128_str(num) + "/" + int128_str(den);
}

Rational haar_moment(unsigned l, uint64_t d) {
    if (l < 1) {
        throw std::invalid_argument("moment order must be at least 1");
    }
    if (d < 2) {
        throw std::invalid_argument("dimension must be at least 2");
    }
    // l! (d-1)! / (l+d-1)! = l! / (d (d+1) ... (d+l-1))
    __int128 numerator = 1;
    __int128 denominator = 1;
    for (unsigned j = 0; j < l; j++) {
        numerator = checked_mul(numerator, j + 1);
        denominator = checked_mul(denominator, static_cast<__int128>(d) + j);
        Rational reduced(numerator, denominator);
        numerator = reduced.num;
        denominator = reduced.den;
    }
    return {numerator, denominator};
}

MomentProbe MomentProbe::basis(BitString alpha, BitString beta) {
    if (alpha.size() != beta.size() || alpha.size() == 0) {
        throw std::invalid_argument("basis probe needs two bit strings of equal positive length");
    }
    MomentProbe p;
    p.mode = VectorMode::kBasis;
    p.alpha_bits = std::move(alpha);
    p.beta_bits = std::move(beta);
    return p;
}

MomentProbe MomentProbe::haar(StateVector alpha, StateVector beta) {
    if (alpha.dim() != beta.dim()) {
        throw std::invalid_argument("probe vectors have different dimensions");
    }
    require_dense(alpha.num_qubits());
    MomentProbe p;
    p.mode = VectorMode::kHaar;
    p.alpha_state = std::move(alpha);
    p.beta_state = std::move(beta);
    return p;
}

MomentProbe MomentProbe::random_haar(size_t num_qubits, Rng &rng) {
    StateVector a = StateVector::haar_random(num_qubits, rng);
    StateVector b = StateVector::haar_random(num_qubits, rng);
    return haar(std::move(a), std::move(b));
}

size_t MomentProbe::num_qubits() const {
    return mode == VectorMode::kBasis ? alpha_bits.size() : alpha_state.num_qubits();
}

double MomentProbe::overlap(const CliffordCircuit &c) const {
    if (mode == VectorMode::kBasis) {
        return basis_overlap_prob(c, beta_bits, alpha_bits);
    }
    return overlap_prob(alpha_state, c, beta_state);
}

void MomentAccumulator::add(double p) {
    const double p2 = p * p;
    count++;
    sum2 += p;
    sum2_sq += p2;
    sum4 += p2;
    sum4_sq += p2 * p2;
}

void MomentAccumulator::merge(const MomentAccumulator &other) {
    count += other.count;
    sum2 += other.sum2;
    sum2_sq += other.sum2_sq;
    sum4 += other.sum4;
    sum4_sq += other.sum4_sq;
}

MomentEstimate MomentAccumulator::finish(uint64_t dim) const {
    if (count == 0) {
        throw std::invalid_argument("moment estimate needs at least one sample");
    }
    const double n = static_cast<double>(count);
    MomentEstimate est;
    est.dim = dim;
    est.samples = count;
    est.mean2 = sum2 / n;
    est.mean4 = sum4 / n;
    if (count > 1) {
        double var2 = std::max(0.0, (sum2_sq - n * est.mean2 * est.mean2) / (n - 1));
        double var4 = std::max(0.0, (sum4_sq - n * est.mean4 * est.mean4) / (n - 1));
        est.stderr2 = std::sqrt(var2 / n);
        est.stderr4 = std::sqrt(var4 / n);
    }
    return est;
}

MomentEstimate estimate_moments(const CircuitSampler &sampler, const MomentProbe &probe, uint64_t samples,
                                Rng &rng) {
    if (samples == 0) {
        throw std::invalid_argument("moment estimate needs at least one sample");
    }
    MomentAccumulator acc;
    for (uint64_t i = 0; i < samples; i++) {
        acc.add(probe.overlap(sampler(rng)));
    }
    return acc.finish(uint64_t{1} << probe.num_qubits());
}

MomentEstimate estimate_moments(const CircuitSampler &sampler, const MomentProbe &probe, uint64_t samples,
                                const Seed128 &seed, size_t jobs) {
    if (samples == 0) {
        throw std::invalid_argument("moment estimate needs at least one sample");
    }
    const size_t chunks = static_cast<size_t>((samples + kChunkSize - 1) / kChunkSize);
    std::vector<MomentAccumulator> partial(chunks);
    parallel_for(chunks, jobs, [&](size_t c) {
        Rng rng(seed, StreamDomain::kMoments, c);
        uint64_t begin = c * kChunkSize;
        uint64_t end = std::min<uint64_t>(samples, begin + kChunkSize);
        for (uint64_t i = begin; i < end; i++) {
            partial[c].add(probe.overlap(sampler(rng)));
        }
    });
    MomentAccumulator total;
    for (const auto &p : partial) {
        total.merge(p);
    }
    return total.finish(uint64_t{1} << probe.num_qubits());
}

MomentEstimate ensemble_moments(std::span<const CliffordCircuit> ensemble, const MomentProbe &probe) {
    MomentAccumulator acc;
    for (const CliffordCircuit &c : ensemble) {
        acc.add(probe.overlap(c));
    }
    MomentEstimate est = acc.finish(uint64_t{1} << probe.num_qubits());
    est.stderr2 = 0.0;
    est.stderr4 = 0.0;
    return est;
}

std::pair<Rational, Rational> exact_basis_moments(std::span<const CliffordCircuit> ensemble, const BitString &x,
                                                  const BitString &y) {
    if (ensemble.empty()) {
        throw std::invalid_argument("empty ensemble");
    }
    Rational sum2, sum4;
    for (const CliffordCircuit &c : ensemble) {
        if (auto s = basis_overlap_log2(c, x, y)) {
            sum2 = sum2 + Rational(1, static_cast<__int128>(1) << *s);
            sum4 = sum4 + Rational(1, static_cast<__int128>(1) << (2 * *s));
        }
    }
    Rational count(static_cast<__int128>(ensemble.size()), 1);
    return {sum2 / count, sum4 / count};
}

double gamma_of(const MomentEstimate &est) {
    if (!(est.mean2 > 0.0)) {
        throw std::domain_error("gamma is undefined when the first moment is zero");
    }
    return est.mean4 / (est.mean2 * est.mean2);
}

double gamma_stderr(const MomentEstimate &est) {
    const double m2 = est.mean2;
    const double d4 = est.stderr4 / (m2 * m2);
    const double d2 = 2.0 * est.mean4 * est.stderr2 / (m2 * m2 * m2);
    return std::sqrt(d4 * d4 + d2 * d2);
}

double gamma_bound(double delta) {
    if (!(delta >= 0.0 && delta < 1.0)) {
        throw std::invalid_argument("gamma bound needs 0 <= delta < 1");
    }
    return 2.0 * (1.0 + delta) / ((1.0 - delta) * (1.0 - delta));
}

DesignCheck check_design(const MomentEstimate &est, double delta, double z) {
    DesignCheck out;
    out.haar1 = haar_moment(1, est.dim).value();
    out.haar2 = haar_moment(2, est.dim).value();
    auto band = [&](double mean, double haar, double se, bool &pass, double &margin) {
        double lo = (1.0 - delta) * haar - z * se;
        double hi = (1.0 + delta) * haar + z * se;
        margin = std::min(mean - lo, hi - mean);
        pass = margin >= 0.0;
    };
    band(est.mean2, out.haar1, est.stderr2, out.pass1, out.margin1);
    band(est.mean4, out.haar2, est.stderr4, out.pass2, out.margin2);
    return out;
}

}  // namespace qlock
