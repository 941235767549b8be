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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qlock/cli.h"
#include "qlock/dense.h"
#include "qlock/design_metrics.h"
#include "qlock/parallel.h"
#include "qlock/protocol.h"
#include "qlock/sampling.h"
#include "qlock/security.h"
#include "qlock/tableau.h"

using namespace qlock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *format, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), format, a, b, c, d);
    return buf;
}

size_t worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

const Seed128 kSeed = Seed128::from_hex("a11ce5eed0000000000000000000c0de");

BitString random_bits(size_t n, Rng &rng) {
    BitString x(n);
    for (size_t q = 0; q < n; q++) {
        x.set(q, rng.bit());
    }
    return x;
}

std::vector<CliffordCircuit> single_qubit_cliffords() {
    std::vector<CliffordCircuit> all;
    for (uint64_t i = 0; i < kSingleQubitCliffordCount; i++) {
        all.push_back(clifford_from_index(1, i / 4, i % 4));
    }
    return all;
}

Outcome round_trip() {
    size_t failures = 0;
    Codebook small = Codebook::build(4, 8, 1.0 / 16, kSeed);
    Rng rng(kSeed, StreamDomain::kDecrypt, 1);
    for (uint64_t k = 0; k < 8; k++) {
        for (uint64_t v = 0; v < 16; v++) {
            BitString x = BitString::from_index(v, 4);
            Decryption d = decrypt(small, SecretKey{k}, encrypt(small, SecretKey{k}, x), rng);
            failures += !(d.deterministic && d.x == x);
        }
    }
    Codebook big = Codebook::build(64, 16, 0.01, kSeed, 1.0, worker_count());
    std::vector<uint8_t> bad(1000, 0);
    parallel_for(bad.size(), worker_count(), [&](size_t t) {
        Rng local(kSeed, StreamDomain::kTrial, t);
        SecretKey key = keygen(big.size(), local);
        BitString x = random_bits(64, local);
        Decryption d = decrypt(big, key, encrypt(big, key, x), local);
        bad[t] = !(d.deterministic && d.x == x);
    });
    for (uint8_t b : bad) {
        failures += b;
    }
    return {failures == 0, std::to_string(failures) + " failures over 128 exhaustive + 1000 fuzz"};
}

Outcome tableau_dense() {
    double worst = 0;
    Rng rng(kSeed, StreamDomain::kTrial, 2);
    for (size_t n = 2; n <= 6; n++) {
        for (int i = 0; i < 100; i++) {
            CliffordCircuit c = sample_uniform_clifford(n, rng);
            BitString x = random_bits(n, rng);
            BitString y = random_bits(n, rng);
            double tab = basis_overlap_prob(c, x, y);
            double dense = overlap_prob(StateVector::basis(y), c, StateVector::basis(x));
            worst = std::max(worst, std::abs(tab - dense));
        }
    }
    return {worst < 1e-10, fmt("max |tableau - dense| = %.3g", worst)};
}

Outcome exact_enumeration() {
    auto all = single_qubit_cliffords();
    auto [m1, m2] = exact_basis_moments(all, BitString::parse("0"), BitString::parse("0"));
    Rational gamma = m2 / (m1 * m1);
    Rational haar_gamma = Rational(4, 3);  // 2d/(d+1) at d = 2
    bool ok = m1 == Rational(1, 2) && m2 == Rational(1, 3) && gamma == haar_gamma && haar_moment(2, 2) == Rational(1, 3) &&
              haar_moment(1, 2) == Rational(1, 2);
    return {ok, "E|<0|C|0>|^2 = " + m1.str() + ", E|<0|C|0>|^4 = " + m2.str() + ", gamma = " + gamma.str() +
                    ", M_2(d=2) = " + haar_moment(2, 2).str()};
}

Outcome design_certification() {
    SamplerConfig cfg{2, 0.01, 1.0, SamplerMode::kApproxDesign};
    CircuitSampler sampler = [cfg](Rng &r) { return sample_design_circuit(cfg, r); };
    MomentProbe probe = MomentProbe::basis(BitString::parse("00"), BitString::parse("00"));
    MomentEstimate est = estimate_moments(sampler, probe, 100000, kSeed, worker_count());
    DesignCheck check = check_design(est, 0.01);
    bool ok = check.pass() && check.haar1 == 0.25 && std::abs(check.haar2 - 0.1) < 1e-15;
    return {ok, fmt("mean2 = %.6f +- %.1e (M1 = 1/4), mean4 = %.6f +- %.1e (M2 = 1/10)", est.mean2, est.stderr2,
                    est.mean4, est.stderr4)};
}

Outcome threshold_identities() {
    Rng rng(kSeed, StreamDomain::kTrial, 5);
    double worst1 = 0, worst2 = 0;
    for (int i = 0; i < 20; i++) {
        SecurityParams p;
        p.n = 1 + rng.below(4);
        const double n = static_cast<double>(p.n);
        p.epsilon = 0.01 + 0.49 * rng.uniform();
        p.p_max = std::exp2(-n * rng.uniform());
        p.M = std::exp2(n * rng.uniform());
        p.gamma = 1.0 + 2.0 * rng.uniform();
        const double eps = p.epsilon;
        double k1 = 4.0 * n * std::exp2(n) * p.p_max * std::numbers::ln2 / (eps * eps);
        double k2 = 128.0 * p.gamma / (eps * eps * eps) *
                    (std::exp2(n + 1) * p.p_max * std::log(20.0 * std::exp2(n) / eps) + eps * std::log(p.M) / 4.0);
        worst1 = std::max(worst1, std::abs(std::exp(chernoff_p1(p, k1).exponent) - 1.0));
        worst2 = std::max(worst2, std::abs(std::exp(maurer_p2(p, k2).exponent) - 1.0));
    }
    return {worst1 <= 1e-12 && worst2 <= 1e-12,
            fmt("max |P1 - 1| = %.2g, max |P2 - 1| = %.2g over 20 tuples", worst1, worst2)};
}

Outcome fig2_reproduction() {
    auto log2k = [](size_t n, double frac) {
        SecurityParams p;
        p.n = n;
        p.epsilon = 1e-8;
        p.p_max = std::exp2(-frac * static_cast<double>(n));
        p.M = std::exp2(static_cast<double>(n));
        p.gamma = gamma_bound(0.0);
        return key_length_bits(p).exact;
    };
    long long first_below = -1;
    bool stays = true;
    for (size_t n = 1; n <= 256; n++) {
        bool below = log2k(n, 1.0) < 2.0 * static_cast<double>(n);
        if (below && first_below < 0) {
            first_below = static_cast<long long>(n);
        }
        if (first_below >= 0 && !below) {
            stays = false;
        }
    }
    double d06 = log2k(128, 0.6) - log2k(128, 1.0);
    double d08 = log2k(128, 0.8) - log2k(128, 1.0);
    bool ok = first_below >= 40 && first_below <= 70 && stays && std::abs(d06 - 0.4 * 128) <= 2.0 &&
              std::abs(d08 - 0.2 * 128) <= 2.0;
    return {ok, fmt("first n below 2n: %.0f, ", static_cast<double>(first_below)) +
                    (stays ? "stays below up to 256" : "crosses back above") +
                    fmt("; offsets at n=128: %.2f (0.6n), %.2f (0.8n)", d06, d08)};
}

Outcome chernoff_concentration() {
    auto prior = PriorDistribution::uniform(3);
    SecurityParams p = SecurityParams::from_prior(prior, 0.1, 0.01, gamma_bound(0.01));
    uint64_t K = static_cast<uint64_t>(std::ceil(3 * 4.0 * 8.0 * std::exp2(-3.0) * std::numbers::ln2 / 0.01));
    TrialSettings settings{SamplerConfig{3, 0.01, 1.0, SamplerMode::kApproxDesign}, kSeed, 100, worker_count()};
    ChernoffReport r = empirical_chernoff(K, prior, 0.1, settings);
    double worst = *std::max_element(r.empirical_epsilon.begin(), r.empirical_epsilon.end());
    return {r.frequency <= 0.05 && K == static_cast<uint64_t>(std::ceil(key_threshold(p).chernoff)),
            fmt("K = %.0f, violation fraction %.3f over 100 codebooks, max empirical eps %.2g, P1 = %.4f",
                static_cast<double>(K), r.frequency, worst, r.p1.bound)};
}

Outcome maurer_tail() {
    auto [m1, m2] = exact_basis_moments(single_qubit_cliffords(), BitString::parse("0"), BitString::parse("0"));
    double gamma = (m2 / (m1 * m1)).value();
    BitString zero = BitString::parse("0");
    TrialSettings settings{SamplerConfig{1, 0.01, 1.0, SamplerMode::kUniformClifford}, kSeed, 10000, worker_count()};
    MaurerReport r = empirical_maurer(50, zero, StateVector::basis(zero), 0.5, gamma, settings);
    return {r.frequency <= r.bound + 3 * r.sigma,
            fmt("tail frequency %.4f vs bound %.4f + 3 sigma (%.4f), gamma %.6f", r.frequency, r.bound, 3 * r.sigma,
                gamma)};
}

Outcome locking_gap() {
    Codebook cb = Codebook::build(4, 16, 0.01, kSeed);
    Rng rng(kSeed, StreamDomain::kMeasurement, 9);
    LockingReport r = locking_probe(cb, PriorDistribution::uniform(4), measurement_suite(4, 20, rng));
    bool each_below = true;
    for (const auto &m : r.measured) {
        each_below = each_below && m.second < r.holevo;
    }
    Codebook all = Codebook::from_circuits(1, 0.5, kSeed, single_qubit_cliffords());
    Rng rng1(kSeed, StreamDomain::kMeasurement, 10);
    LockingReport flat = locking_probe(all, PriorDistribution::uniform(1), measurement_suite(1, 20, rng1));
    double flat_max = flat.max_measured;
    bool ok = r.holevo > 1.0 && each_below && flat_max <= 1e-12;
    return {ok, fmt("chi = %.4f bits (needs > 1), max measured MI %.4f over %.0f bases, n=1 exhaustive max MI %.1g",
                    r.holevo, r.max_measured, static_cast<double>(r.measured.size()), flat_max)};
}

Outcome determinism() {
    const std::string seed = "--seed=5eed5eed5eed5eed5eed5eed5eed5eed";
    std::vector<std::vector<std::string>> commands{
        {"keygen", "--K", "1000"},
        {"codebook", "--n", "5", "--K", "9"},
        {"moments", "--n", "2", "--samples", "20000", "--csv"},
        {"moments", "--n", "2", "--samples", "3000", "--vectors", "haar"},
        {"gamma", "--delta", "0.05", "--n", "2"},
        {"keylen", "--n", "48", "--eps", "1e-8", "--csv"},
        {"fig2", "--n", "10:130:10", "--hmin-frac", "1.0,0.8,0.6", "--csv"},
        {"verify-chernoff", "--n", "2", "--K", "12", "--trials", "20", "--csv"},
        {"verify-maurer", "--n", "1", "--K", "10", "--trials", "500", "--csv"},
        {"lock-probe", "--n", "3", "--K", "5", "--measurements", "6", "--csv"},
    };
    size_t mismatches = 0;
    for (auto args : commands) {
        args.push_back(seed);
        std::ostringstream a, b, c, err;
        int ra = dispatch(args, a, err);
        int rb = dispatch(args, b, err);
        args.push_back("--jobs");
        args.push_back("4");
        int rc = dispatch(args, c, err);
        if (ra != 0 || rb != 0 || rc != 0 || a.str() != b.str() || a.str() != c.str() || a.str().empty()) {
            mismatches++;
            std::printf("       determinism mismatch for %s\n", args[0].c_str());
        }
    }
    return {mismatches == 0,
            std::to_string(commands.size() - mismatches) + "/" + std::to_string(commands.size()) +
                " invocations byte-identical across repeats and --jobs 1/4"};
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        double time_limit;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria{
        {"round-trip correctness", 10, round_trip},
        {"tableau-dense equivalence", 30, tableau_dense},
        {"exact single-qubit design moments", 0, exact_enumeration},
        {"design certification n=2", 60, design_certification},
        {"bound-threshold identities", 0, threshold_identities},
        {"key length crossover", 1, fig2_reproduction},
        {"empirical Chernoff concentration", 300, chernoff_concentration},
        {"empirical Maurer tail", 60, maurer_tail},
        {"locking-gap witness", 120, locking_gap},
        {"CLI determinism", 0, determinism},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); i++) {
        const auto &c = criteria[i];
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = c.time_limit <= 0 || secs < c.time_limit;
        bool pass = o.pass && in_time;
        failed += !pass;
        std::string timing = fmt("%.2f s", secs);
        if (c.time_limit > 0) {
            timing += fmt(" / limit %.0f s", c.time_limit);
        }
        std::printf("%s %2zu %s: %s [%s]\n", pass ? "PASS" : "FAIL", i + 1, c.name, o.detail.c_str(),
                    timing.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
