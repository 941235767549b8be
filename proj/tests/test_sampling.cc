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

#include "qlock/sampling.h"

#include <cmath>
#include <map>
#include <set>
#include <string>

#include "doctest.h"
#include "qlock/tableau.h"
#include "test_util.h"

using namespace qlock;

namespace {

// The tableau of C applied to |0...0> holds the images of every X_i and Z_i
// with signs, which identifies C up to global phase.
std::string canonical_key(const CliffordCircuit &c) {
    Tableau t(c.num_qubits());
    t.apply(c);
    return t.serialize();
}

double chi_square(const std::map<std::string, int> &counts, size_t classes, double draws) {
    double expected = draws / static_cast<double>(classes);
    double chi = 0.0;
    for (const auto &[key, count] : counts) {
        chi += (count - expected) * (count - expected) / expected;
    }
    chi += static_cast<double>(classes - counts.size()) * expected;
    return chi;
}

void check_uniform(const std::map<std::string, int> &counts, size_t classes, double draws) {
    double df = static_cast<double>(classes - 1);
    double chi = chi_square(counts, classes, draws);
    INFO("chi-square " << chi << " with " << df << " degrees of freedom");
    CHECK(counts.size() == classes);
    CHECK(chi < df + 5.0 * std::sqrt(2.0 * df));
    CHECK(chi > df - 5.0 * std::sqrt(2.0 * df));
}

}  // namespace

TEST_CASE("indexed construction enumerates each Clifford exactly once") {
    std::set<std::string> seen1;
    for (uint64_t s = 0; s < 6; s++) {
        for (uint64_t p = 0; p < 4; p++) {
            seen1.insert(canonical_key(clifford_from_index(1, s, p)));
        }
    }
    CHECK(seen1.size() == kSingleQubitCliffordCount);

    std::set<std::string> seen2;
    for (uint64_t s = 0; s < kTwoQubitSymplecticCount; s++) {
        for (uint64_t p = 0; p < kTwoQubitPauliCount; p++) {
            CliffordCircuit c = clifford_from_index(2, s, p);
            Tableau t(2);
            t.apply(c);
            REQUIRE(t.is_valid());
            seen2.insert(t.serialize());
        }
    }
    CHECK(seen2.size() == kTwoQubitCliffordCount);
    CHECK_THROWS_AS(clifford_from_index(2, kTwoQubitSymplecticCount, 0), std::invalid_argument);
    CHECK_THROWS_AS(clifford_from_index(3, 0, 0), std::invalid_argument);
}

TEST_CASE("two-qubit fragments are Clifford and invertible") {
    Rng rng(1);
    for (int i = 0; i < 200; i++) {
        CliffordCircuit c = sample_two_qubit_clifford(rng);
        REQUIRE(c.num_qubits() == 2);
        Tableau t(2);
        t.apply(c);
        CHECK(t.is_valid());
        t.apply(invert_circuit(c));
        CHECK(t == Tableau(2));
    }
}

TEST_CASE("two-qubit Clifford draws are uniform over 11520 classes") {
    Rng rng(2024);
    const int draws = 1000000;
    std::map<std::string, int> counts;
    for (int i = 0; i < draws; i++) {
        counts[canonical_key(sample_two_qubit_clifford(rng))]++;
    }
    check_uniform(counts, kTwoQubitCliffordCount, draws);
}

TEST_CASE("uniform Clifford sampler") {
    SUBCASE("n = 1 hits the 24 elements uniformly") {
        Rng rng(17);
        const int draws = 100000;
        std::map<std::string, int> counts;
        for (int i = 0; i < draws; i++) {
            counts[canonical_key(sample_uniform_clifford(1, rng))]++;
        }
        REQUIRE(counts.size() == 24);
        const double p = 1.0 / 24.0;
        const double sigma = std::sqrt(draws * p * (1 - p));
        for (const auto &[key, count] : counts) {
            CHECK(std::abs(count - draws * p) < 5.0 * sigma);
        }
    }
    SUBCASE("n = 2 is uniform over the full group") {
        Rng rng(18);
        const int draws = 300000;
        std::map<std::string, int> counts;
        for (int i = 0; i < draws; i++) {
            counts[canonical_key(sample_uniform_clifford(2, rng))]++;
        }
        check_uniform(counts, kTwoQubitCliffordCount, draws);
    }
    SUBCASE("n = 3 maps Z_0 to a uniform signed non-identity Pauli") {
        Rng rng(19);
        const int draws = 60000;
        std::map<std::string, int> counts;
        for (int i = 0; i < draws; i++) {
            Tableau t(3);
            t.apply(sample_uniform_clifford(3, rng));
            REQUIRE(t.is_valid());
            counts[t.stabilizer(0).str()]++;
        }
        check_uniform(counts, 2 * 63, draws);
    }
    SUBCASE("large registers stay valid") {
        Rng rng(20);
        Tableau t(40);
        t.apply(sample_uniform_clifford(40, rng));
        CHECK(t.is_valid());
    }
}

TEST_CASE("design circuit length and placement") {
    SamplerConfig cfg{4, 1.0 / 16.0, 1.0, SamplerMode::kApproxDesign};
    CHECK(design_length(cfg) == 32);
    Rng rng(3);
    auto fragments = sample_design_fragments(cfg, rng);
    CHECK(fragments.size() == 32);
    std::map<std::pair<uint32_t, uint32_t>, int> pairs;
    for (const auto &f : fragments) {
        std::set<uint32_t> touched;
        for (const Gate &g : f.gates()) {
            touched.insert(g.q0);
            if (gate_arity(g.kind) == 2) {
                touched.insert(g.q1);
            }
        }
        CHECK(touched.size() <= 2);
    }

    SamplerConfig wide{10, 0.01, 1.0, SamplerMode::kApproxDesign};
    CHECK(design_length(wide) == static_cast<size_t>(std::ceil(10.0 * (10.0 + std::log2(100.0)))));
    SamplerConfig half{4, 1.0 / 16.0, 0.5, SamplerMode::kApproxDesign};
    CHECK(design_length(half) == 16);

    Tableau t(10);
    t.apply(sample_design_circuit(wide, rng));
    CHECK(t.is_valid());
}

TEST_CASE("n = 1 design falls back to a single-qubit Clifford") {
    SamplerConfig cfg{1, 0.01, 1.0, SamplerMode::kApproxDesign};
    Rng rng(4);
    std::set<std::string> seen;
    for (int i = 0; i < 2000; i++) {
        CliffordCircuit c = sample_design_circuit(cfg, rng);
        CHECK(c.num_qubits() == 1);
        seen.insert(canonical_key(c));
    }
    CHECK(seen.size() == 24);
}

TEST_CASE("invalid sampler configurations are rejected") {
    Rng rng(5);
    CHECK_THROWS_AS(sample_design_circuit({4, 0.0, 1.0, SamplerMode::kApproxDesign}, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_design_circuit({4, 1.0, 1.0, SamplerMode::kApproxDesign}, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_design_circuit({4, 0.1, 0.0, SamplerMode::kApproxDesign}, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_design_circuit({2, 0.1, 1.0, SamplerMode::kSingleQubitExhaustive}, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_design_circuit({0, 0.1, 1.0, SamplerMode::kUniformClifford}, rng), std::invalid_argument);
}

TEST_CASE("derived circuits are deterministic per stream") {
    SamplerConfig cfg{6, 0.05, 1.0, SamplerMode::kApproxDesign};
    SeedContext a{Seed128::from_hex("0123456789abcdef0123456789abcdef"), 0};
    SeedContext b = a;
    b.stream_index = 1;
    CliffordCircuit c0 = derive_circuit(a, cfg);
    CHECK(derive_circuit(a, cfg).serialize() == c0.serialize());
    CHECK(derive_circuit(b, cfg).serialize() != c0.serialize());

    std::string text = c0.serialize();
    CHECK(CliffordCircuit::parse(text, 6).serialize() == text);
    CHECK(CliffordCircuit::parse(text, 6) == c0);

    SamplerConfig exhaustive{1, 0.5, 1.0, SamplerMode::kSingleQubitExhaustive};
    std::set<std::string> all;
    for (uint64_t k = 0; k < 24; k++) {
        all.insert(canonical_key(derive_circuit({a.master_seed, k}, exhaustive)));
    }
    CHECK(all.size() == 24);
}

TEST_CASE("circuit text format") {
    CliffordCircuit c = CliffordCircuit::parse("H 0; SDG 2; CNOT 0 3", 4);
    CHECK(c.size() == 3);
    CHECK(c.serialize() == "H 0; SDG 2; CNOT 0 3");
    CHECK(CliffordCircuit::parse("", 2).empty());
    CHECK_THROWS_AS(CliffordCircuit::parse("H 4", 4), std::invalid_argument);
    CHECK_THROWS_AS(CliffordCircuit::parse("CNOT 1 1", 4), std::invalid_argument);
    CHECK_THROWS_AS(CliffordCircuit::parse("T 0", 4), std::invalid_argument);
    CHECK_THROWS_AS(CliffordCircuit::parse("H 0;; S 1", 4), std::invalid_argument);
    CHECK_THROWS_AS(CliffordCircuit::parse("CZ 0", 4), std::invalid_argument);
}
