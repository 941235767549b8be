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

#include "qlock/protocol.h"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "qlock/parallel.h"

namespace qlock {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) {
        throw std::runtime_error("failed to format a floating-point value");
    }
    return std::string(buf, ptr);
}

template <typename T>
T parse_number(std::string_view token, std::string_view what) {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw std::invalid_argument("bad " + std::string(what) + " value '" + std::string(token) + "'");
    }
    return value;
}

std::string_view take_line(std::string_view &text) {
    size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    return line;
}

// Parses "key=value" with a fixed key.
std::string_view field(std::string_view token, std::string_view key) {
    if (!token.starts_with(key) || token.size() <= key.size() || token[key.size()] != '=') {
        throw std::invalid_argument("expected field '" + std::string(key) + "=' but found '" + std::string(token) +
                                    "'");
    }
    return token.substr(key.size() + 1);
}

std::vector<std::string_view> split_spaces(std::string_view line) {
    std::vector<std::string_view> out;
    while (!line.empty()) {
        size_t sp = line.find(' ');
        if (sp != 0) {
            out.push_back(line.substr(0, sp));
        }
        if (sp == std::string_view::npos) {
            break;
        }
        line.remove_prefix(sp + 1);
    }
    return out;
}

void validate_codebook_params(size_t n, uint64_t K, double delta) {
    if (n == 0) {
        throw std::invalid_argument("codebook needs at least one qubit");
    }
    if (K == 0) {
        throw std::invalid_argument("codebook needs at least one circuit");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
}

}  // namespace

unsigned key_bits(uint64_t K) {
    if (K == 0) {
        throw std::invalid_argument("K must be positive");
    }
    unsigned bits = 0;
    while (bits < 64 && (uint64_t{1} << bits) < K) {
        bits++;
    }
    return bits;
}

SecretKey keygen(uint64_t K, Rng &rng) {
    if (K == 0) {
        throw std::invalid_argument("K must be positive");
    }
    return SecretKey{rng.below(K)};
}

Codebook Codebook::build(size_t n, uint64_t K, double delta, const Seed128 &master_seed, double depth_factor,
                         size_t jobs) {
    validate_codebook_params(n, K, delta);
    return build(SamplerConfig{n, delta, depth_factor, SamplerMode::kApproxDesign}, K, master_seed, jobs);
}

Codebook Codebook::build(const SamplerConfig &cfg, uint64_t K, const Seed128 &master_seed, size_t jobs) {
    validate_codebook_params(cfg.num_qubits, K, cfg.delta);
    cfg.validate();
    Codebook cb;
    cb.n_ = cfg.num_qubits;
    cb.delta_ = cfg.delta;
    cb.seed_ = master_seed;
    cb.circuits_.resize(K);
    parallel_for(K, jobs, [&](size_t k) { cb.circuits_[k] = derive_circuit({master_seed, k}, cfg); });
    return cb;
}

Codebook Codebook::from_circuits(size_t n, double delta, const Seed128 &master_seed,
                                 std::vector<CliffordCircuit> circuits) {
    validate_codebook_params(n, circuits.size(), delta);
    for (const CliffordCircuit &c : circuits) {
        if (c.num_qubits() != n) {
            throw std::invalid_argument("codebook circuit width differs from n");
        }
    }
    Codebook cb;
    cb.n_ = n;
    cb.delta_ = delta;
    cb.seed_ = master_seed;
    cb.circuits_ = std::move(circuits);
    return cb;
}

const CliffordCircuit &Codebook::circuit(uint64_t k) const {
    if (k >= circuits_.size()) {
        throw std::invalid_argument("key " + std::to_string(k) + " out of range for K=" +
                                    std::to_string(circuits_.size()));
    }
    return circuits_[k];
}

std::string Codebook::serialize() const {
    std::string out = "QDLCB v1 n=" + std::to_string(n_) + " K=" + std::to_string(circuits_.size()) +
                      " delta=" + format_double(delta_) + " seed=" + seed_.to_hex() + "\n";
    for (size_t k = 0; k < circuits_.size(); k++) {
        out += std::to_string(k);
        out += ": ";
        out += circuits_[k].serialize();
        out += '\n';
    }
    return out;
}

Codebook Codebook::parse(std::string_view text) {
    auto header = split_spaces(take_line(text));
    if (header.size() != 6 || header[0] != "QDLCB" || header[1] != "v1") {
        throw std::invalid_argument("codebook header must read 'QDLCB v1 n=.. K=.. delta=.. seed=..'");
    }
    size_t n = parse_number<size_t>(field(header[2], "n"), "n");
    uint64_t K = parse_number<uint64_t>(field(header[3], "K"), "K");
    double delta = parse_number<double>(field(header[4], "delta"), "delta");
    std::string_view seed_hex = field(header[5], "seed");
    if (seed_hex.size() != 32) {
        throw std::invalid_argument("codebook seed must be 32 hex digits");
    }
    Seed128 seed = Seed128::from_hex(seed_hex);
    validate_codebook_params(n, K, delta);

    std::vector<CliffordCircuit> circuits;
    for (uint64_t k = 0; k < K; k++) {
        if (text.empty()) {
            throw std::invalid_argument("codebook ended after " + std::to_string(k) + " circuits");
        }
        std::string_view line = take_line(text);
        size_t colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw std::invalid_argument("codebook line missing ':'");
        }
        if (parse_number<uint64_t>(line.substr(0, colon), "circuit index") != k) {
            throw std::invalid_argument("codebook circuits out of order at index " + std::to_string(k));
        }
        circuits.push_back(CliffordCircuit::parse(line.substr(colon + 1), n));
    }
    while (!text.empty()) {
        if (!take_line(text).empty()) {
            throw std::invalid_argument("trailing content after codebook circuits");
        }
    }
    return from_circuits(n, delta, seed, std::move(circuits));
}

std::string CipherState::serialize() const {
    return "QDLCT v1 n=" + std::to_string(tableau.num_qubits()) + "\n" + tableau.serialize();
}

CipherState CipherState::parse(std::string_view text) {
    auto header = split_spaces(take_line(text));
    if (header.size() != 3 || header[0] != "QDLCT" || header[1] != "v1") {
        throw std::invalid_argument("cipher header must read 'QDLCT v1 n=<n>'");
    }
    size_t n = parse_number<size_t>(field(header[2], "n"), "n");
    CipherState c{Tableau::parse(text)};
    if (c.tableau.num_qubits() != n) {
        throw std::invalid_argument("cipher header and tableau disagree on n");
    }
    return c;
}

CipherState encrypt(const Codebook &codebook, const SecretKey &key, const BitString &x) {
    if (x.size() != codebook.num_qubits()) {
        throw std::invalid_argument("plaintext length " + std::to_string(x.size()) + " differs from n=" +
                                    std::to_string(codebook.num_qubits()));
    }
    CipherState c{Tableau::basis_state(x)};
    c.tableau.apply(codebook.circuit(key.k));
    return c;
}

Decryption decrypt(const Codebook &codebook, const SecretKey &key, const CipherState &cipher, Rng &rng) {
    const size_t n = codebook.num_qubits();
    if (cipher.num_qubits() != n) {
        throw std::invalid_argument("cipher width differs from the codebook");
    }
    Tableau t = cipher.tableau;
    t.apply(invert_circuit(codebook.circuit(key.k)));
    Decryption out{BitString(n), true};
    for (size_t q = 0; q < n; q++) {
        std::optional<bool> fixed = t.deterministic_outcome(q);
        bool bit;
        if (fixed) {
            bit = *fixed;
        } else {
            bit = rng.bit();
            out.deterministic = false;
            t.measure_postselect(q, bit);
        }
        out.x.set(q, bit);
    }
    return out;
}

}  // namespace qlock
