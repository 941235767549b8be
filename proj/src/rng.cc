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

#include "qlock/rng.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qlock {

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') {
        return c - '0';
    }
    if (c >= 'a' && c <= 'f') {
        return c - 'a' + 10;
    }
    if (c >= 'A' && c <= 'F') {
        return c - 'A' + 10;
    }
    return -1;
}

}  // namespace

Seed128 Seed128::from_hex(std::string_view text) {
    if (text.starts_with("0x") || text.starts_with("0X")) {
        text.remove_prefix(2);
    }
    if (text.empty() || text.size() > 32) {
        throw std::invalid_argument("seed must be 1 to 32 hex digits");
    }
    Seed128 seed;
    for (char c : text) {
        int v = hex_value(c);
        if (v < 0) {
            throw std::invalid_argument("seed contains a non-hex character: '" + std::string(1, c) + "'");
        }
        seed.hi = (seed.hi << 4) | (seed.lo >> 60);
        seed.lo = (seed.lo << 4) | static_cast<uint64_t>(v);
    }
    return seed;
}

std::string Seed128::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out(32, '0');
    for (int i = 0; i < 16; i++) {
        out[15 - i] = kDigits[(hi >> (4 * i)) & 0xF];
        out[31 - i] = kDigits[(lo >> (4 * i)) & 0xF];
    }
    return out;
}

Rng::Rng(uint64_t seed) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)};
    engine_.seed(seq);
}

Rng::Rng(const Seed128 &seed, StreamDomain domain, uint64_t stream) {
    std::seed_seq seq{
        static_cast<uint32_t>(seed.hi >> 32),
        static_cast<uint32_t>(seed.hi),
        static_cast<uint32_t>(seed.lo >> 32),
        static_cast<uint32_t>(seed.lo),
        static_cast<uint32_t>(domain),
        static_cast<uint32_t>(stream >> 32),
        static_cast<uint32_t>(stream),
    };
    engine_.seed(seq);
}

uint64_t Rng::below(uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("Rng::below requires a positive bound");
    }
    // Rejection sampling on the top of the range removes modulo bias.
    uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    while (true) {
        uint64_t r = engine_();
        if (r <= limit) {
            return r % bound;
        }
    }
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

}  // namespace qlock
