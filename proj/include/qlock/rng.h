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

#ifndef QLOCK_RNG_H
#define QLOCK_RNG_H

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace qlock {

/// 128-bit master seed. Text form is exactly 32 lowercase hex digits.
struct Seed128 {
    uint64_t hi = 0;
    uint64_t lo = 0;

    /// Accepts 1..32 hex digits (left-padded with zeros). Throws std::invalid_argument otherwise.
    static Seed128 from_hex(std::string_view text);
    std::string to_hex() const;

    bool operator==(const Seed128 &other) const = default;
};

/// Stream domains keep generators derived from one master seed apart.
enum class StreamDomain : uint32_t {
    kCodebook = 1,
    kKeygen = 2,
    kDecrypt = 3,
    kTrial = 4,
    kMoments = 5,
    kMeasurement = 6,
};

/// Seedable generator with platform-independent output.
///
/// Backed by std::mt19937_64 seeded through std::seed_seq, both of which the
/// standard specifies bit-exactly. The distributions below are written out by
/// hand because the std:: distributions are implementation-defined.
class Rng {
   public:
    explicit Rng(uint64_t seed);
    Rng(const Seed128 &seed, StreamDomain domain, uint64_t stream);

    uint64_t next_u64() { return engine_(); }
    /// Uniform integer in [0, bound). bound must be positive.
    uint64_t below(uint64_t bound);
    bool bit() { return (engine_() >> 63) != 0; }
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal via the Box-Muller transform.
    double normal();

   private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qlock

#endif
