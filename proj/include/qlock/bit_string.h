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

#ifndef QLOCK_BIT_STRING_H
#define QLOCK_BIT_STRING_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qlock {

/// Classical n-bit message. Character i of the text form is qubit i.
class BitString {
   public:
    BitString() = default;
    explicit BitString(size_t n) : bits_(n, 0) {}

    /// Throws std::invalid_argument on characters other than '0' and '1'.
    static BitString parse(std::string_view text);
    /// Bit i of the result is bit (n - 1 - i) of value, so the text form reads as binary.
    static BitString from_index(uint64_t value, size_t n);

    size_t size() const { return bits_.size(); }
    bool operator[](size_t i) const { return bits_[i] != 0; }
    void set(size_t i, bool v) { bits_[i] = v ? 1 : 0; }

    /// Inverse of from_index. Requires size() <= 64.
    uint64_t to_index() const;
    std::string str() const;

    bool operator==(const BitString &other) const = default;

   private:
    std::vector<uint8_t> bits_;
};

}  // namespace qlock

#endif
