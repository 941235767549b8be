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

#include "qlock/bit_string.h"

#include <stdexcept>

namespace qlock {

BitString BitString::parse(std::string_view text) {
    BitString out(text.size());
    for (size_t i = 0; i < text.size(); i++) {
        if (text[i] == '1') {
            out.bits_[i] = 1;
        } else if (text[i] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1': " + std::string(text));
        }
    }
    return out;
}

BitString BitString::from_index(uint64_t value, size_t n) {
    if (n < 64 && (value >> n) != 0) {
        throw std::invalid_argument("index does not fit in the requested number of bits");
    }
    BitString out(n);
    for (size_t i = 0; i < n && i < 64; i++) {
        out.bits_[n - 1 - i] = (value >> i) & 1;
    }
    return out;
}

uint64_t BitString::to_index() const {
    if (bits_.size() > 64) {
        throw std::invalid_argument("bit string too long to convert to an index");
    }
    uint64_t v = 0;
    for (uint8_t b : bits_) {
        v = (v << 1) | b;
    }
    return v;
}

std::string BitString::str() const {
    std::string s(bits_.size(), '0');
    for (size_t i = 0; i < bits_.size(); i++) {
        if (bits_[i]) {
            s[i] = '1';
        }
    }
    return s;
}

}  // namespace qlock
