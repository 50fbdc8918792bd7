// Copyright 2026 The qpc-sim Authors
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

// Keyed length-preserving bijection on n-bit strings.
//
// Both parties agree on one PermKey out of band and use it as the 1-to-1
// "hash" that turns their private values into the bit strings they compare.
// The construction is an alternating (unbalanced) Feistel network: the
// string is split into a left half of ceil(n/2) bits and a right half of
// floor(n/2) bits, and round r XORs a keyed function of one half into the
// other. Each round is an involution given the untouched half, so the whole
// map is a bijection for every n, including odd n and n = 1.

#ifndef QPC_HASHPERM_HPP
#define QPC_HASHPERM_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qpc/rng.hpp"

namespace qpc {

inline constexpr std::size_t kMaxBitStringLength = std::size_t{1} << 24;

class BitString {
  public:
    BitString() = default;
    explicit BitString(std::vector<std::uint8_t> bits);

    /// Parses a string of '0'/'1' characters, most significant first.
    static BitString from_string(std::string_view text);
    /// Low `n` bits of `value`, most significant bit first.
    static BitString from_uint(std::uint64_t value, std::size_t n);
    static BitString random(std::size_t n, Rng& rng);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    int operator[](std::size_t i) const { return bits_[i]; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    BitString slice(std::size_t offset, std::size_t count) const;
    std::string to_string() const;
    std::uint64_t to_uint() const;

    friend bool operator==(const BitString&, const BitString&) = default;

  private:
    std::vector<std::uint8_t> bits_;
};

struct PermKey {
    std::uint64_t seed_hi = 0;
    std::uint64_t seed_lo = 0;
    int rounds = 4;

    /// rounds = 0: the identity permutation, for pinning exact hash bits in tests.
    static PermKey identity() { return PermKey{0, 0, 0}; }
    static PermKey random(Rng& rng, int rounds = 4);

    /// 32 lowercase hex characters (seed only).
    std::string seed_hex() const;
    /// "<32 hex>:<rounds>", or "identity".
    std::string to_string() const;
    /// Accepts "identity", "<32 hex>" (4 rounds) or "<32 hex>:<rounds>".
    static PermKey parse(std::string_view text);

    friend bool operator==(const PermKey&, const PermKey&) = default;
};

BitString hash(const BitString& x, const PermKey& key);
BitString invert(const BitString& y, const PermKey& key);

}  // namespace qpc

#endif  // QPC_HASHPERM_HPP
