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

#include "qpc/hashperm.hpp"

#include <charconv>
#include <stdexcept>

namespace qpc {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.size() > kMaxBitStringLength) {
        throw std::invalid_argument("BitString longer than 2^24 bits");
    }
    for (auto& b : bits_) {
        if (b > 1) {
            throw std::invalid_argument("BitString entries must be 0 or 1");
        }
    }
}

BitString BitString::from_string(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        }
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return BitString(std::move(bits));
}

BitString BitString::from_uint(std::uint64_t value, std::size_t n) {
    if (n > 64) {
        throw std::invalid_argument("from_uint supports at most 64 bits");
    }
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) {
        bits[i] = static_cast<std::uint8_t>((value >> (n - 1 - i)) & 1U);
    }
    return BitString(std::move(bits));
}

BitString BitString::random(std::size_t n, Rng& rng) {
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) {
        b = static_cast<std::uint8_t>(rng.bit());
    }
    return BitString(std::move(bits));
}

BitString BitString::slice(std::size_t offset, std::size_t count) const {
    if (offset + count > bits_.size()) {
        throw std::out_of_range("BitString slice out of range");
    }
    return BitString(std::vector<std::uint8_t>(bits_.begin() + static_cast<std::ptrdiff_t>(offset),
                                               bits_.begin() + static_cast<std::ptrdiff_t>(offset + count)));
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) {
        s.push_back(static_cast<char>('0' + b));
    }
    return s;
}

std::uint64_t BitString::to_uint() const {
    if (bits_.size() > 64) {
        throw std::invalid_argument("to_uint supports at most 64 bits");
    }
    std::uint64_t v = 0;
    for (auto b : bits_) {
        v = (v << 1) | b;
    }
    return v;
}

PermKey PermKey::random(Rng& rng, int rounds) {
    const std::uint64_t hi = rng.next_u64();
    const std::uint64_t lo = rng.next_u64();
    return PermKey{hi, lo, rounds};
}

std::string PermKey::seed_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s(32, '0');
    for (int i = 0; i < 16; ++i) {
        s[static_cast<std::size_t>(15 - i)] = kDigits[(seed_hi >> (4 * i)) & 0xF];
        s[static_cast<std::size_t>(31 - i)] = kDigits[(seed_lo >> (4 * i)) & 0xF];
    }
    return s;
}

std::string PermKey::to_string() const {
    if (rounds == 0) {
        return "identity";
    }
    return seed_hex() + ":" + std::to_string(rounds);
}

PermKey PermKey::parse(std::string_view text) {
    if (text == "identity") {
        return identity();
    }
    std::string_view hex = text;
    int rounds = 4;
    if (auto colon = text.find(':'); colon != std::string_view::npos) {
        hex = text.substr(0, colon);
        auto r = text.substr(colon + 1);
        auto [ptr, ec] = std::from_chars(r.data(), r.data() + r.size(), rounds);
        if (ec != std::errc{} || ptr != r.data() + r.size() || rounds < 0 || rounds > 64) {
            throw std::invalid_argument("invalid round count in key: " + std::string(text));
        }
    }
    if (hex.size() != 32) {
        throw std::invalid_argument("key seed must be 32 hex characters");
    }
    PermKey key{0, 0, rounds};
    auto parse_half = [&](std::string_view h, std::uint64_t& out) {
        auto [ptr, ec] = std::from_chars(h.data(), h.data() + h.size(), out, 16);
        if (ec != std::errc{} || ptr != h.data() + h.size()) {
            throw std::invalid_argument("key seed must be hexadecimal");
        }
    };
    parse_half(hex.substr(0, 16), key.seed_hi);
    parse_half(hex.substr(16, 16), key.seed_lo);
    return key;
}

namespace {

// Keyed round function: a 64-bit digest of (key, round, source half),
// expanded into `out_len` pseudorandom bits by a counter stream.
std::vector<std::uint8_t> round_function(const PermKey& key, int round, const std::uint8_t* src, std::size_t src_len,
                                         std::size_t out_len) {
    std::uint64_t h = splitmix64(key.seed_hi ^ splitmix64(key.seed_lo + 0x51ED270B27F3A1C5ULL * (round + 1)));
    h = splitmix64(h ^ src_len);
    std::uint64_t word = 0;
    std::size_t filled = 0;
    for (std::size_t i = 0; i < src_len; ++i) {
        word = (word << 1) | src[i];
        if (++filled == 64) {
            h = splitmix64(h ^ word);
            word = 0;
            filled = 0;
        }
    }
    h = splitmix64(h ^ word ^ (static_cast<std::uint64_t>(filled) << 58));

    std::vector<std::uint8_t> out(out_len);
    std::uint64_t block = 0;
    for (std::size_t i = 0; i < out_len; ++i) {
        if (i % 64 == 0) {
            block = splitmix64(h + 0x9E3779B97F4A7C15ULL * (i / 64 + 1));
        }
        out[i] = static_cast<std::uint8_t>((block >> (i % 64)) & 1U);
    }
    return out;
}

void feistel_round(std::vector<std::uint8_t>& bits, std::size_t left_len, const PermKey& key, int round) {
    const std::size_t right_len = bits.size() - left_len;
    std::uint8_t* left = bits.data();
    std::uint8_t* right = bits.data() + left_len;
    if (round % 2 == 0) {
        auto f = round_function(key, round, right, right_len, left_len);
        for (std::size_t i = 0; i < left_len; ++i) {
            left[i] ^= f[i];
        }
    } else {
        auto f = round_function(key, round, left, left_len, right_len);
        for (std::size_t i = 0; i < right_len; ++i) {
            right[i] ^= f[i];
        }
    }
}

}  // namespace

BitString hash(const BitString& x, const PermKey& key) {
    if (x.empty()) {
        throw std::invalid_argument("hash: empty input");
    }
    std::vector<std::uint8_t> bits = x.bits();
    const std::size_t left_len = (bits.size() + 1) / 2;
    for (int r = 0; r < key.rounds; ++r) {
        feistel_round(bits, left_len, key, r);
    }
    return BitString(std::move(bits));
}

BitString invert(const BitString& y, const PermKey& key) {
    if (y.empty()) {
        throw std::invalid_argument("invert: empty input");
    }
    std::vector<std::uint8_t> bits = y.bits();
    const std::size_t left_len = (bits.size() + 1) / 2;
    for (int r = key.rounds - 1; r >= 0; --r) {
        feistel_round(bits, left_len, key, r);
    }
    return BitString(std::move(bits));
}

}  // namespace qpc
