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

#include <gtest/gtest.h>

#include <set>

namespace qpc {
namespace {

TEST(BitString, RoundTrips) {
    const auto b = BitString::from_string("010011");
    EXPECT_EQ(b.size(), 6u);
    EXPECT_EQ(b.to_string(), "010011");
    EXPECT_EQ(b.to_uint(), 19u);
    EXPECT_EQ(BitString::from_uint(19, 6), b);
    EXPECT_EQ(b.slice(2, 3).to_string(), "001");
    EXPECT_THROW(BitString::from_string("01x"), std::invalid_argument);
}

TEST(Hash, IdentityKey) {
    const auto x = BitString::from_string("1100101");
    EXPECT_EQ(hash(x, PermKey::identity()), x);
    EXPECT_EQ(invert(x, PermKey::identity()), x);
}

TEST(Hash, BijectiveExhaustively) {
    Rng rng(11);
    for (std::size_t n = 1; n <= 12; ++n) {
        const PermKey key = PermKey::random(rng);
        std::set<std::uint64_t> seen;
        for (std::uint64_t v = 0; v < (1ULL << n); ++v) {
            seen.insert(hash(BitString::from_uint(v, n), key).to_uint());
        }
        EXPECT_EQ(seen.size(), 1ULL << n) << "n=" << n;
    }
}

TEST(Hash, InverseTableComposesToIdentity) {
    Rng rng(12);
    const PermKey key = PermKey::random(rng);
    std::vector<std::uint64_t> fwd(16);
    std::vector<std::uint64_t> back(16);
    for (std::uint64_t v = 0; v < 16; ++v) {
        fwd[v] = hash(BitString::from_uint(v, 4), key).to_uint();
        back[v] = invert(BitString::from_uint(v, 4), key).to_uint();
    }
    for (std::uint64_t v = 0; v < 16; ++v) {
        EXPECT_EQ(back[fwd[v]], v);
        EXPECT_EQ(fwd[back[v]], v);
    }
}

TEST(Hash, RandomRoundTrips) {
    Rng rng(13);
    for (int i = 0; i < 10000; ++i) {
        const auto x = BitString::random(1 + rng.below(40), rng);
        const auto key = PermKey::random(rng);
        ASSERT_EQ(invert(hash(x, key), key), x);
    }
}

TEST(Hash, BitAgreementIsBalanced) {
    Rng rng(14);
    const PermKey key = PermKey::random(rng);
    const std::size_t n = 8;
    const int pairs = 10000;
    std::vector<int> agree(n);
    for (int i = 0; i < pairs; ++i) {
        const auto hx = hash(BitString::random(n, rng), key);
        const auto hy = hash(BitString::random(n, rng), key);
        for (std::size_t j = 0; j < n; ++j) {
            agree[j] += hx[j] == hy[j];
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        EXPECT_NEAR(agree[j] / double(pairs), 0.5, 0.02) << "position " << j;
    }
}

TEST(Hash, PureFunctionOfInputAndKey) {
    const auto key = PermKey::parse("00112233445566778899aabbccddeeff");
    const auto x = BitString::from_string("10110");
    EXPECT_EQ(hash(x, key), hash(x, key));
    EXPECT_EQ(PermKey::parse(key.to_string()), key);
    EXPECT_THROW(hash(BitString{}, key), std::invalid_argument);
    EXPECT_THROW(PermKey::parse("zz"), std::invalid_argument);
}

}  // namespace
}  // namespace qpc
