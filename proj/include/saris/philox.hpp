// SPDX-License-Identifier: Apache-2.0
//
// saris-sim: scattering-aware RIS channel simulator and optimizer
// Copyright (C) 2026 The saris-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SARIS_PHILOX_HPP
#define SARIS_PHILOX_HPP

#include <array>
#include <cstdint>
#include <string_view>

namespace saris {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
//
// Output block i of a stream is a pure function of (key, counter), so
// every (seed, realization, stream) triple owns an independent sequence.
class philox4x32 {
  public:
    using counter_type = std::array<std::uint32_t, 4>;
    using key_type = std::array<std::uint32_t, 2>;

    static constexpr std::string_view name = "philox4x32-10";

    static counter_type block(counter_type ctr, key_type key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }

  private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

// Sequential view of one Philox substream: key = seed, counter words
// = (block index, stream id, realization low, realization high).
class random_stream {
  public:
    random_stream(std::uint64_t seed, std::uint64_t realization, std::uint32_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          realization_(realization), stream_(stream) {}

    std::uint32_t next_u32() {
        if (used_ == 4) {
            buffer_ = philox4x32::block({block_++, stream_, static_cast<std::uint32_t>(realization_),
                                         static_cast<std::uint32_t>(realization_ >> 32)},
                                        key_);
            used_ = 0;
        }
        return buffer_[used_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double operator()() { return uniform(); }

  private:
    philox4x32::key_type key_;
    std::uint64_t realization_;
    std::uint32_t stream_;
    std::uint32_t block_ = 0;
    philox4x32::counter_type buffer_{};
    int used_ = 4;
};

} // namespace saris

#endif // SARIS_PHILOX_HPP
