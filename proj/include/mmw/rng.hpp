// SPDX-License-Identifier: Apache-2.0
//
// mmw-inr: Monte Carlo interference analysis for mmWave cellular networks
// Copyright (C) 2026 The mmw-inr authors
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

#ifndef MMW_RNG_HPP
#define MMW_RNG_HPP

#include <cstdint>
#include <random>

namespace mmw
{

using RandomEngine = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Independent stream for (master_seed, stream_index). The engine is seeded
/// through std::seed_seq from four SplitMix64-mixed words, so the stream
/// depends only on the pair and never on the order streams are created in.
RandomEngine make_stream(std::uint64_t master_seed, std::uint64_t stream_index);

} // namespace mmw

#endif
