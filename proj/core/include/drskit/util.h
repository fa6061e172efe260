// Copyright 2026 The drskit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DRSKIT_UTIL_H_
#define DRSKIT_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drskit {

// Decodes UTF-8 into code points. Invalid bytes decode to U+FFFD one byte
// at a time, so every input has a defined character sequence.
std::u32string DecodeUtf8(std::string_view text);

// Number of code points in `text`.
size_t CharLength(std::string_view text);

// 64-bit FNV-1a.
uint64_t Fnv1a(std::string_view data, uint64_t basis = 0xcbf29ce484222325ULL);

// SplitMix64 finalizer; used to derive independent seeds.
uint64_t Mix64(uint64_t x);

// Seed for a named substream, e.g. (global seed, document id, round).
uint64_t DeriveSeed(uint64_t seed, std::string_view key, uint64_t salt = 0);

// Hex rendering of a 64-bit digest.
std::string HexDigest(uint64_t value);

// Deterministic random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the distributions below are written
// out here because the standard library ones are implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be positive.
  uint64_t Uniform(uint64_t bound);

  // Uniform real in [0, 1).
  double UniformReal();

  // Index drawn proportionally to `weights` (non-negative, not all zero).
  size_t Weighted(std::span<const double> weights);

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = Uniform(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index runs
// exactly once; callers write results into pre-sized slots.
void ParallelFor(size_t n, int workers, const std::function<void(size_t)>& fn);

// Writes `contents` to `path` via a temporary file and rename.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents);

std::string ReadFile(const std::filesystem::path& path);

}  // namespace drskit

#endif  // DRSKIT_UTIL_H_
