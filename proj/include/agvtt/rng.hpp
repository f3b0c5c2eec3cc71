/*
 * Copyright (C) 2026 The agvtt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#ifndef AGVTT__RNG_HPP
#define AGVTT__RNG_HPP

#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace agvtt {

/// Seeded random source. The standard distributions are implementation
/// defined, so bounded draws and shuffles are done here to keep seeded runs
/// reproducible across standard libraries.
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
  : _engine(seed)
  {
    // Do nothing
  }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n)
  {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max()
      - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t draw;
    do
    {
      draw = _engine();
    } while (draw >= limit);
    return draw % n;
  }

  template<typename T>
  void shuffle(std::vector<T>& items)
  {
    for (std::size_t i = items.size(); i > 1; --i)
      std::swap(items[i - 1], items[below(i)]);
  }

  template<typename T>
  const T& pick(const std::vector<T>& items)
  {
    return items[below(items.size())];
  }

private:
  std::mt19937_64 _engine;
};

} // namespace agvtt

#endif // AGVTT__RNG_HPP
