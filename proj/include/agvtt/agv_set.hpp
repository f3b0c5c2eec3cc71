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

#ifndef AGVTT__AGV_SET_HPP
#define AGVTT__AGV_SET_HPP

#include <agvtt/time.hpp>

#include <bit>
#include <cstdint>
#include <vector>

namespace agvtt {

//==============================================================================
/// Set of AGV identifiers with constant-time membership. Ids below 64 live in
/// an inline word so the common small-fleet case never allocates. The storage
/// is kept canonical (no trailing zero words) so defaulted equality is exact.
class AgvSet
{
public:
  AgvSet() = default;
  explicit AgvSet(AgvId id) { insert(id); }

  bool contains(AgvId id) const
  {
    if (id < 64)
      return (_low >> id) & 1u;
    const std::size_t w = id / 64 - 1;
    return w < _high.size() && ((_high[w] >> (id % 64)) & 1u);
  }

  void insert(AgvId id)
  {
    if (id < 64)
    {
      _low |= std::uint64_t{1} << id;
      return;
    }
    const std::size_t w = id / 64 - 1;
    if (_high.size() <= w)
      _high.resize(w + 1, 0);
    _high[w] |= std::uint64_t{1} << (id % 64);
  }

  void erase(AgvId id)
  {
    if (id < 64)
    {
      _low &= ~(std::uint64_t{1} << id);
      return;
    }
    const std::size_t w = id / 64 - 1;
    if (w >= _high.size())
      return;
    _high[w] &= ~(std::uint64_t{1} << (id % 64));
    while (!_high.empty() && _high.back() == 0)
      _high.pop_back();
  }

  bool empty() const { return _low == 0 && _high.empty(); }

  /// True when the set is exactly {id}.
  bool only(AgvId id) const
  {
    if (id < 64)
      return _high.empty() && _low == (std::uint64_t{1} << id);
    return _low == 0 && _high.size() == id / 64
      && _high.back() == (std::uint64_t{1} << (id % 64));
  }

  std::size_t size() const
  {
    std::size_t n = static_cast<std::size_t>(std::popcount(_low));
    for (const auto w : _high)
      n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  template<typename F>
  void for_each(F&& f) const
  {
    visit_word(_low, 0, f);
    for (std::size_t i = 0; i < _high.size(); ++i)
      visit_word(_high[i], static_cast<AgvId>(64 * (i + 1)), f);
  }

  std::vector<AgvId> to_vector() const
  {
    std::vector<AgvId> out;
    for_each([&](AgvId id) { out.push_back(id); });
    return out;
  }

  friend bool operator==(const AgvSet&, const AgvSet&) = default;

private:
  template<typename F>
  static void visit_word(std::uint64_t word, AgvId base, F& f)
  {
    while (word != 0)
    {
      const int bit = std::countr_zero(word);
      f(static_cast<AgvId>(base + static_cast<AgvId>(bit)));
      word &= word - 1;
    }
  }

  std::uint64_t _low = 0;
  std::vector<std::uint64_t> _high;
};

} // namespace agvtt

#endif // AGVTT__AGV_SET_HPP
