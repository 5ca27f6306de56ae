/*
 * Copyright 2026 The cmpg Authors
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
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace cmpg {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;

/**
 * Subset of the states of a fixed game, stored as a membership vector.
 * Iteration (members()) follows the canonical state order.
 */
class StateSet
{
  public:
    StateSet() = default;
    explicit StateSet(std::size_t universe, bool full = false) : bits_(universe, full) {}
    StateSet(std::size_t universe, std::initializer_list<StateId> ids) : bits_(universe, false)
    {
        for (StateId s : ids) bits_.at(s) = true;
    }

    static StateSet full(std::size_t universe) { return StateSet(universe, true); }
    static StateSet empty(std::size_t universe) { return StateSet(universe, false); }

    std::size_t universe() const { return bits_.size(); }
    bool contains(StateId s) const { return bits_[s]; }
    void insert(StateId s) { bits_[s] = true; }
    void erase(StateId s) { bits_[s] = false; }

    std::size_t size() const
    {
        std::size_t count = 0;
        for (bool b : bits_) count += b;
        return count;
    }
    bool is_empty() const { return size() == 0; }

    bool subset_of(const StateSet& other) const
    {
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            if (bits_[i] && !other.bits_[i]) return false;
        }
        return true;
    }

    StateSet complement() const
    {
        StateSet out(bits_.size());
        for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = !bits_[i];
        return out;
    }

    StateSet operator&(const StateSet& other) const
    {
        StateSet out(bits_.size());
        for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] && other.bits_[i];
        return out;
    }

    StateSet operator|(const StateSet& other) const
    {
        StateSet out(bits_.size());
        for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] || other.bits_[i];
        return out;
    }

    /// this \ other
    StateSet operator-(const StateSet& other) const
    {
        StateSet out(bits_.size());
        for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] && !other.bits_[i];
        return out;
    }

    std::vector<StateId> members() const
    {
        std::vector<StateId> out;
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            if (bits_[i]) out.push_back(static_cast<StateId>(i));
        }
        return out;
    }

    bool operator==(const StateSet& other) const = default;

  private:
    std::vector<bool> bits_;
};

} // namespace cmpg
