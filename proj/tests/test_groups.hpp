#pragma once

#include <vector>

#include "convchar/group.hpp"

namespace testing {

/// Groups used by the property sweeps, with their orders.
inline std::vector<convchar::FiniteAbelianGroup> groups_up_to(std::size_t max_order) {
    const std::vector<std::vector<int>> all = {
        {},     {1},       {2},    {3},    {4},    {5},    {6},    {7},    {8},       {2, 2},
        {2, 3}, {3, 2},    {9},    {3, 3}, {10},   {12},   {2, 6}, {4, 3}, {2, 2, 2}, {16},
        {4, 4}, {2, 2, 4}, {2, 8}, {7, 3}, {24},   {2, 3, 4}, {5, 5}, {6, 6}, {8, 8}, {64},
    };
    std::vector<convchar::FiniteAbelianGroup> out;
    for (const auto& f : all) {
        convchar::FiniteAbelianGroup g(f);
        if (g.order() <= max_order) out.push_back(g);
    }
    return out;
}

}  // namespace testing
