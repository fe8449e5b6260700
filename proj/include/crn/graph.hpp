#pragma once

#include <vector>

#include "crn/network.hpp"

namespace crn {

struct StructureSummary {
    Index n = 0;
    Index m = 0;
    Index d = 0;
    Index d_star = 0;
    int components = 0;      // r
    int terminal_sccs = 0;   // T
    bool weakly_reversible = false;
    Index rank_N = 0;
    Index codimension = 0;   // s* = n - rank N
    Index deficiency = 0;    // d - rank N - r
    bool one_terminal_per_component = false;
    bool zero_complex_present = false;
    bool zero_in_terminal = false;

    /// Complex partition into connected components; components and their
    /// members sorted by smallest complex index.
    std::vector<std::vector<int>> component_members;
    /// Terminal strongly connected components, same ordering rule.
    std::vector<std::vector<int>> terminal_members;
    /// Component index of every complex.
    std::vector<int> component_of;
};

StructureSummary structure(const ReactionNetwork& net);

/// Subnetwork obtained by removing the reactions outside supp(k); species
/// and complexes are retained (isolated nodes stay).
ReactionNetwork subnetwork(const ReactionNetwork& net, const RateAssignment& k);
ReactionNetwork subnetwork(const ReactionNetwork& net, const std::vector<bool>& keep);

}  // namespace crn
