#pragma once

#include <map>
#include <vector>

#include "layervec/geometry.hpp"

namespace layervec {

enum class PairSelection { Auto, AllPairs, AdjacentOnly };

struct DepthEdge {
    int from = 0;  // layer above
    int to = 0;    // layer below
    double d = 0;  // depth energy that produced the edge (0 for subset shortcuts)
    bool removed = false;
};

struct RemovedEdge {
    int from = 0, to = 0;
    long v = 0;  // hull symmetric difference used to break the cycle
};

struct DepthGraph {
    int node_count = 0;
    std::vector<DepthEdge> edges;
    std::vector<RemovedEdge> removed;
    std::map<std::pair<int, int>, long> v_cache;

    std::vector<std::vector<int>> successors() const;  // ignores removed edges
    bool has_cycle() const;
};

struct DepthOrdering {
    std::vector<int> rank;  // layer id -> depth rank, 0 = topmost
};

/// Builds the pairwise depth graph: for every selected pair the subset
/// shortcut is tried first (either direction), otherwise the thresholded
/// depth energy decides. Auto selection compares all pairs up to 64 layers
/// and only boundary-sharing pairs above that.
DepthGraph build_graph(const LayerSet& set, double delta, PairSelection pairs, HullCache& hulls);

/// Removes one edge per discovered cycle, the one with the largest hull
/// symmetric difference V (ties to the lexicographically smallest (from,to)),
/// until the graph is acyclic. Removed edges are logged.
void break_cycles(DepthGraph& g, const LayerSet& set, HullCache& hulls);

/// Kahn topological sort; sources (nothing above them) come out first, ties
/// broken smaller-area-first, then by id. Throws StageError on cycles.
DepthOrdering topo_sort(const DepthGraph& g, const LayerSet& set);

}  // namespace layervec
