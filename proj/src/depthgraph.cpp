#include "layervec/depthgraph.hpp"

#include <algorithm>

namespace layervec {

std::vector<std::vector<int>> DepthGraph::successors() const {
    std::vector<std::vector<int>> adj(node_count);
    for (const DepthEdge& e : edges)
        if (!e.removed) adj[e.from].push_back(e.to);
    return adj;
}

namespace {

// DFS from the lowest node id; returns one directed cycle as a node sequence,
// or empty when the graph is acyclic.
std::vector<int> find_cycle(const std::vector<std::vector<int>>& adj) {
    int n = static_cast<int>(adj.size());
    std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<int> parent(n, -1);
    for (int root = 0; root < n; ++root) {
        if (state[root] != 0) continue;
        std::vector<std::pair<int, size_t>> stack{{root, 0}};
        state[root] = 1;
        while (!stack.empty()) {
            auto& [node, idx] = stack.back();
            if (idx < adj[node].size()) {
                int next = adj[node][idx++];
                if (state[next] == 1) {
                    std::vector<int> cycle{next};
                    for (int v = node; v != next; v = parent[v]) cycle.push_back(v);
                    std::reverse(cycle.begin() + 1, cycle.end());
                    return cycle;
                }
                if (state[next] == 0) {
                    state[next] = 1;
                    parent[next] = node;
                    stack.push_back({next, 0});
                }
            } else {
                state[node] = 2;
                stack.pop_back();
            }
        }
    }
    return {};
}

}  // namespace

bool DepthGraph::has_cycle() const { return !find_cycle(successors()).empty(); }

DepthGraph build_graph(const LayerSet& set, double delta, PairSelection pairs, HullCache& hulls) {
    DepthGraph g;
    g.node_count = static_cast<int>(set.layers.size());

    std::vector<std::pair<int, int>> candidates;
    PairSelection mode = pairs;
    if (mode == PairSelection::Auto)
        mode = g.node_count <= 64 ? PairSelection::AllPairs : PairSelection::AdjacentOnly;
    if (mode == PairSelection::AllPairs) {
        for (int i = 0; i < g.node_count; ++i)
            for (int j = i + 1; j < g.node_count; ++j) candidates.push_back({i, j});
    } else {
        candidates = adjacent_pairs(set);
    }

    // Hulls and pair energies are independent; evaluate in parallel, then
    // assemble edges in pair order so the result is schedule-independent.
    int np = static_cast<int>(candidates.size());
    std::vector<int> dir(np, 0);       // +1: i above j, -1: j above i, 0: none
    std::vector<double> energy(np, 0);
    for (int i = 0; i < g.node_count; ++i) hulls.hull(i);  // warm the cache
#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < np; ++p) {
        auto [i, j] = candidates[p];
        const ShapeLayer& si = set.layers[i];
        const ShapeLayer& sj = set.layers[j];
        const HullPolygon& hi = hulls.hull(i);
        const HullPolygon& hj = hulls.hull(j);
        if (subset_shortcut(si, hj)) {
            dir[p] = 1;
        } else if (subset_shortcut(sj, hi)) {
            dir[p] = -1;
        } else {
            double d = depth_energy(si, hi, sj, hj);
            energy[p] = d;
            switch (classify(d, delta)) {
                case OrderingRelation::Above: dir[p] = 1; break;
                case OrderingRelation::Below: dir[p] = -1; break;
                case OrderingRelation::SameLevel: dir[p] = 0; break;
            }
        }
    }
    for (int p = 0; p < np; ++p) {
        auto [i, j] = candidates[p];
        if (dir[p] > 0) g.edges.push_back({i, j, energy[p], false});
        else if (dir[p] < 0) g.edges.push_back({j, i, -energy[p], false});
    }
    return g;
}

void break_cycles(DepthGraph& g, const LayerSet& set, HullCache& hulls) {
    auto v_of = [&](int i, int j) {
        auto key = std::make_pair(i, j);
        auto it = g.v_cache.find(key);
        if (it != g.v_cache.end()) return it->second;
        long v = hull_symmetric_difference(set.layers[i], set.layers[j], hulls.hull(j));
        g.v_cache.emplace(key, v);
        return v;
    };

    while (true) {
        std::vector<int> cycle = find_cycle(g.successors());
        if (cycle.empty()) break;
        // pick the cycle edge with the largest V, ties to lowest (from,to)
        int m = static_cast<int>(cycle.size());
        int best_from = -1, best_to = -1;
        long best_v = -1;
        for (int k = 0; k < m; ++k) {
            int a = cycle[k], b = cycle[(k + 1) % m];
            long v = v_of(a, b);
            if (v > best_v || (v == best_v && std::make_pair(a, b) <
                                                  std::make_pair(best_from, best_to))) {
                best_v = v;
                best_from = a;
                best_to = b;
            }
        }
        for (DepthEdge& e : g.edges)
            if (!e.removed && e.from == best_from && e.to == best_to) {
                e.removed = true;
                break;
            }
        g.removed.push_back({best_from, best_to, best_v});
    }
}

DepthOrdering topo_sort(const DepthGraph& g, const LayerSet& set) {
    int n = g.node_count;
    auto adj = g.successors();
    std::vector<int> indeg(n, 0);
    for (int u = 0; u < n; ++u)
        for (int v : adj[u]) indeg[v]++;

    auto deeper = [&](int a, int b) {  // source emission priority
        if (set.layers[a].area != set.layers[b].area)
            return set.layers[a].area < set.layers[b].area;
        return a < b;
    };

    std::vector<int> sources;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) sources.push_back(v);

    DepthOrdering out;
    out.rank.assign(n, -1);
    int next_rank = 0;
    while (!sources.empty()) {
        auto it = std::min_element(sources.begin(), sources.end(), deeper);
        int u = *it;
        sources.erase(it);
        out.rank[u] = next_rank++;
        for (int v : adj[u])
            if (--indeg[v] == 0) sources.push_back(v);
    }
    if (next_rank != n)
        throw StageError("topo_sort", "depth graph still has a cycle; run break_cycles first");
    return out;
}

}  // namespace layervec
