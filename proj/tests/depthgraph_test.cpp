#include <doctest.h>

#include "fixtures.hpp"
#include "layervec/depthgraph.hpp"
#include "layervec/quantize.hpp"
#include "oracles.hpp"

using namespace layervec;

namespace {

LayerSet layers_of(const RasterImage& img) {
    QuantizedImage q = kmeans_quantize(img, distinct_color_count(img), 0);
    return detect_noise(extract_layers(q), 0);
}

LayerSet fake_set(const std::vector<long>& areas) {
    // synthetic set for topo tests: 1-wide bars of the given areas
    LayerSet set;
    set.width = 64;
    set.height = 64;
    set.palette.colors = {{0, 0, 0}};
    for (size_t i = 0; i < areas.size(); ++i) {
        ShapeLayer l;
        l.id = static_cast<int>(i);
        l.color_index = 0;
        l.mask.x0 = static_cast<int>(i);
        l.mask.y0 = 0;
        l.mask.bits = Mask(1, static_cast<int>(areas[i]), 1);
        l.area = areas[i];
        set.layers.push_back(std::move(l));
    }
    return set;
}

}  // namespace

TEST_CASE("single layer yields an empty edge set") {
    RasterImage img;
    img.width = 8;
    img.height = 8;
    img.pixels.assign(64, Rgb{1, 2, 3});
    LayerSet set = layers_of(img);
    HullCache hulls(set);
    DepthGraph g = build_graph(set, 0.05, PairSelection::Auto, hulls);
    CHECK(g.edges.empty());
}

TEST_CASE("topo sort ranks smaller areas on top without edges") {
    LayerSet set = fake_set({5, 9, 2});
    DepthGraph g;
    g.node_count = 3;
    DepthOrdering ord = topo_sort(g, set);
    CHECK(ord.rank[2] == 0);
    CHECK(ord.rank[0] == 1);
    CHECK(ord.rank[1] == 2);
}

TEST_CASE("topo sort respects a chain") {
    LayerSet set = fake_set({10, 10, 10});
    DepthGraph g;
    g.node_count = 3;
    g.edges = {{0, 1, 0.5, false}, {1, 2, 0.5, false}};
    DepthOrdering ord = topo_sort(g, set);
    CHECK(ord.rank[0] < ord.rank[1]);
    CHECK(ord.rank[1] < ord.rank[2]);
}

TEST_CASE("topo sort rejects cycles") {
    LayerSet set = fake_set({4, 4});
    DepthGraph g;
    g.node_count = 2;
    g.edges = {{0, 1, 0.5, false}, {1, 0, 0.5, false}};
    CHECK_THROWS_AS(topo_sort(g, set), StageError);
}

TEST_CASE("mountain scene orders as the expected chain") {
    LayerSet set = layers_of(fixtures::mountain_scene());
    REQUIRE(set.layers.size() == 7);
    HullCache hulls(set);
    DepthGraph g = build_graph(set, 0.05, PairSelection::Auto, hulls);
    break_cycles(g, set, hulls);
    DepthOrdering ord = topo_sort(g, set);
    auto roles = fixtures::mountain_role_ids(set);  // cap, mL, cloud, mR, sun, sky, bg
    for (int r = 0; r < 7; ++r) {
        REQUIRE(roles[r] >= 0);
        CHECK(ord.rank[roles[r]] == r);
    }
}

TEST_CASE("three disks form a cycle that breaking resolves") {
    LayerSet set = layers_of(fixtures::three_disk_scene());
    HullCache hulls(set);
    DepthGraph g = build_graph(set, 0.05, PairSelection::Auto, hulls);
    CHECK(g.has_cycle());

    // locate the disks by color
    int red = -1, green = -1, blue = -1;
    for (const ShapeLayer& l : set.layers) {
        Rgb c = set.palette.colors[l.color_index];
        if (c.r > 150 && c.g < 100) red = l.id;
        else if (c.g > 120 && c.r < 100) green = l.id;
        else if (c.b > 150 && c.r < 100) blue = l.id;
    }
    REQUIRE(red >= 0);
    REQUIRE(green >= 0);
    REQUIRE(blue >= 0);

    auto has_edge = [&](int a, int b) {
        for (const DepthEdge& e : g.edges)
            if (!e.removed && e.from == a && e.to == b) return true;
        return false;
    };
    CHECK(has_edge(red, green));
    CHECK(has_edge(green, blue));
    CHECK(has_edge(blue, red));

    break_cycles(g, set, hulls);
    CHECK(!g.has_cycle());
    REQUIRE(g.removed.size() == 1);
    // the red->green cut has the largest V by construction
    CHECK(g.removed[0].from == red);
    CHECK(g.removed[0].to == green);
    long v_rg = oracles::hull_symmetric_difference(set.layers[red].mask, set.layers[green].mask);
    long v_gb = oracles::hull_symmetric_difference(set.layers[green].mask, set.layers[blue].mask);
    long v_br = oracles::hull_symmetric_difference(set.layers[blue].mask, set.layers[red].mask);
    CHECK(g.removed[0].v == v_rg);
    CHECK(v_rg > v_gb);
    CHECK(v_rg > v_br);

    DepthOrdering ord = topo_sort(g, set);
    CHECK(ord.rank[green] < ord.rank[blue]);
    CHECK(ord.rank[blue] < ord.rank[red]);
}

TEST_CASE("two independent cycles lose exactly one edge each") {
    // two disk triples side by side on one canvas
    RasterImage left = fixtures::three_disk_scene(120);
    RasterImage right = fixtures::three_disk_scene(120);
    RasterImage both;
    both.width = 240;
    both.height = 120;
    both.pixels.resize(240 * 120);
    for (int y = 0; y < 120; ++y)
        for (int x = 0; x < 240; ++x)
            both.pixels[y * 240 + x] = x < 120 ? left.at(x, y) : right.at(x - 120, y);

    LayerSet set = layers_of(both);
    REQUIRE(set.layers.size() == 7);  // 6 disks + background
    HullCache hulls(set);
    DepthGraph g = build_graph(set, 0.05, PairSelection::Auto, hulls);

    std::vector<std::pair<int, int>> edges;
    for (const DepthEdge& e : g.edges) edges.push_back({e.from, e.to});
    auto cycles_before = oracles::enumerate_cycles(g.node_count, edges);
    CHECK(cycles_before.size() == 2);

    break_cycles(g, set, hulls);
    CHECK(g.removed.size() == 2);
    edges.clear();
    for (const DepthEdge& e : g.edges)
        if (!e.removed) edges.push_back({e.from, e.to});
    CHECK(oracles::enumerate_cycles(g.node_count, edges).empty());

    // one removal per cycle
    for (const auto& cyc : cycles_before) {
        int cut = 0;
        for (const RemovedEdge& r : g.removed) {
            for (size_t k = 0; k < cyc.size(); ++k) {
                int a = cyc[k], b = cyc[(k + 1) % cyc.size()];
                if (r.from == a && r.to == b) ++cut;
            }
        }
        CHECK(cut == 1);
    }
}

TEST_CASE("acyclic graphs are left untouched") {
    LayerSet set = layers_of(fixtures::mountain_scene());
    HullCache hulls(set);
    DepthGraph g = build_graph(set, 0.05, PairSelection::Auto, hulls);
    size_t edges_before = g.edges.size();
    bool cyc = g.has_cycle();
    break_cycles(g, set, hulls);
    if (!cyc) {
        CHECK(g.removed.empty());
        CHECK(g.edges.size() == edges_before);
    }
}

TEST_CASE("orderings respect edges and realize transitivity") {
    fixtures::Rng rng(77);
    for (int trial = 0; trial < 6; ++trial) {
        RasterImage img = fixtures::blob_scene(64, 48, rng.next());
        QuantizedImage q = kmeans_quantize(img, 6, 1);
        LayerSet set = detect_noise(extract_layers(q), 4);
        HullCache hulls(set);
        DepthGraph g = build_graph(set, 0.05, PairSelection::Auto, hulls);
        break_cycles(g, set, hulls);
        DepthOrdering ord = topo_sort(g, set);

        for (const DepthEdge& e : g.edges)
            if (!e.removed) CHECK(ord.rank[e.from] < ord.rank[e.to]);

        auto has_edge = [&](int a, int b) {
            for (const DepthEdge& e : g.edges)
                if (!e.removed && e.from == a && e.to == b) return true;
            return false;
        };
        int n = g.node_count;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (i == j || j == k || i == k) continue;
                    if (has_edge(i, j) && has_edge(j, k) && !has_edge(k, i))
                        CHECK(ord.rank[i] < ord.rank[k]);
                }
    }
}

TEST_CASE("adjacent-only selection restricts to touching pairs") {
    LayerSet set = layers_of(fixtures::mountain_scene());
    HullCache hulls(set);
    DepthGraph all = build_graph(set, 0.05, PairSelection::AllPairs, hulls);
    DepthGraph adj = build_graph(set, 0.05, PairSelection::AdjacentOnly, hulls);
    auto pairs = adjacent_pairs(set);
    CHECK(adj.edges.size() <= all.edges.size());
    for (const DepthEdge& e : adj.edges) {
        std::pair<int, int> key{std::min(e.from, e.to), std::max(e.from, e.to)};
        CHECK(std::find(pairs.begin(), pairs.end(), key) != pairs.end());
    }
}
