#pragma once
// Independent oracles. Each reimplements a contract from first principles
// (dense matrices, exhaustive scans, direct arithmetic) without touching
// the engine's code paths, so tests compare two unrelated routes.

#include <scrapmem/scrapmem.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace reference {

using namespace scrapmem;

// --- layout: row-wise height accumulation ------------------------------------

// Expected page height: tiles fill rows of `columns`, each row as tall as
// its tallest tile. Tile heights are recomputed from raw content metrics.
inline int page_height_oracle(const std::vector<int>& tile_heights, int columns) {
    int height = 0;
    for (std::size_t r = 0; r * columns < tile_heights.size(); ++r) {
        int row = 0;
        for (int c = 0; c < columns; ++c) {
            std::size_t i = r * columns + c;
            if (i < tile_heights.size()) row = std::max(row, tile_heights[i]);
        }
        height += row;
    }
    return height;
}

inline int scaled_image_tile_height(int orig_w, int orig_h, int tile_width, int pad) {
    int inner = tile_width - 2 * pad;
    int h = static_cast<int>(std::llround(static_cast<double>(orig_h) * inner / orig_w));
    return std::max(h, 1) + 2 * pad;
}

// --- clustering: union-find over pairwise similarity -------------------------

// Ground-truth canonical-node count for tau-separated inputs: connected
// components of the "similarity >= tau" graph over the raw vectors.
inline int brute_force_cluster_count(const std::vector<std::vector<float>>& vectors, double tau) {
    std::vector<int> parent(vectors.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = i + 1; j < vectors.size(); ++j)
            if (cosine(vectors[i], vectors[j]) >= tau) parent[find(static_cast<int>(i))] =
                find(static_cast<int>(j));
    std::set<int> roots;
    for (std::size_t i = 0; i < vectors.size(); ++i) roots.insert(find(static_cast<int>(i)));
    return static_cast<int>(roots.size());
}

// --- retrieval: exhaustive scoring -------------------------------------------

// Brute-force top-k: every path scored directly from its node list, sorted
// by (score desc, date desc, path_id asc).
inline std::vector<std::pair<int, double>> exhaustive_topk(
    const std::map<int, double>& node_weights, const MemoryGraph& graph, int k) {
    struct Row {
        int path_id;
        double score;
        CivilDate date;
    };
    std::vector<Row> rows;
    for (const auto& path : graph.paths) {
        double score = 0;
        for (int nid : path.node_ids) {
            auto it = node_weights.find(nid);
            if (it != node_weights.end()) score += it->second;
        }
        rows.push_back(Row{path.path_id, score, path.date});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.date != b.date) return a.date > b.date;
        return a.path_id < b.path_id;
    });
    std::vector<std::pair<int, double>> out;
    for (const auto& r : rows) {
        if (static_cast<int>(out.size()) >= k) break;
        out.emplace_back(r.path_id, r.score);
    }
    return out;
}

// --- pruning: dense reference executor ---------------------------------------

struct PruneOutcome {
    std::map<int, std::vector<int>> surviving_paths;  // path_id -> node list
    std::set<int> surviving_nodes;
    std::set<int> pruned_path_ids;
    std::set<int> removed_node_ids;
};

// Final-state transcription of the pruning rule: a mention (page, node)
// deletes the node from that page's paths; a path that lost anything is
// pruned when under 2 nodes or under half its original length survive;
// nodes left on no path disappear.
inline PruneOutcome reference_prune(const MemoryGraph& before,
                                    const std::vector<LostMention>& lost) {
    PruneOutcome out;
    std::set<std::pair<std::string, int>> lost_set;
    for (const auto& m : lost) lost_set.emplace(m.page_id, m.node_id);

    std::set<int> all_nodes;
    for (const auto& n : before.nodes) all_nodes.insert(n.node_id);

    for (const auto& path : before.paths) {
        std::vector<int> survivors;
        bool touched = false;
        for (int nid : path.node_ids) {
            if (lost_set.count({path.page_id, nid})) {
                touched = true;
            } else {
                survivors.push_back(nid);
            }
        }
        bool pruned = touched && (survivors.size() < 2 ||
                                  2 * survivors.size() <
                                      static_cast<std::size_t>(path.original_len));
        if (pruned) {
            out.pruned_path_ids.insert(path.path_id);
        } else {
            out.surviving_paths[path.path_id] = survivors;
            for (int nid : survivors) out.surviving_nodes.insert(nid);
        }
    }
    if (!lost.empty()) {
        for (int nid : all_nodes)
            if (!out.surviving_nodes.count(nid)) out.removed_node_ids.insert(nid);
    } else {
        out.surviving_nodes = all_nodes;
        for (const auto& path : before.paths)
            out.surviving_paths[path.path_id] = path.node_ids;
    }
    return out;
}

// --- metrics: direct set arithmetic ------------------------------------------

inline double jaccard_oracle(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::vector<std::string> inter, uni;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
    return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

inline double recall_oracle(const std::set<std::string>& truth,
                            const std::vector<std::string>& retrieved) {
    std::set<std::string> r(retrieved.begin(), retrieved.end());
    std::vector<std::string> inter;
    std::set_intersection(truth.begin(), truth.end(), r.begin(), r.end(),
                          std::back_inserter(inter));
    return static_cast<double>(inter.size()) / static_cast<double>(truth.size());
}

}  // namespace reference
