#pragma once
// Optical forgetting. A page whose age crosses into a deeper stage is
// resized by the stage scale ratio and re-encoded at the stage quality —
// progressively, from the current raster; the original is not retained.
// Fading then drops node mentions the degraded page can no longer support,
// and pruning rewrites the graph: incidence entries are cleared, paths that
// lose coherence are removed, and nodes with no remaining path vanish.

#include <scrapmem/emgraph.hpp>
#include <scrapmem/errors.hpp>
#include <scrapmem/pagebuilder.hpp>
#include <scrapmem/perception.hpp>
#include <scrapmem/policy.hpp>
#include <scrapmem/raster.hpp>
#include <scrapmem/store.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace scrapmem {

// Applies the policy's target stage for the page's age. No-op when the
// target stage is not deeper than the current one, and when the target
// parameters equal the applied ones (the stage label still advances, so
// a no-forget policy never rewrites bytes). Returns true iff the raster
// changed.
inline bool degrade_page(ScrapbookPage& page, const ForgettingPolicy& policy,
                         const CivilDate& now) {
    const Stage target = stage_of(age_in_days(page.date, now), policy);
    if (static_cast<int>(target) <= static_cast<int>(page.fidelity.stage)) return false;

    const int target_quality = policy.quality_for(target);
    const double target_scale = policy.scale_for(target);
    if (target_quality == page.fidelity.applied_quality &&
        target_scale == page.fidelity.applied_scale) {
        page.fidelity.stage = target;
        return false;
    }

    Raster img = decode_image_bytes(page.raster, page.page_id);
    const double ratio = target_scale / page.fidelity.applied_scale;
    if (ratio < 1.0) img = resize_by_ratio(img, ratio);
    page.raster = encode_jpeg(img, target_quality);
    page.width = img.cols;
    page.height = img.rows;
    page.fidelity.stage = target;
    page.fidelity.applied_quality = target_quality;
    page.fidelity.applied_scale = target_scale;
    return true;
}

struct LostMention {
    std::string page_id;
    int node_id = -1;
    std::string phrase;
    double salience = 0.0;
};

// Mentions from this page that no longer survive its legibility. Mock mode
// applies the threshold salience >= 1 - legibility directly; remote mode
// re-perceives the degraded raster and keeps a mention iff some re-extracted
// phrase still matches its canonical node at tau_q.
inline std::vector<LostMention> fade_nodes(const ScrapbookPage& page, const MemoryGraph& graph,
                                           PerceptionProvider& perception,
                                           EmbeddingProvider& embedder, double tau_q) {
    std::vector<LostMention> lost;
    const bool remote = perception.mode() == "remote";

    std::vector<std::vector<float>> surviving_embeddings;
    if (remote) {
        PerceptionResult re = perception.perceive_page(page);
        FusedText fused = fuse_text(re.ocr_text, re.visual_summary);
        for (const auto& phrase :
             perception.extract_nodes(fused, NodeContext{page.date, {}}))
            surviving_embeddings.push_back(embedder.embed(phrase));
    }
    const double threshold = 1.0 - page.fidelity.legibility();

    for (const auto& mention : graph.mentions) {
        if (mention.page_id != page.page_id) continue;
        const SemanticNode* node = graph.find_node(mention.node_id);
        if (node == nullptr) continue;
        bool survives;
        if (remote) {
            survives = false;
            for (const auto& emb : surviving_embeddings) {
                if (cosine(node->centroid, emb) >= tau_q) {
                    survives = true;
                    break;
                }
            }
        } else {
            survives = mention.salience >= threshold;
        }
        if (!survives)
            lost.push_back(
                LostMention{mention.page_id, mention.node_id, mention.phrase, mention.salience});
    }
    return lost;
}

struct PruneResult {
    std::vector<int> pruned_path_ids;
    std::vector<int> removed_node_ids;
};

// Graph pruning driven by lost mentions. For a lost mention (page, node),
// every path of that page containing the node loses the incidence entry;
// a touched path is pruned when fewer than 2 nodes survive or fewer than
// half of its original length. Afterwards any node with empty incidence
// column is purged. Validation happens before any mutation.
inline PruneResult prune_graph(MemoryGraph& graph, const std::vector<LostMention>& lost) {
    if (lost.empty()) return PruneResult{};
    for (const auto& m : lost) {
        if (graph.find_node(m.node_id) == nullptr)
            throw ValidationError("prune_graph: unknown node " + std::to_string(m.node_id));
        bool known = false;
        for (const auto& mention : graph.mentions)
            if (mention.node_id == m.node_id && mention.page_id == m.page_id) known = true;
        if (!known)
            throw ValidationError("prune_graph: no mention of node " + std::to_string(m.node_id) +
                                  " on page " + m.page_id);
    }

    PruneResult result;
    std::set<int> pruned;

    auto coherent = [](std::size_t survivors, int original_len) {
        return survivors >= 2 && 2 * survivors >= static_cast<std::size_t>(original_len);
    };

    for (const auto& m : lost) {
        for (auto& path : graph.paths) {
            if (path.page_id != m.page_id || pruned.count(path.path_id)) continue;
            if (!graph.q.erase({path.path_id, m.node_id})) continue;
            path.node_ids.erase(
                std::remove(path.node_ids.begin(), path.node_ids.end(), m.node_id),
                path.node_ids.end());
            if (!coherent(path.node_ids.size(), path.original_len)) {
                pruned.insert(path.path_id);
                result.pruned_path_ids.push_back(path.path_id);
                // drop the whole incidence row
                for (int nid : path.node_ids) graph.q.erase({path.path_id, nid});
                path.node_ids.clear();
            }
        }
        // the faded mention itself is gone from the audit trail
        graph.mentions.erase(
            std::remove_if(graph.mentions.begin(), graph.mentions.end(),
                           [&](const Mention& mention) {
                               return mention.node_id == m.node_id &&
                                      mention.page_id == m.page_id;
                           }),
            graph.mentions.end());
        if (auto* node = graph.find_node(m.node_id)) node->source_pages.erase(m.page_id);
    }

    graph.paths.erase(std::remove_if(graph.paths.begin(), graph.paths.end(),
                                     [&](const EMPath& p) { return pruned.count(p.path_id); }),
                      graph.paths.end());

    // Column sweep: nodes with no surviving incidence disappear entirely.
    std::set<int> live;
    for (const auto& [pid, nid] : graph.q) live.insert(nid);
    for (const auto& node : graph.nodes)
        if (!live.count(node.node_id)) result.removed_node_ids.push_back(node.node_id);
    std::set<int> removed(result.removed_node_ids.begin(), result.removed_node_ids.end());
    graph.nodes.erase(std::remove_if(graph.nodes.begin(), graph.nodes.end(),
                                     [&](const SemanticNode& n) {
                                         return removed.count(n.node_id) != 0;
                                     }),
                      graph.nodes.end());
    graph.mentions.erase(std::remove_if(graph.mentions.begin(), graph.mentions.end(),
                                        [&](const Mention& m) {
                                            return removed.count(m.node_id) != 0;
                                        }),
                         graph.mentions.end());
    return result;
}

// Bytes on disk: everything under pages/ plus the graph file.
inline StorageReport storage_report(const Store& store, std::uint64_t baseline_bytes) {
    return make_storage_report(store.pages_bytes(), store.graph_bytes(), baseline_bytes);
}

}  // namespace scrapmem
