#pragma once
// End-to-end passes over a store. Build: consolidate each day into a page,
// perceive it, merge the extracted nodes, and record one event path per
// page. Forget: degrade each page to its age's stage, fade mentions the
// degraded page can no longer support, and prune the graph. Both passes
// journal per-page progress so an interrupted run resumes where it stopped.

#include <scrapmem/config.hpp>
#include <scrapmem/corpus.hpp>
#include <scrapmem/emgraph.hpp>
#include <scrapmem/eval.hpp>
#include <scrapmem/forgetting.hpp>
#include <scrapmem/pagebuilder.hpp>
#include <scrapmem/perception.hpp>
#include <scrapmem/retrieval.hpp>
#include <scrapmem/store.hpp>

#include <json.hpp>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace scrapmem {

struct ProviderBundle {
    std::shared_ptr<ChatClient> client;  // null in fully mock setups
    std::unique_ptr<PerceptionProvider> perception;
    std::unique_ptr<EmbeddingProvider> embedder;
    std::unique_ptr<Answerer> answerer;
    JudgeFn judge;
};

inline ProviderBundle make_providers(const EngineConfig& config, const Store& store) {
    ProviderBundle bundle;
    const bool any_remote =
        config.perception == ProviderMode::remote || config.embedding == ProviderMode::remote ||
        config.answer == ProviderMode::remote || config.judge == ProviderMode::remote;
    if (any_remote) {
        ChatClientConfig cc = ChatClientConfig::from_env();
        cc.max_retries = config.max_retries;
        bundle.client = std::make_shared<ChatClient>(cc);
    }
    if (config.perception == ProviderMode::remote) {
        bundle.perception = std::make_unique<RemotePerception>(
            bundle.client, load_prompts(config.prompts_dir));
    } else {
        bundle.perception = std::make_unique<MockPerception>();
    }
    if (config.embedding == ProviderMode::remote) {
        bundle.embedder = std::make_unique<RemoteEmbedder>(bundle.client, config.embed_dim);
    } else {
        bundle.embedder = std::make_unique<DeterministicEmbedder>(config.embed_dim);
    }
    bundle.answerer = std::make_unique<Answerer>(store, config.answer, bundle.client);
    if (config.judge == ProviderMode::remote) {
        auto client = bundle.client;
        bundle.judge = [client](const std::string& question, const std::string& truth,
                                const std::string& prediction) {
            nlohmann::json messages = nlohmann::json::array(
                {ChatClient::text_message(
                     "system",
                     "You judge answer correctness. Reply with exactly 1 if the prediction "
                     "answers the question as well as the reference, else 0."),
                 ChatClient::text_message("user", "Question: " + question + "\nReference: " +
                                                      truth + "\nPrediction: " + prediction)});
            std::string content = client->chat(messages, 4, 0.0);
            return content.find('1') != std::string::npos ? 1.0 : 0.0;
        };
    } else {
        bundle.judge = offline_judge;
    }
    return bundle;
}

inline RetrievalParams retrieval_params(const EngineConfig& config) {
    RetrievalParams p;
    p.tau_q = config.tau_q;
    p.day_budget = config.day_budget;
    p.visual_node_weight = config.visual_node_weight;
    return p;
}

inline PageLayout page_layout(const EngineConfig& config) {
    PageLayout layout;
    layout.page_width = config.page_width;
    layout.tile_width = config.tile_width;
    layout.text_line_height = config.text_line_height;
    return layout;
}

struct BuildStats {
    std::size_t pages_processed = 0;
    std::size_t pages_total = 0;
    std::size_t paths = 0;
    std::size_t nodes = 0;
};

// Idempotent: days whose page id is journaled are skipped, so a rerun over
// an already-built store processes 0 pages.
inline BuildStats build_store(const Store& store, const EngineConfig& config,
                              ProviderBundle& providers) {
    Corpus corpus = store.load_corpus();
    MemoryGraph graph = store.load_graph();
    graph.config_hash = config.graph_config_hash();
    std::set<std::string> done = store.built_page_ids();
    PageLayout layout = page_layout(config);

    BuildStats stats;
    stats.pages_total = corpus.by_day.size();
    for (const auto& [date, ids] : corpus.by_day) {
        std::string page_id = page_id_for(date);
        if (done.count(page_id)) continue;

        std::vector<PageUnit> units = expand_items(corpus, ids, config.video_keyframes);
        ScrapbookPage page = consolidate(date, units, layout);
        store.save_page(page);

        PerceptionResult perception = providers.perception->perceive_page(page);
        PathSummary path = providers.perception->summarize_path(perception, date);

        std::map<std::string, double> salience;
        for (const auto& s : perception.salient_items) salience.emplace(s.phrase, s.salience);

        std::vector<int> node_ids;
        for (const auto& phrase : path.semantic_nodes) {
            auto it = salience.find(phrase);
            double s = it != salience.end() ? it->second : 0.5;
            int nid = graph.merge_or_insert(phrase, providers.embedder->embed(phrase), page_id,
                                            s, config.tau_merge);
            if (std::find(node_ids.begin(), node_ids.end(), nid) == node_ids.end())
                node_ids.push_back(nid);
        }
        if (!node_ids.empty()) graph.add_path(page_id, date, node_ids, path.em_path);

        store.save_graph(graph);
        store.journal_built_page(page_id);
        ++stats.pages_processed;
    }
    if (stats.pages_processed == 0 && !std::filesystem::exists(store.graph_path()))
        store.save_graph(graph);
    stats.paths = graph.paths.size();
    stats.nodes = graph.nodes.size();
    return stats;
}

struct ForgetStats {
    std::map<std::string, std::size_t> stage_counts;  // recent/mid/old after the pass
    std::size_t changed_pages = 0;
    std::size_t lost_mentions = 0;
    std::size_t pruned_paths = 0;
    std::size_t removed_nodes = 0;
};

// One degrade -> fade -> prune sweep over every page, committed page by
// page (page file rename, graph save, journal append), so a crashed pass
// can simply be rerun: already-degraded pages no-op.
inline ForgetStats forget_pass(const Store& store, const ForgettingPolicy& policy,
                               const CivilDate& now, const EngineConfig& config,
                               ProviderBundle& providers) {
    MemoryGraph graph = store.load_graph();
    ForgetStats stats;
    stats.stage_counts = {{"recent", 0}, {"mid", 0}, {"old", 0}};

    for (const std::string& page_id : store.page_ids()) {
        ScrapbookPage page = store.load_page(page_id);
        Stage from_stage = page.fidelity.stage;
        bool changed = degrade_page(page, policy, now);
        if (changed) ++stats.changed_pages;

        std::vector<LostMention> lost =
            fade_nodes(page, graph, *providers.perception, *providers.embedder, config.tau_q);
        PruneResult pruned = prune_graph(graph, lost);

        if (changed || page.fidelity.stage != from_stage) store.save_page(page);
        if (!lost.empty()) store.save_graph(graph);

        nlohmann::json jlost = nlohmann::json::array();
        for (const auto& m : lost)
            jlost.push_back({{"node_id", m.node_id}, {"phrase", m.phrase}});
        store.journal_forget(nlohmann::json{{"page_id", page_id},
                                            {"from_stage", to_string(from_stage)},
                                            {"to_stage", to_string(page.fidelity.stage)},
                                            {"lost_mentions", jlost},
                                            {"pruned_paths", pruned.pruned_path_ids}});

        ++stats.stage_counts[to_string(page.fidelity.stage)];
        stats.lost_mentions += lost.size();
        stats.pruned_paths += pruned.pruned_path_ids.size();
        stats.removed_nodes += pruned.removed_node_ids.size();
    }
    return stats;
}

}  // namespace scrapmem
