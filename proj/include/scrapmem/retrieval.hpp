#pragma once
// Retrieval over the memory graph: query phrases are embedded and matched
// against canonical nodes (cosine >= tau_q); paths score as the sum of
// their matched nodes' best weights via the incidence matrix. Ranking runs
// in two stages: days are ranked by their best path score and the top D
// days survive, then all paths inside those days are reranked and the
// top-k returned. D = infinity degenerates to exact global ranking.

#include <scrapmem/config.hpp>
#include <scrapmem/emgraph.hpp>
#include <scrapmem/errors.hpp>
#include <scrapmem/perception.hpp>
#include <scrapmem/store.hpp>

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace scrapmem {

struct QueryNodes {
    std::string question;
    std::vector<std::string> phrases;
    std::vector<std::vector<float>> embeddings;
};

struct NodeMatch {
    int node_id = -1;
    double weight = 0.0;  // cosine similarity
};

struct ScoredPath {
    int path_id = -1;
    double score = 0.0;
    std::string page_id;
    CivilDate date;
    std::string summary;
};

struct EvidenceSet {
    std::vector<ScoredPath> paths;       // ranked, size <= k
    std::vector<std::string> item_ids;   // expanded source items, rank order
};

struct AnswerRecord {
    std::string question;
    std::string answer;
    std::vector<int> evidence_path_ids;
    std::string provider_mode;
};

struct RetrievalParams {
    double tau_q = 0.60;
    int day_budget = 0;  // 0 = auto (2k); use unlimited_days() for exact ranking
    double visual_node_weight = 0.0;
    static constexpr int unlimited_days() { return std::numeric_limits<int>::max(); }
};

// Per query phrase: all canonical nodes within tau_q, with similarity
// weights. Unmatched phrases yield empty match sets.
inline std::vector<std::vector<NodeMatch>> match_query_nodes(const QueryNodes& qn,
                                                             const MemoryGraph& graph,
                                                             const RetrievalParams& params) {
    if (qn.phrases.size() != qn.embeddings.size())
        throw ValidationError("query phrases/embeddings size mismatch");
    std::vector<std::vector<NodeMatch>> matches;
    for (const auto& embedding : qn.embeddings) {
        std::vector<NodeMatch> row;
        for (const auto& node : graph.nodes) {
            double sim = cosine(node.centroid, embedding);
            if (sim >= params.tau_q) row.push_back(NodeMatch{node.node_id, sim});
        }
        if (params.visual_node_weight > 0.0) {
            for (const auto& node : graph.visual_nodes) {
                if (node.embedding.size() != embedding.size()) continue;
                double sim = cosine(node.embedding, embedding) * params.visual_node_weight;
                if (sim >= params.tau_q) row.push_back(NodeMatch{node.node_id, sim});
            }
        }
        matches.push_back(std::move(row));
    }
    return matches;
}

// Best weight per matched node across all query phrases.
inline std::map<int, double> best_node_weights(const std::vector<std::vector<NodeMatch>>& matches) {
    std::map<int, double> weights;
    for (const auto& row : matches)
        for (const auto& m : row) {
            auto [it, inserted] = weights.emplace(m.node_id, m.weight);
            if (!inserted && m.weight > it->second) it->second = m.weight;
        }
    return weights;
}

// score(P_i) = sum over matched nodes j with Q_ij = 1 of w_j.
// Ties break newest date first, then lowest path id.
inline std::vector<ScoredPath> score_paths(const std::map<int, double>& node_weights,
                                           const MemoryGraph& graph) {
    std::vector<ScoredPath> scored;
    scored.reserve(graph.paths.size());
    for (const auto& path : graph.paths) {
        double score = 0.0;
        for (const auto& [nid, w] : node_weights)
            if (graph.q.count({path.path_id, nid})) score += w;
        scored.push_back(ScoredPath{path.path_id, score, path.page_id, path.date, path.summary});
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredPath& a, const ScoredPath& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.date != b.date) return a.date > b.date;
        return a.path_id < b.path_id;
    });
    return scored;
}

// Two-stage ranking: days ranked by their best path score (newer first on
// ties) with the top D kept, then those days' paths reranked globally and
// the top k returned. An unlimited day budget yields exact global top-k.
inline std::vector<ScoredPath> two_stage_rank(const std::map<int, double>& node_weights,
                                              const MemoryGraph& graph, int k, int day_budget) {
    std::vector<ScoredPath> ranked = score_paths(node_weights, graph);

    std::map<CivilDate, double> day_best;
    for (const auto& sp : ranked) {
        auto [it, inserted] = day_best.emplace(sp.date, sp.score);
        if (!inserted && sp.score > it->second) it->second = sp.score;
    }
    struct DayScore {
        CivilDate date;
        double score;
    };
    std::vector<DayScore> days;
    for (const auto& [date, score] : day_best) days.push_back(DayScore{date, score});
    std::sort(days.begin(), days.end(), [](const DayScore& a, const DayScore& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.date > b.date;
    });
    std::set<CivilDate> kept_days;
    for (const auto& d : days) {
        if (day_budget >= 0 && static_cast<int>(kept_days.size()) >= day_budget) break;
        kept_days.insert(d.date);
    }

    std::vector<ScoredPath> top;
    for (const auto& sp : ranked) {
        if (!kept_days.count(sp.date)) continue;
        top.push_back(sp);
        if (static_cast<int>(top.size()) >= k) break;
    }
    return top;
}

class Retriever {
public:
    Retriever(const MemoryGraph& graph, const Store& store, PerceptionProvider& perception,
              EmbeddingProvider& embedder, RetrievalParams params)
        : graph_(graph), store_(store), perception_(perception), embedder_(embedder),
          params_(params) {}

    QueryNodes query_nodes(const std::string& question) {
        QueryNodes qn;
        qn.question = question;
        qn.phrases = perception_.extract_query_nodes(question);
        for (const auto& p : qn.phrases) qn.embeddings.push_back(embedder_.embed(p));
        return qn;
    }

    EvidenceSet retrieve(const std::string& question, int k) {
        if (k < 1) throw ValidationError("k must be >= 1");
        EvidenceSet evidence;
        if (graph_.paths.empty()) return evidence;

        QueryNodes qn = query_nodes(question);
        auto weights = best_node_weights(match_query_nodes(qn, graph_, params_));
        const int budget = params_.day_budget > 0 ? params_.day_budget : 2 * k;
        evidence.paths = two_stage_rank(weights, graph_, k, budget);

        // Expand selected pages to their source items, rank order, deduped.
        std::set<std::string> seen;
        for (const auto& sp : evidence.paths) {
            ScrapbookPage page = store_.load_page(sp.page_id);
            for (const auto& id : page.source_ids)
                if (seen.insert(id).second) evidence.item_ids.push_back(id);
        }
        return evidence;
    }

private:
    const MemoryGraph& graph_;
    const Store& store_;
    PerceptionProvider& perception_;
    EmbeddingProvider& embedder_;
    RetrievalParams params_;
};

inline nlohmann::json retrieval_report_json(const std::string& question, int k,
                                            const EvidenceSet& evidence) {
    nlohmann::json paths = nlohmann::json::array();
    for (const auto& p : evidence.paths)
        paths.push_back({{"path_id", p.path_id},
                         {"score", p.score},
                         {"page_id", p.page_id},
                         {"summary", p.summary}});
    return nlohmann::json{
        {"question", question}, {"k", k}, {"paths", paths}, {"item_ids", evidence.item_ids}};
}

// ---------------------------------------------------------------------------
// Answerer. Mock mode is extractive: the top path summary, or for questions
// with numeric intent the first number-with-unit token found in the
// evidence (preferring tokens whose unit also occurs in the question).
// ---------------------------------------------------------------------------

inline bool has_numeric_intent(const std::string& question) {
    std::string q = to_lower(question);
    for (const char* cue : {"how many", "how much", "total", "cost", "price", "amount",
                            "number of", "how long"})
        if (q.find(cue) != std::string::npos) return true;
    return false;
}

inline std::string mock_answer(const std::string& question, const EvidenceSet& evidence,
                               const Store& store) {
    if (evidence.paths.empty()) return "insufficient evidence";

    if (has_numeric_intent(question)) {
        std::string qlower = to_lower(question);
        std::vector<std::string> texts;
        for (const auto& p : evidence.paths) texts.push_back(p.summary);
        for (const auto& p : evidence.paths) {
            ScrapbookPage page = store.load_page(p.page_id);
            for (const auto& t : page.texts) texts.push_back(t.header + "\n" + t.body);
        }
        std::string first_candidate;
        for (const auto& text : texts) {
            for (const auto& phrase : mock_tokenizer::extract_phrases(text, 0, false)) {
                auto words = word_tokens(phrase);
                if (words.size() != 2 || !is_numeric_token(words[0]) ||
                    mock_tokenizer::month_names().count(words[1]))
                    continue;
                if (first_candidate.empty()) first_candidate = phrase;
                if (qlower.find(words[1]) != std::string::npos) return phrase;
            }
        }
        if (!first_candidate.empty()) return first_candidate;
    }
    return evidence.paths.front().summary;
}

class Answerer {
public:
    Answerer(const Store& store, ProviderMode mode, std::shared_ptr<ChatClient> client = nullptr)
        : store_(store), mode_(mode), client_(std::move(client)) {
        if (mode_ == ProviderMode::remote && !client_)
            throw ValidationError("remote answerer requires a configured endpoint");
    }

    AnswerRecord answer(const std::string& question, const EvidenceSet& evidence) {
        AnswerRecord record;
        record.question = question;
        record.provider_mode = mode_ == ProviderMode::mock ? "mock" : "remote";
        for (const auto& p : evidence.paths) record.evidence_path_ids.push_back(p.path_id);
        if (mode_ == ProviderMode::mock) {
            record.answer = mock_answer(question, evidence, store_);
            return record;
        }
        record.answer = remote_answer(question, evidence);
        return record;
    }

private:
    std::string remote_answer(const std::string& question, const EvidenceSet& evidence) {
        std::string context;
        for (const auto& p : evidence.paths) {
            context += "- [" + to_string(p.date) + "] " + p.summary + "\n";
            ScrapbookPage page = store_.load_page(p.page_id);
            for (const auto& t : page.texts) context += "  " + t.header + " " + t.body + "\n";
        }
        nlohmann::json messages = nlohmann::json::array(
            {ChatClient::text_message(
                 "system",
                 "Answer the user's question from the retrieved memory evidence below. "
                 "Be concise; answer with the specific value when one is asked for."),
             ChatClient::text_message("user", "Evidence:\n" + context + "\nQuestion: " + question)});
        return client_->chat(messages, 512, 0.0);
    }

    const Store& store_;
    ProviderMode mode_;
    std::shared_ptr<ChatClient> client_;
};

}  // namespace scrapmem
