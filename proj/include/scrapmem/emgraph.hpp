#pragma once
// The episodic memory graph: canonical semantic nodes with merge-on-insert,
// visual nodes, per-page event paths, and a sparse binary path-by-node
// incidence matrix. Merging compares a new mention's embedding against every
// canonical centroid and folds it into the best match at or above the merge
// threshold; otherwise the mention becomes a new node. Centroids are
// support-weighted running means, renormalized after every merge.

#include <scrapmem/embedding.hpp>
#include <scrapmem/errors.hpp>
#include <scrapmem/time.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace scrapmem {

struct SemanticNode {
    int node_id = -1;
    std::string phrase;           // canonical lowercase form (first mention wins)
    std::vector<float> centroid;  // unit-norm
    int support = 0;              // merged mention count
    std::set<std::string> source_pages;
    double salience = 0.0;        // max over mentions
};

struct VisualNode {
    int node_id = -1;
    std::string page_id;
    std::array<int, 4> box = {0, 0, 0, 0};  // x, y, w, h in page pixels
    std::vector<float> embedding;
};

struct EMPath {
    int path_id = -1;
    std::string page_id;
    CivilDate date;
    std::vector<int> node_ids;  // ordered, unique
    std::string summary;
    int original_len = 0;  // length at creation; the pruning coherence base
};

// One merged mention: which page contributed which phrase to which node,
// at what salience, and how similar it was to the centroid when merged.
// This is the audit trail the fading stage consumes.
struct Mention {
    int node_id = -1;
    std::string page_id;
    std::string phrase;
    double salience = 0.0;
    double similarity = 1.0;  // cosine vs centroid at merge time; 1.0 for inserts
    bool merged = false;      // false = this mention created the node
};

class MemoryGraph {
public:
    std::vector<SemanticNode> nodes;
    std::vector<VisualNode> visual_nodes;
    std::vector<EMPath> paths;
    std::set<std::pair<int, int>> q;  // sorted (path_id, node_id) incidence pairs
    std::vector<Mention> mentions;
    std::string config_hash;

    int next_node_id = 0;
    int next_path_id = 0;

    bool empty() const { return nodes.empty() && paths.empty(); }

    const SemanticNode* find_node(int node_id) const {
        for (const auto& n : nodes)
            if (n.node_id == node_id) return &n;
        return nullptr;
    }
    SemanticNode* find_node(int node_id) {
        return const_cast<SemanticNode*>(std::as_const(*this).find_node(node_id));
    }
    const EMPath* find_path(int path_id) const {
        for (const auto& p : paths)
            if (p.path_id == path_id) return &p;
        return nullptr;
    }
    EMPath* find_path(int path_id) {
        return const_cast<EMPath*>(std::as_const(*this).find_path(path_id));
    }

    // Max-cosine scan over canonical nodes, merge iff >= tau; ties on the
    // maximum go to the lowest node id. Returns the node id the mention
    // landed on.
    int merge_or_insert(const std::string& phrase, const std::vector<float>& embedding,
                        const std::string& page_id, double salience, double tau) {
        if (!(tau > 0.0 && tau <= 1.0)) throw ValidationError("tau must be in (0,1]");
        for (float x : embedding)
            if (!std::isfinite(x)) throw ValidationError("non-finite embedding for '" + phrase + "'");

        SemanticNode* best = nullptr;
        double best_sim = 0.0;
        for (auto& node : nodes) {
            double sim = cosine(node.centroid, embedding);
            if (sim > best_sim) {
                best_sim = sim;
                best = &node;
            }
        }

        if (best != nullptr && best_sim >= tau) {
            for (std::size_t i = 0; i < best->centroid.size(); ++i)
                best->centroid[i] =
                    static_cast<float>(best->support) * best->centroid[i] + embedding[i];
            l2_normalize(best->centroid);
            best->support += 1;
            best->source_pages.insert(page_id);
            best->salience = std::max(best->salience, salience);
            mentions.push_back(Mention{best->node_id, page_id, phrase, salience, best_sim, true});
            return best->node_id;
        }

        SemanticNode node;
        node.node_id = next_node_id++;
        node.phrase = phrase;
        node.centroid = embedding;
        l2_normalize(node.centroid);
        node.support = 1;
        node.source_pages.insert(page_id);
        node.salience = salience;
        nodes.push_back(std::move(node));
        mentions.push_back(Mention{nodes.back().node_id, page_id, phrase, salience, 1.0, false});
        return nodes.back().node_id;
    }

    int add_visual_node(const std::string& page_id, std::array<int, 4> box,
                        std::vector<float> embedding) {
        VisualNode node;
        node.node_id = next_node_id++;
        node.page_id = page_id;
        node.box = box;
        node.embedding = std::move(embedding);
        l2_normalize(node.embedding);
        visual_nodes.push_back(std::move(node));
        return visual_nodes.back().node_id;
    }

    // Appends an event path and sets its incidence row.
    int add_path(const std::string& page_id, const CivilDate& date,
                 const std::vector<int>& node_ids, const std::string& summary) {
        if (node_ids.empty()) throw ValidationError("add_path: empty node list");
        std::set<int> unique(node_ids.begin(), node_ids.end());
        if (unique.size() != node_ids.size())
            throw ValidationError("add_path: duplicate node ids in path");
        for (int id : node_ids)
            if (find_node(id) == nullptr)
                throw ValidationError("add_path: unknown node id " + std::to_string(id));

        EMPath path;
        path.path_id = next_path_id++;
        path.page_id = page_id;
        path.date = date;
        path.node_ids = node_ids;
        path.summary = summary;
        path.original_len = static_cast<int>(node_ids.size());
        for (int id : node_ids) q.emplace(path.path_id, id);
        paths.push_back(std::move(path));
        return paths.back().path_id;
    }

    std::size_t column_support(int node_id) const {
        std::size_t count = 0;
        for (const auto& [pid, nid] : q)
            if (nid == node_id) ++count;
        return count;
    }

    std::set<int> row_support(int path_id) const {
        std::set<int> out;
        auto it = q.lower_bound({path_id, std::numeric_limits<int>::min()});
        for (; it != q.end() && it->first == path_id; ++it) out.insert(it->second);
        return out;
    }

    // Node-to-node links: connected iff the two nodes share at least one
    // path (sign of Q^T Q with a zeroed diagonal). Rows/cols follow the
    // order of `nodes`; symmetric by construction.
    struct Adjacency {
        std::vector<int> node_ids;
        std::vector<std::vector<std::uint8_t>> matrix;
    };

    Adjacency link_adjacency() const {
        Adjacency adj;
        std::map<int, std::size_t> col;
        for (const auto& n : nodes) {
            col[n.node_id] = adj.node_ids.size();
            adj.node_ids.push_back(n.node_id);
        }
        adj.matrix.assign(adj.node_ids.size(),
                          std::vector<std::uint8_t>(adj.node_ids.size(), 0));
        for (const auto& path : paths) {
            for (std::size_t a = 0; a < path.node_ids.size(); ++a) {
                for (std::size_t b = a + 1; b < path.node_ids.size(); ++b) {
                    std::size_t i = col.at(path.node_ids[a]);
                    std::size_t j = col.at(path.node_ids[b]);
                    adj.matrix[i][j] = 1;
                    adj.matrix[j][i] = 1;
                }
            }
        }
        return adj;
    }

    nlohmann::json to_json() const {
        nlohmann::json jnodes = nlohmann::json::array();
        for (const auto& n : nodes)
            jnodes.push_back({{"id", n.node_id},
                              {"phrase", n.phrase},
                              {"centroid", n.centroid},
                              {"support", n.support},
                              {"source_pages", n.source_pages},
                              {"salience", n.salience}});
        nlohmann::json jvisual = nlohmann::json::array();
        for (const auto& v : visual_nodes)
            jvisual.push_back({{"id", v.node_id},
                               {"page_id", v.page_id},
                               {"box", v.box},
                               {"embedding", v.embedding}});
        nlohmann::json jpaths = nlohmann::json::array();
        for (const auto& p : paths)
            jpaths.push_back({{"id", p.path_id},
                              {"page_id", p.page_id},
                              {"date", to_string(p.date)},
                              {"node_ids", p.node_ids},
                              {"summary", p.summary},
                              {"original_len", p.original_len}});
        nlohmann::json jq = nlohmann::json::array();
        for (const auto& [pid, nid] : q) jq.push_back({pid, nid});
        nlohmann::json jmentions = nlohmann::json::array();
        for (const auto& m : mentions)
            jmentions.push_back({{"node_id", m.node_id},
                                 {"page_id", m.page_id},
                                 {"phrase", m.phrase},
                                 {"salience", m.salience},
                                 {"similarity", m.similarity},
                                 {"merged", m.merged}});
        return nlohmann::json{{"nodes", jnodes},       {"visual_nodes", jvisual},
                              {"paths", jpaths},       {"q", jq},
                              {"mentions", jmentions}, {"config_hash", config_hash},
                              {"next_node_id", next_node_id}, {"next_path_id", next_path_id}};
    }

    static MemoryGraph from_json(const nlohmann::json& j) {
        MemoryGraph g;
        try {
            for (const auto& n : j.at("nodes")) {
                SemanticNode node;
                node.node_id = n.at("id");
                node.phrase = n.at("phrase").get<std::string>();
                node.centroid = n.at("centroid").get<std::vector<float>>();
                node.support = n.at("support");
                node.source_pages = n.at("source_pages").get<std::set<std::string>>();
                node.salience = n.at("salience");
                g.nodes.push_back(std::move(node));
            }
            for (const auto& v : j.at("visual_nodes")) {
                VisualNode node;
                node.node_id = v.at("id");
                node.page_id = v.at("page_id").get<std::string>();
                auto box = v.at("box").get<std::vector<int>>();
                if (box.size() != 4) throw InvariantError("visual node box must have 4 entries");
                std::copy(box.begin(), box.end(), node.box.begin());
                node.embedding = v.at("embedding").get<std::vector<float>>();
                g.visual_nodes.push_back(std::move(node));
            }
            for (const auto& p : j.at("paths")) {
                EMPath path;
                path.path_id = p.at("id");
                path.page_id = p.at("page_id").get<std::string>();
                path.date = parse_date(p.at("date").get<std::string>());
                path.node_ids = p.at("node_ids").get<std::vector<int>>();
                path.summary = p.at("summary").get<std::string>();
                path.original_len = p.at("original_len");
                g.paths.push_back(std::move(path));
            }
            for (const auto& pair : j.at("q")) {
                if (!pair.is_array() || pair.size() != 2)
                    throw InvariantError("q entries must be [path_id, node_id]");
                g.q.emplace(pair.at(0).get<int>(), pair.at(1).get<int>());
            }
            if (j.contains("mentions")) {
                for (const auto& m : j.at("mentions"))
                    g.mentions.push_back(Mention{m.at("node_id"), m.at("page_id"),
                                                 m.at("phrase"), m.at("salience"),
                                                 m.at("similarity"), m.at("merged")});
            }
            g.config_hash = j.value("config_hash", "");
            g.next_node_id = j.value("next_node_id", 0);
            g.next_path_id = j.value("next_path_id", 0);
        } catch (const nlohmann::json::exception& e) {
            throw InvariantError(std::string("graph parse error: ") + e.what());
        }
        for (const auto& n : g.nodes) g.next_node_id = std::max(g.next_node_id, n.node_id + 1);
        for (const auto& v : g.visual_nodes)
            g.next_node_id = std::max(g.next_node_id, v.node_id + 1);
        for (const auto& p : g.paths) g.next_path_id = std::max(g.next_path_id, p.path_id + 1);
        g.verify();
        return g;
    }

    // Structural invariants, enforced on every load.
    void verify() const {
        std::set<int> node_ids;
        for (const auto& n : nodes) {
            if (!node_ids.insert(n.node_id).second)
                throw InvariantError("duplicate node id " + std::to_string(n.node_id));
            if (n.support < 1) throw InvariantError("node support must be >= 1");
            if (n.source_pages.empty()) throw InvariantError("node with no source pages");
            double norm = 0;
            for (float x : n.centroid) norm += static_cast<double>(x) * x;
            if (std::abs(std::sqrt(norm) - 1.0) > 1e-4)
                throw InvariantError("centroid of node " + std::to_string(n.node_id) +
                                     " is not unit-norm");
        }
        std::set<int> path_ids;
        for (const auto& p : paths) {
            if (!path_ids.insert(p.path_id).second)
                throw InvariantError("duplicate path id " + std::to_string(p.path_id));
            if (p.node_ids.empty()) throw InvariantError("empty path " + std::to_string(p.path_id));
            for (int nid : p.node_ids)
                if (!node_ids.count(nid))
                    throw InvariantError("dangling incidence: path " + std::to_string(p.path_id) +
                                         " references missing node " + std::to_string(nid));
        }
        for (const auto& [pid, nid] : q) {
            if (!path_ids.count(pid))
                throw InvariantError("dangling incidence: q references missing path " +
                                     std::to_string(pid));
            if (!node_ids.count(nid))
                throw InvariantError("dangling incidence: q references missing node " +
                                     std::to_string(nid));
        }
        // Row support must equal each path's member set.
        for (const auto& p : paths) {
            std::set<int> members(p.node_ids.begin(), p.node_ids.end());
            if (row_support(p.path_id) != members)
                throw InvariantError("incidence row of path " + std::to_string(p.path_id) +
                                     " does not match its node list");
        }
        for (const auto& m : mentions)
            if (!node_ids.count(m.node_id))
                throw InvariantError("mention references missing node " +
                                     std::to_string(m.node_id));
    }

    void save(const std::filesystem::path& path) const {
        std::filesystem::path tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary);
            if (!out) throw StoreError("cannot write graph: " + path.string());
            out << to_json().dump(2) << "\n";
        }
        std::filesystem::rename(tmp, path);
    }

    static MemoryGraph load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw StoreError("cannot open graph: " + path.string());
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw InvariantError(std::string("graph JSON parse error: ") + e.what());
        }
        return from_json(j);
    }
};

}  // namespace scrapmem
