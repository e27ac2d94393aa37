#pragma once

#include <scrapmem/errors.hpp>
#include <scrapmem/textutil.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>

namespace scrapmem {

enum class ProviderMode { mock, remote };

inline std::string to_string(ProviderMode m) { return m == ProviderMode::mock ? "mock" : "remote"; }

inline ProviderMode provider_mode_from(const std::string& s) {
    if (s == "mock" || s == "deterministic" || s == "offline") return ProviderMode::mock;
    if (s == "remote") return ProviderMode::remote;
    throw ValidationError("unknown provider mode '" + s + "' (expected mock|remote)");
}

// Everything an engine run needs to know. Loaded from a JSON file; absent
// keys keep their defaults so a config of {} is a valid offline setup.
struct EngineConfig {
    ProviderMode perception = ProviderMode::mock;
    ProviderMode embedding = ProviderMode::mock;  // mock = deterministic trigram embedder
    ProviderMode answer = ProviderMode::mock;
    ProviderMode judge = ProviderMode::mock;      // mock = token-F1 heuristic

    double tau_merge = 0.90;  // canonical-node merge threshold
    double tau_q = 0.60;      // query-node match threshold
    int day_budget = 0;       // stage-1 day budget D; 0 = auto (2k)
    int k = 10;               // retrieval budget
    std::string policy = "no-forget";  // preset name or path to a policy file
    int max_inflight = 4;
    int max_retries = 3;

    int embed_dim = 64;
    int video_keyframes = 4;
    int page_width = 1024;
    int tile_width = 512;
    int text_line_height = 16;
    double visual_node_weight = 0.0;
    std::string recall_granularity = "item";  // or "page"
    std::string prompts_dir;                  // empty = use embedded templates

    void validate() const {
        if (!(tau_merge > 0.0 && tau_merge <= 1.0))
            throw ValidationError("tau_merge must be in (0,1]");
        if (!(tau_q > 0.0 && tau_q <= 1.0)) throw ValidationError("tau_q must be in (0,1]");
        if (k < 1) throw ValidationError("k must be >= 1");
        if (day_budget < 0) throw ValidationError("day_budget must be >= 0 (0 = auto)");
        if (max_inflight < 1) throw ValidationError("max_inflight must be >= 1");
        if (embed_dim < 1) throw ValidationError("embed_dim must be >= 1");
        if (video_keyframes < 1) throw ValidationError("video_keyframes must be >= 1");
        if (page_width < 1 || tile_width < 1 || page_width % tile_width != 0)
            throw ValidationError("page_width must be a positive multiple of tile_width");
        if (recall_granularity != "item" && recall_granularity != "page")
            throw ValidationError("recall_granularity must be item|page");
    }

    int effective_day_budget() const { return day_budget > 0 ? day_budget : 2 * k; }

    // Hash over the knobs that shape the persisted graph. Retrieval-only
    // settings (k, D) are deliberately excluded.
    std::string graph_config_hash() const {
        std::string key = std::to_string(tau_merge) + "|" + std::to_string(tau_q) + "|" +
                          std::to_string(embed_dim) + "|" + to_string(embedding) + "|" +
                          std::to_string(video_keyframes) + "|" + std::to_string(page_width) +
                          "|" + std::to_string(tile_width) + "|" +
                          std::to_string(text_line_height) + "|" +
                          std::to_string(visual_node_weight);
        return to_hex(fnv1a64(key));
    }
};

inline void from_json_into(const nlohmann::json& j, EngineConfig& c) {
    if (j.contains("providers")) {
        const auto& p = j.at("providers");
        if (p.contains("perception")) c.perception = provider_mode_from(p.at("perception"));
        if (p.contains("embedding")) c.embedding = provider_mode_from(p.at("embedding"));
        if (p.contains("answer")) c.answer = provider_mode_from(p.at("answer"));
        if (p.contains("judge")) c.judge = provider_mode_from(p.at("judge"));
    }
    if (j.contains("tau_merge")) c.tau_merge = j.at("tau_merge");
    if (j.contains("tau_q")) c.tau_q = j.at("tau_q");
    if (j.contains("day_budget")) c.day_budget = j.at("day_budget");
    if (j.contains("k")) c.k = j.at("k");
    if (j.contains("policy")) c.policy = j.at("policy");
    if (j.contains("max_inflight")) c.max_inflight = j.at("max_inflight");
    if (j.contains("max_retries")) c.max_retries = j.at("max_retries");
    if (j.contains("embed_dim")) c.embed_dim = j.at("embed_dim");
    if (j.contains("video_keyframes")) c.video_keyframes = j.at("video_keyframes");
    if (j.contains("page")) {
        const auto& p = j.at("page");
        if (p.contains("width")) c.page_width = p.at("width");
        if (p.contains("tile_width")) c.tile_width = p.at("tile_width");
        if (p.contains("line_height")) c.text_line_height = p.at("line_height");
    }
    if (j.contains("visual_node_weight")) c.visual_node_weight = j.at("visual_node_weight");
    if (j.contains("recall_granularity")) c.recall_granularity = j.at("recall_granularity");
    if (j.contains("prompts_dir")) c.prompts_dir = j.at("prompts_dir");
}

inline nlohmann::json to_json(const EngineConfig& c) {
    return nlohmann::json{
        {"providers",
         {{"perception", to_string(c.perception)},
          {"embedding", to_string(c.embedding)},
          {"answer", to_string(c.answer)},
          {"judge", to_string(c.judge)}}},
        {"tau_merge", c.tau_merge},
        {"tau_q", c.tau_q},
        {"day_budget", c.day_budget},
        {"k", c.k},
        {"policy", c.policy},
        {"max_inflight", c.max_inflight},
        {"max_retries", c.max_retries},
        {"embed_dim", c.embed_dim},
        {"video_keyframes", c.video_keyframes},
        {"page",
         {{"width", c.page_width},
          {"tile_width", c.tile_width},
          {"line_height", c.text_line_height}}},
        {"visual_node_weight", c.visual_node_weight},
        {"recall_granularity", c.recall_granularity},
        {"prompts_dir", c.prompts_dir}};
}

inline EngineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config parse error in " + path.string() + ": " + e.what());
    }
    EngineConfig c;
    try {
        from_json_into(j, c);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config field error in " + path.string() + ": " + e.what());
    }
    c.validate();
    return c;
}

}  // namespace scrapmem
