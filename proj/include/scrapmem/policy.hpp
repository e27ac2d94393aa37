#pragma once
// Staged degradation policies: per-stage JPEG quality and resolution scale
// selected by page age. Five presets ship with the engine; arbitrary
// policies load from JSON files with the same invariants.

#include <scrapmem/errors.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace scrapmem {

enum class Stage { recent = 0, mid = 1, old = 2 };

inline std::string to_string(Stage s) {
    switch (s) {
        case Stage::recent: return "recent";
        case Stage::mid: return "mid";
        default: return "old";
    }
}

inline Stage stage_from(const std::string& s) {
    if (s == "recent") return Stage::recent;
    if (s == "mid") return Stage::mid;
    if (s == "old") return Stage::old;
    throw ValidationError("unknown stage '" + s + "'");
}

struct ForgettingPolicy {
    std::string name;
    int t1 = 180;  // recent/mid boundary, days
    int t2 = 730;  // mid/old boundary, days
    std::array<int, 3> quality = {100, 100, 100};     // recent, mid, old
    std::array<double, 3> scale = {1.0, 1.0, 1.0};    // recent, mid, old

    int quality_for(Stage s) const { return quality[static_cast<int>(s)]; }
    double scale_for(Stage s) const { return scale[static_cast<int>(s)]; }

    void validate() const {
        if (!(0 < t1 && t1 < t2))
            throw ValidationError("policy '" + name + "': boundaries must satisfy 0 < t1 < t2");
        for (int q : quality)
            if (q < 1 || q > 100)
                throw ValidationError("policy '" + name + "': quality must be in 1..100");
        for (double s : scale)
            if (!(s > 0.0 && s <= 1.0))
                throw ValidationError("policy '" + name + "': scale must be in (0,1]");
        // Deeper stages never gain fidelity.
        if (!(quality[0] >= quality[1] && quality[1] >= quality[2]))
            throw ValidationError("policy '" + name + "': quality must be non-increasing");
        if (!(scale[0] >= scale[1] && scale[1] >= scale[2]))
            throw ValidationError("policy '" + name + "': scale must be non-increasing");
    }
};

// recent iff age <= t1, mid iff t1 < age <= t2, old iff age > t2.
inline Stage stage_of(int age_days, const ForgettingPolicy& policy) {
    if (age_days < 0) throw ValidationError("age_days must be >= 0");
    if (age_days <= policy.t1) return Stage::recent;
    if (age_days <= policy.t2) return Stage::mid;
    return Stage::old;
}

// Per-page fidelity. Legibility (quality/100 * scale) is the proxy that
// drives node fading; it is 1.0 for a freshly rendered page.
struct DegradationState {
    Stage stage = Stage::recent;
    int applied_quality = 100;
    double applied_scale = 1.0;

    double legibility() const { return applied_quality / 100.0 * applied_scale; }
};

inline const std::vector<ForgettingPolicy>& policy_presets() {
    static const std::vector<ForgettingPolicy> presets = {
        {"no-forget", 180, 730, {100, 100, 100}, {1.0, 1.0, 1.0}},
        {"very_soft", 180, 730, {95, 82, 70}, {1.0, 0.95, 0.85}},
        {"softer_old", 180, 730, {90, 75, 60}, {1.0, 0.90, 0.80}},
        {"timed-gentle", 180, 730, {90, 70, 40}, {1.0, 0.85, 0.60}},
        {"boundary_365", 365, 900, {95, 75, 55}, {1.0, 0.90, 0.75}},
    };
    return presets;
}

inline nlohmann::json to_json(const ForgettingPolicy& p) {
    return nlohmann::json{{"name", p.name},
                          {"boundaries", {p.t1, p.t2}},
                          {"quality", p.quality},
                          {"scale", p.scale}};
}

inline ForgettingPolicy policy_from_json(const nlohmann::json& j) {
    ForgettingPolicy p;
    try {
        p.name = j.at("name").get<std::string>();
        auto b = j.at("boundaries").get<std::vector<int>>();
        if (b.size() != 2) throw ValidationError("policy boundaries must be [t1, t2]");
        p.t1 = b[0];
        p.t2 = b[1];
        auto q = j.at("quality").get<std::vector<int>>();
        auto s = j.at("scale").get<std::vector<double>>();
        if (q.size() != 3 || s.size() != 3)
            throw ValidationError("policy quality/scale must have 3 entries");
        std::copy(q.begin(), q.end(), p.quality.begin());
        std::copy(s.begin(), s.end(), p.scale.begin());
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("policy parse error: ") + e.what());
    }
    p.validate();
    return p;
}

// Accepts one of the five preset names or a path to a policy JSON file.
inline ForgettingPolicy load_policy(const std::string& name_or_path) {
    for (const auto& p : policy_presets())
        if (p.name == name_or_path) return p;
    if (std::filesystem::exists(name_or_path)) {
        std::ifstream in(name_or_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("policy file parse error: " + std::string(e.what()));
        }
        return policy_from_json(j);
    }
    std::string names;
    for (const auto& p : policy_presets()) names += (names.empty() ? "" : ", ") + p.name;
    throw ValidationError("unknown policy '" + name_or_path + "' (presets: " + names + ")");
}

struct StorageReport {
    std::uint64_t scrapbook_bytes = 0;
    std::uint64_t graph_bytes = 0;
    std::uint64_t total_bytes = 0;
    std::uint64_t baseline_bytes = 0;
    double saving_fraction = 0.0;  // 1 - total/baseline, 0 when baseline is 0
};

inline StorageReport make_storage_report(std::uint64_t scrapbook_bytes,
                                         std::uint64_t graph_bytes,
                                         std::uint64_t baseline_bytes) {
    StorageReport r;
    r.scrapbook_bytes = scrapbook_bytes;
    r.graph_bytes = graph_bytes;
    r.total_bytes = scrapbook_bytes + graph_bytes;
    r.baseline_bytes = baseline_bytes;
    if (baseline_bytes > 0)
        r.saving_fraction = 1.0 - static_cast<double>(r.total_bytes) / baseline_bytes;
    return r;
}

inline nlohmann::json to_json(const StorageReport& r) {
    return nlohmann::json{{"scrapbook_bytes", r.scrapbook_bytes},
                          {"graph_bytes", r.graph_bytes},
                          {"total_bytes", r.total_bytes},
                          {"baseline_bytes", r.baseline_bytes},
                          {"saving_fraction", r.saving_fraction}};
}

}  // namespace scrapmem
