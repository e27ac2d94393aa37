#pragma once
// Corpus ingestion: a JSONL manifest of timestamped multimodal records is
// validated and bucketed by UTC day. The corpus is immutable after ingest
// and source media files are never touched.

#include <scrapmem/errors.hpp>
#include <scrapmem/time.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace scrapmem {

enum class MediaKind { image, video, text };

inline std::string to_string(MediaKind k) {
    switch (k) {
        case MediaKind::image: return "image";
        case MediaKind::video: return "video";
        default: return "text";
    }
}

inline MediaKind media_kind_from(const std::string& s) {
    if (s == "image") return MediaKind::image;
    if (s == "video") return MediaKind::video;
    if (s == "text") return MediaKind::text;
    throw ValidationError("unknown media kind '" + s + "'");
}

struct MediaItem {
    std::string id;
    MediaKind kind = MediaKind::text;
    UtcInstant timestamp;
    std::string timestamp_raw;  // as written in the manifest
    std::string payload;        // inline text, or a path relative to the corpus root
    std::map<std::string, std::string> meta;
};

struct Corpus {
    std::filesystem::path root;  // directory holding manifest + media
    std::vector<MediaItem> items;
    std::map<CivilDate, std::vector<std::string>> by_day;  // ids ordered by (timestamp, id)
    std::unordered_map<std::string, std::size_t> index;    // id -> items offset

    const MediaItem& item(const std::string& id) const {
        auto it = index.find(id);
        if (it == index.end()) throw StoreError("unknown media item id '" + id + "'");
        return items[it->second];
    }
    bool has_item(const std::string& id) const { return index.count(id) != 0; }

    std::map<std::string, std::size_t> kind_counts() const {
        std::map<std::string, std::size_t> counts{{"image", 0}, {"video", 0}, {"text", 0}};
        for (const auto& it : items) ++counts[to_string(it.kind)];
        return counts;
    }
};

namespace detail {
inline bool is_blank_line(const std::string& s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}
}  // namespace detail

inline MediaItem parse_manifest_line(const std::string& line, int line_no) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("manifest line " + std::to_string(line_no) +
                              ": invalid JSON: " + e.what());
    }
    MediaItem item;
    try {
        item.id = j.at("id").get<std::string>();
        item.kind = media_kind_from(j.at("kind").get<std::string>());
        item.timestamp_raw = j.at("timestamp").get<std::string>();
        item.payload = j.at("payload").get<std::string>();
        if (j.contains("meta"))
            item.meta = j.at("meta").get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("manifest line " + std::to_string(line_no) + ": " + e.what());
    }
    if (item.id.empty())
        throw ValidationError("manifest line " + std::to_string(line_no) + ": empty id");
    try {
        item.timestamp = parse_iso8601(item.timestamp_raw);
    } catch (const ValidationError& e) {
        throw ValidationError("manifest line " + std::to_string(line_no) + ": " + e.what());
    }
    return item;
}

inline nlohmann::json manifest_json(const MediaItem& item) {
    return nlohmann::json{{"id", item.id},
                          {"kind", to_string(item.kind)},
                          {"timestamp", item.timestamp_raw},
                          {"payload", item.payload},
                          {"meta", item.meta}};
}

// Parses and validates the whole manifest. Rejects duplicate ids (with the
// offending line number), unparseable timestamps, and media payloads that do
// not resolve to a file under the manifest's directory.
inline Corpus ingest(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw ValidationError("cannot open manifest: " + manifest_path.string());

    Corpus corpus;
    corpus.root = manifest_path.parent_path();

    std::string line;
    int line_no = 0;
    std::unordered_set<std::string> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_blank_line(line)) continue;
        MediaItem item = parse_manifest_line(line, line_no);
        if (!seen.insert(item.id).second)
            throw ValidationError("manifest line " + std::to_string(line_no) +
                                  ": duplicate id '" + item.id + "'");
        if (item.kind != MediaKind::text) {
            std::filesystem::path media = corpus.root / item.payload;
            if (!std::filesystem::exists(media))
                throw ValidationError("manifest line " + std::to_string(line_no) +
                                      ": missing media file: " + media.string());
        }
        corpus.items.push_back(std::move(item));
    }

    for (std::size_t i = 0; i < corpus.items.size(); ++i) {
        corpus.index[corpus.items[i].id] = i;
        corpus.by_day[corpus.items[i].timestamp.utc_date()].push_back(corpus.items[i].id);
    }
    for (auto& [date, ids] : corpus.by_day) {
        std::sort(ids.begin(), ids.end(), [&](const std::string& a, const std::string& b) {
            const MediaItem& x = corpus.item(a);
            const MediaItem& y = corpus.item(b);
            if (x.timestamp != y.timestamp) return x.timestamp < y.timestamp;
            return a < b;
        });
    }
    return corpus;
}

// Canonical manifest serialization: items in global (timestamp, id) order,
// one compact JSON object per line. Ingesting the same manifest twice
// persists byte-identical state.
inline void save_manifest(const Corpus& corpus, const std::filesystem::path& path) {
    std::vector<const MediaItem*> ordered;
    ordered.reserve(corpus.items.size());
    for (const auto& it : corpus.items) ordered.push_back(&it);
    std::sort(ordered.begin(), ordered.end(), [](const MediaItem* a, const MediaItem* b) {
        if (a->timestamp != b->timestamp) return a->timestamp < b->timestamp;
        return a->id < b->id;
    });
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StoreError("cannot write manifest: " + path.string());
    for (const MediaItem* it : ordered) out << manifest_json(*it).dump() << "\n";
}

}  // namespace scrapmem
