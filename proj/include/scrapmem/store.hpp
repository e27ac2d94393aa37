#pragma once
// On-disk layout of a memory store:
//
//   store/
//     store.json        corpus location + config hash
//     manifest.jsonl    validated manifest copy (canonical order)
//     pages/            page-YYYY-MM-DD.jpg + .json sidecars
//     graph.json        the episodic memory graph
//     build.journal     page ids already consolidated (resume/no-op rebuilds)
//     forget.journal    one JSONL record per page per forget pass
//     reports/          eval runs, failure CSVs
//     .lock             exists while a writer command runs
//
// Everything is plain files so stores can be inspected and diffed.

#include <scrapmem/corpus.hpp>
#include <scrapmem/emgraph.hpp>
#include <scrapmem/errors.hpp>
#include <scrapmem/pagebuilder.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

namespace scrapmem {

class Store {
public:
    explicit Store(std::filesystem::path root) : root_(std::move(root)) {}

    const std::filesystem::path& root() const { return root_; }
    std::filesystem::path store_meta_path() const { return root_ / "store.json"; }
    std::filesystem::path manifest_path() const { return root_ / "manifest.jsonl"; }
    std::filesystem::path pages_dir() const { return root_ / "pages"; }
    std::filesystem::path graph_path() const { return root_ / "graph.json"; }
    std::filesystem::path build_journal_path() const { return root_ / "build.journal"; }
    std::filesystem::path forget_journal_path() const { return root_ / "forget.journal"; }
    std::filesystem::path reports_dir() const { return root_ / "reports"; }
    std::filesystem::path lock_path() const { return root_ / ".lock"; }

    bool exists() const { return std::filesystem::exists(store_meta_path()); }

    void init_skeleton(const Corpus& corpus, const std::string& config_hash) {
        std::filesystem::create_directories(root_);
        std::filesystem::create_directories(pages_dir());
        std::filesystem::create_directories(reports_dir());
        save_manifest(corpus, manifest_path());
        nlohmann::json meta{{"corpus_dir", corpus.root.string()},
                            {"config_hash", config_hash},
                            {"schema", 1}};
        std::ofstream out(store_meta_path(), std::ios::binary);
        if (!out) throw StoreError("cannot write " + store_meta_path().string());
        out << meta.dump(2) << "\n";
    }

    nlohmann::json meta() const {
        std::ifstream in(store_meta_path());
        if (!in) throw StoreError("not a memory store (missing store.json): " + root_.string());
        nlohmann::json j;
        in >> j;
        return j;
    }

    Corpus load_corpus() const {
        Corpus corpus = ingest(manifest_path());
        // media paths resolve against the original corpus directory
        corpus.root = std::filesystem::path(meta().at("corpus_dir").get<std::string>());
        return corpus;
    }

    MemoryGraph load_graph() const {
        if (!std::filesystem::exists(graph_path())) return MemoryGraph{};
        MemoryGraph g = MemoryGraph::load(graph_path());
        std::string expected = meta().value("config_hash", "");
        if (!expected.empty() && !g.config_hash.empty() && g.config_hash != expected)
            std::cerr << "[scrapmem] warning: graph was built with a different config ("
                      << g.config_hash << " vs " << expected << ")\n";
        return g;
    }

    void save_graph(const MemoryGraph& graph) const { graph.save(graph_path()); }

    ScrapbookPage load_page(const std::string& page_id) const {
        return scrapmem::load_page(pages_dir(), page_id);
    }
    void save_page(const ScrapbookPage& page) const { scrapmem::save_page(pages_dir(), page); }

    std::vector<std::string> page_ids() const {
        std::vector<std::string> ids;
        if (!std::filesystem::exists(pages_dir())) return ids;
        for (const auto& entry : std::filesystem::directory_iterator(pages_dir())) {
            if (entry.path().extension() == ".jpg")
                ids.push_back(entry.path().stem().string());
        }
        std::sort(ids.begin(), ids.end());
        return ids;
    }

    std::set<std::string> built_page_ids() const {
        std::set<std::string> done;
        std::ifstream in(build_journal_path());
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            done.insert(nlohmann::json::parse(line).at("page_id").get<std::string>());
        }
        return done;
    }

    void journal_built_page(const std::string& page_id) const {
        std::ofstream out(build_journal_path(), std::ios::app | std::ios::binary);
        out << nlohmann::json{{"page_id", page_id}}.dump() << "\n";
    }

    void journal_forget(const nlohmann::json& record) const {
        std::ofstream out(forget_journal_path(), std::ios::app | std::ios::binary);
        out << record.dump() << "\n";
    }

    std::uint64_t pages_bytes() const {
        std::uint64_t total = 0;
        if (!std::filesystem::exists(pages_dir()))
            throw StoreError("missing pages directory: " + pages_dir().string());
        for (const auto& entry : std::filesystem::directory_iterator(pages_dir()))
            if (entry.is_regular_file()) total += entry.file_size();
        return total;
    }

    std::uint64_t graph_bytes() const {
        if (!std::filesystem::exists(graph_path()))
            throw StoreError("missing graph file: " + graph_path().string());
        return std::filesystem::file_size(graph_path());
    }

private:
    std::filesystem::path root_;
};

// RAII single-writer lock. Creation fails if another writer holds the store.
class WriterLock {
public:
    explicit WriterLock(const Store& store) : path_(store.lock_path()) {
        std::filesystem::create_directories(path_.parent_path());
        if (std::filesystem::exists(path_))
            throw StoreError("store is locked by another writer: " + path_.string() +
                             " (remove the file if that writer crashed)");
        std::ofstream out(path_, std::ios::binary);
        out << "locked\n";
    }
    ~WriterLock() {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    WriterLock(const WriterLock&) = delete;
    WriterLock& operator=(const WriterLock&) = delete;

private:
    std::filesystem::path path_;
};

// Raw size of the source corpus: media file bytes plus inline text payload
// bytes. Used as the default storage baseline.
inline std::uint64_t corpus_raw_bytes(const Corpus& corpus) {
    std::uint64_t total = 0;
    for (const auto& item : corpus.items) {
        if (item.kind == MediaKind::text) {
            total += item.payload.size();
        } else {
            std::filesystem::path media = corpus.root / item.payload;
            if (std::filesystem::exists(media)) total += std::filesystem::file_size(media);
        }
    }
    return total;
}

}  // namespace scrapmem
