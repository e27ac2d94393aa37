#pragma once
// Shared test fixtures: temp directories, synthetic corpora (text + noisy
// images + watermarked clips), random pages, and random graphs. All
// generation is seeded; nothing here touches the network.

#include <scrapmem/scrapmem.hpp>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using namespace scrapmem;

inline std::filesystem::path fresh_dir(const std::string& name) {
    static std::atomic<int> counter{0};
    auto dir = std::filesystem::temp_directory_path() /
               ("scrapmem_" + name + "_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline Raster noisy_image(std::mt19937& rng, int width = 640, int height = 480) {
    Raster img(height, width, CV_8UC3);
    std::uniform_int_distribution<int> d(0, 255);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            img.at<cv::Vec3b>(y, x) = {static_cast<unsigned char>(d(rng)),
                                       static_cast<unsigned char>(d(rng)),
                                       static_cast<unsigned char>(d(rng))};
    cv::GaussianBlur(img, img, {5, 5}, 1.5);
    return img;
}

// MJPEG AVI whose frame index is encoded in the frame's solid gray value.
inline void write_watermarked_clip(const std::filesystem::path& path, int frames,
                                   double fps = 2.0) {
    cv::VideoWriter writer(path.string(), cv::CAP_OPENCV_MJPEG,
                           cv::VideoWriter::fourcc('M', 'J', 'P', 'G'), fps, {160, 120});
    for (int i = 0; i < frames; ++i) {
        int v = (i * 2) % 256;  // even values survive JPEG wobble checks with tolerance
        cv::Mat frame(120, 160, CV_8UC3, cv::Scalar(v, v, v));
        writer.write(frame);
    }
}

inline int frame_value(const Raster& frame) {
    cv::Vec3b px = frame.at<cv::Vec3b>(60, 80);
    return (px[0] + px[1] + px[2]) / 3;
}

struct ManifestItem {
    std::string id;
    std::string kind;
    std::string timestamp;
    std::string payload;
    std::map<std::string, std::string> meta;
};

inline std::filesystem::path write_corpus(const std::filesystem::path& dir,
                                          const std::vector<ManifestItem>& items) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "manifest.jsonl", std::ios::binary);
    for (const auto& item : items)
        out << nlohmann::json{{"id", item.id},
                              {"kind", item.kind},
                              {"timestamp", item.timestamp},
                              {"payload", item.payload},
                              {"meta", item.meta}}
                   .dump()
            << "\n";
    return dir / "manifest.jsonl";
}

// --- synthetic benchmark corpus ---------------------------------------------
//
// One page per day: a text record whose subject is a unique two-word entity
// (the mock tokenizer's rank-1 phrase) plus a noisy photo that dominates the
// page's byte budget. Questions ask for the entity; evidence is the text id.

struct SyntheticCorpus {
    std::filesystem::path dir;
    std::vector<BenchmarkQuestion> questions;
    CivilDate first_date;
    CivilDate last_date;
};

inline std::string entity_name(int i) {
    static const char* adjectives[] = {"Amber", "Blue",  "Coral", "Dusty",
                                       "Emerald", "Frost", "Golden", "Hazel"};
    static const char* nouns[] = {"Harbor", "Garden", "Museum", "Bakery",
                                  "Station", "Meadow", "Castle", "Lagoon"};
    return std::string(adjectives[i % 8]) + " " + nouns[(i / 8) % 8] +
           (i >= 64 ? " " + std::to_string(i) : "");
}

inline SyntheticCorpus make_synthetic_corpus(unsigned seed, int days, const CivilDate& start,
                                             bool with_images = true) {
    SyntheticCorpus fx;
    fx.dir = fresh_dir("corpus");
    std::mt19937 rng(seed);
    std::vector<ManifestItem> items;
    std::uniform_int_distribution<int> cost(20, 950);

    for (int d = 0; d < days; ++d) {
        CivilDate date = civil_from_days(days_from_civil(start) + d);
        std::string ds = to_string(date);
        std::string entity = entity_name(d);
        std::string text_id = "t-" + ds;

        ManifestItem text;
        text.id = text_id;
        text.kind = "text";
        text.timestamp = ds + "T09:1" + std::to_string(d % 10);
        text.meta["subject"] = entity;
        text.payload = "Confirmation for " + entity + " on " + ds + ". Total " +
                       std::to_string(cost(rng)) + " EUR for 2 guests. Reference code " +
                       std::to_string(1000 + d) + " issued.";
        items.push_back(text);

        if (with_images) {
            std::string img_id = "i-" + ds;
            std::string img_file = "img-" + ds + ".png";
            cv::imwrite((fx.dir / img_file).string(), noisy_image(rng));
            ManifestItem img;
            img.id = img_id;
            img.kind = "image";
            img.timestamp = ds + "T14:05";
            img.payload = img_file;
            img.meta["summary"] = "photo near " + to_lower(entity);
            items.push_back(img);
        }

        BenchmarkQuestion q;
        q.qid = "q-" + ds;
        q.question = "Where is " + entity + "?";
        q.qtype = QType::open_end;
        q.answer = to_lower(entity);
        q.evidence = {text_id};
        fx.questions.push_back(std::move(q));

        if (d == 0) fx.first_date = date;
        fx.last_date = date;
    }
    write_corpus(fx.dir, items);
    return fx;
}

// Ingest + build with mock providers; returns the store root.
inline std::filesystem::path build_store_from_corpus(const std::filesystem::path& corpus_dir,
                                                     const EngineConfig& config) {
    auto store_dir = fresh_dir("store");
    Corpus corpus = ingest(corpus_dir / "manifest.jsonl");
    Store store(store_dir);
    store.init_skeleton(corpus, config.graph_config_hash());
    ProviderBundle providers = make_providers(config, store);
    build_store(store, config, providers);
    return store_dir;
}

// --- random pages for degradation physics -----------------------------------

inline ScrapbookPage random_page(std::mt19937& rng, const PageLayout& layout) {
    std::uniform_int_distribution<int> n_units(1, 5);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> words(4, 40);
    std::uniform_int_distribution<int> img_w(120, 700);
    std::uniform_int_distribution<int> img_h(90, 500);
    static const char* vocab[] = {"harbor", "ticket", "museum", "receipt", "garden",
                                  "flight", "dinner", "market", "castle", "bakery"};

    std::vector<PageUnit> units;
    int n = n_units(rng);
    for (int i = 0; i < n; ++i) {
        PageUnit u;
        u.unit_id = "u" + std::to_string(i);
        u.source_id = u.unit_id;
        if (kind(rng) == 0) {
            u.is_text = true;
            u.header = "TS 10:0" + std::to_string(i);
            int w = words(rng);
            for (int j = 0; j < w; ++j)
                u.body += std::string(vocab[rng() % 10]) + (j + 1 < w ? " " : "");
        } else {
            u.image = noisy_image(rng, img_w(rng), img_h(rng));
        }
        units.push_back(std::move(u));
    }
    std::uniform_int_distribution<int> day(0, 2000);
    CivilDate date = civil_from_days(days_from_civil({2020, 1, 1}) + day(rng));
    return consolidate(date, units, layout);
}

// --- random graphs for pruning properties -----------------------------------

struct RandomGraph {
    MemoryGraph graph;
    std::vector<LostMention> all_mentions;  // candidates to fade
};

inline RandomGraph make_random_graph(std::mt19937& rng, int max_nodes = 50, int max_paths = 30) {
    RandomGraph fx;
    DeterministicEmbedder embedder(64);
    std::uniform_int_distribution<int> n_nodes_d(2, max_nodes);
    std::uniform_int_distribution<int> n_paths_d(1, max_paths);
    const int n_nodes = n_nodes_d(rng);
    const int n_paths = n_paths_d(rng);

    std::vector<std::string> phrases;
    for (int i = 0; i < n_nodes; ++i)
        phrases.push_back("node " + std::to_string(i) + " " + std::to_string(rng()));

    std::uniform_real_distribution<double> salience(0.0, 1.0);
    for (int p = 0; p < n_paths; ++p) {
        std::string page_id = "page-p" + std::to_string(p);
        CivilDate date = civil_from_days(days_from_civil({2022, 1, 1}) + p);
        int len = 1 + static_cast<int>(rng() % 8);
        std::vector<int> members;
        std::set<int> used;
        for (int j = 0; j < len; ++j) {
            int pick = static_cast<int>(rng() % phrases.size());
            if (!used.insert(pick).second) continue;
            int nid = fx.graph.merge_or_insert(phrases[pick], embedder.embed(phrases[pick]),
                                               page_id, salience(rng), 0.999);
            members.push_back(nid);
            fx.all_mentions.push_back(LostMention{page_id, nid, phrases[pick], 0.0});
        }
        if (!members.empty())
            fx.graph.add_path(page_id, date, members, "summary " + std::to_string(p));
    }
    return fx;
}

}  // namespace fixtures
