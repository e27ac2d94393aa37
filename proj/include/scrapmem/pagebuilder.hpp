#pragma once
// Temporal consolidation: one day's records become a single scrapbook page
// raster. Tiles fill a fixed-width grid left-to-right, top-to-bottom in
// timestamp order; each grid row is as tall as its tallest tile. Rendering
// is a pure function of (items, layout), so identical inputs give
// byte-identical JPEG buffers.

#include <scrapmem/corpus.hpp>
#include <scrapmem/font.hpp>
#include <scrapmem/policy.hpp>
#include <scrapmem/raster.hpp>
#include <scrapmem/textutil.hpp>
#include <scrapmem/time.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace scrapmem {

struct PageLayout {
    int page_width = 1024;
    int tile_width = 512;
    int text_line_height = 16;
    int text_scale = 1;  // integer glyph magnification
    std::string font_id = font::kFontId;

    int columns() const { return page_width / tile_width; }
    void validate() const {
        if (page_width < 1 || tile_width < 1 || page_width % tile_width != 0)
            throw ValidationError("page_width must be a positive multiple of tile_width");
        if (text_line_height < font::kGlyphHeight * text_scale)
            throw ValidationError("text_line_height too small for the font");
    }
};

// One unit of page layout. Text items map 1:1; a video item arrives as
// several raster units whose ids are "<item_id>#k<i>".
struct PageUnit {
    std::string unit_id;
    std::string source_id;
    bool is_text = false;
    std::string header;   // "TS hh:mm | subject" line for text units
    std::string body;
    std::string caption;  // optional annotation carried by visual units
    Raster image;         // raster units only
};

struct LayoutBox {
    std::string unit_id;
    int x = 0, y = 0, w = 0, h = 0;
};

// Text block rendered onto a page; kept in the sidecar so offline
// perception can read the page without OCR.
struct PageText {
    std::string item_id;
    std::string header;
    std::string body;
};

struct ScrapbookPage {
    std::string page_id;  // "page-YYYY-MM-DD"
    CivilDate date;
    std::vector<std::string> source_ids;  // original item ids, timestamp order
    std::vector<std::uint8_t> raster;     // JPEG buffer
    int width = 0, height = 0;
    DegradationState fidelity;
    std::vector<LayoutBox> layout;
    std::vector<PageText> texts;
    std::vector<std::string> captions;  // annotations of visual items, item order
};

inline std::string page_id_for(const CivilDate& date) { return "page-" + to_string(date); }

inline std::size_t page_bytes(const ScrapbookPage& page) { return page.raster.size(); }

namespace layout_detail {

constexpr int kTilePad = 6;  // inner margin on every tile side

// Whitespace-splitting that keeps punctuation attached to words.
inline std::vector<std::string> word_tokens_with_punct(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) {
                out.push_back(cur);
                cur.clear();
            }
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline std::vector<std::string> wrap_text(const std::string& text, int max_cols) {
    std::vector<std::string> lines;
    if (max_cols < 1) max_cols = 1;
    for (const std::string& para : split_any(text, "\n")) {
        std::string line;
        for (const std::string& word : word_tokens_with_punct(para)) {
            if (line.empty()) {
                line = word;
            } else if (static_cast<int>(line.size() + 1 + word.size()) <= max_cols) {
                line += " " + word;
            } else {
                lines.push_back(line);
                line = word;
            }
            while (static_cast<int>(line.size()) > max_cols) {
                lines.push_back(line.substr(0, max_cols));
                line = line.substr(max_cols);
            }
        }
        lines.push_back(line);
    }
    return lines;
}

}  // namespace layout_detail

// Tile height before grid placement. Shared by the renderer and by tests'
// independent layout arithmetic.
inline int tile_height_for(const PageUnit& unit, const PageLayout& layout) {
    using namespace layout_detail;
    if (unit.is_text) {
        int cols = (layout.tile_width - 2 * kTilePad) / (font::kGlyphWidth * layout.text_scale);
        int lines = 1 + static_cast<int>(wrap_text(unit.body, cols).size());  // header + body
        return lines * layout.text_line_height + 2 * kTilePad;
    }
    int inner = layout.tile_width - 2 * kTilePad;
    int h = static_cast<int>(
        std::llround(static_cast<double>(unit.image.rows) * inner / unit.image.cols));
    if (h < 1) h = 1;
    return h + 2 * kTilePad;
}

// Renders one day's units into a page. Fresh pages carry the no-forget
// fidelity: JPEG quality 100, scale 1.0.
inline ScrapbookPage consolidate(const CivilDate& date, const std::vector<PageUnit>& units,
                                 const PageLayout& layout) {
    layout.validate();
    if (units.empty())
        throw ValidationError("consolidate: empty item list for " + to_string(date));
    using namespace layout_detail;

    const int cols = layout.columns();
    std::vector<int> heights(units.size());
    for (std::size_t i = 0; i < units.size(); ++i) heights[i] = tile_height_for(units[i], layout);

    // Row heights: max tile height per grid row.
    int page_height = 0;
    std::vector<int> row_y;
    for (std::size_t r = 0; r * cols < units.size(); ++r) {
        row_y.push_back(page_height);
        int row_h = 0;
        for (std::size_t c = 0; c < static_cast<std::size_t>(cols); ++c) {
            std::size_t i = r * cols + c;
            if (i < units.size()) row_h = std::max(row_h, heights[i]);
        }
        page_height += row_h;
    }

    ScrapbookPage page;
    page.page_id = page_id_for(date);
    page.date = date;
    page.width = layout.page_width;
    page.height = page_height;
    page.fidelity = DegradationState{Stage::recent, 100, 1.0};

    Raster img = solid_raster(layout.page_width, page_height);
    for (std::size_t i = 0; i < units.size(); ++i) {
        const PageUnit& unit = units[i];
        int col = static_cast<int>(i % cols);
        int row = static_cast<int>(i / cols);
        int x = col * layout.tile_width;
        int y = row_y[static_cast<std::size_t>(row)];
        int w = layout.tile_width;
        int h = heights[i];
        if (unit.is_text) {
            int text_cols =
                (layout.tile_width - 2 * kTilePad) / (font::kGlyphWidth * layout.text_scale);
            int ty = y + kTilePad;
            draw_text_line(img, x + kTilePad, ty, unit.header, layout.text_scale);
            ty += layout.text_line_height;
            for (const std::string& line : wrap_text(unit.body, text_cols)) {
                draw_text_line(img, x + kTilePad, ty, line, layout.text_scale);
                ty += layout.text_line_height;
            }
        } else {
            Raster scaled = resize_to_width(unit.image, layout.tile_width - 2 * kTilePad);
            blit(img, scaled, x + kTilePad, y + kTilePad);
        }
        page.layout.push_back(LayoutBox{unit.unit_id, x, y, w, h});
        if (std::find(page.source_ids.begin(), page.source_ids.end(), unit.source_id) ==
            page.source_ids.end())
            page.source_ids.push_back(unit.source_id);
        if (unit.is_text)
            page.texts.push_back(PageText{unit.source_id, unit.header, unit.body});
        if (!unit.caption.empty()) page.captions.push_back(unit.caption);
    }

    page.raster = encode_jpeg(img, 100);
    return page;
}

inline std::string caption_of(const MediaItem& item) {
    auto it = item.meta.find("summary");
    if (it == item.meta.end()) it = item.meta.find("caption");
    return it == item.meta.end() ? std::string() : it->second;
}

// Expands a day's media items into layout units: text as header+body blocks,
// images decoded, videos sampled into keyframe tiles.
inline std::vector<PageUnit> expand_items(const Corpus& corpus,
                                          const std::vector<std::string>& ids,
                                          int video_keyframes) {
    std::vector<PageUnit> units;
    for (const std::string& id : ids) {
        const MediaItem& item = corpus.item(id);
        if (item.kind == MediaKind::text) {
            PageUnit u;
            u.unit_id = id;
            u.source_id = id;
            u.is_text = true;
            char hm[8];
            int mod = item.timestamp.minutes_of_day();
            std::snprintf(hm, sizeof(hm), "%02d:%02d", mod / 60, mod % 60);
            u.header = std::string("TS ") + hm;
            auto subject = item.meta.find("subject");
            if (subject != item.meta.end() && !subject->second.empty())
                u.header += " | " + subject->second;
            u.body = item.payload;
            units.push_back(std::move(u));
        } else if (item.kind == MediaKind::image) {
            PageUnit u;
            u.unit_id = id;
            u.source_id = id;
            u.caption = caption_of(item);
            u.image = load_image(corpus.root / item.payload, id);
            units.push_back(std::move(u));
        } else {
            auto frames =
                video_keyframes_from_file(corpus.root / item.payload, video_keyframes, id);
            for (std::size_t i = 0; i < frames.size(); ++i) {
                PageUnit u;
                u.unit_id = id + "#k" + std::to_string(i);
                u.source_id = id;
                if (i == 0) u.caption = caption_of(item);
                u.image = std::move(frames[i]);
                units.push_back(std::move(u));
            }
        }
    }
    return units;
}

inline nlohmann::json sidecar_json(const ScrapbookPage& page) {
    nlohmann::json boxes = nlohmann::json::array();
    for (const auto& b : page.layout)
        boxes.push_back({{"unit_id", b.unit_id}, {"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}});
    nlohmann::json texts = nlohmann::json::array();
    for (const auto& t : page.texts)
        texts.push_back({{"item_id", t.item_id}, {"header", t.header}, {"body", t.body}});
    return nlohmann::json{{"page_id", page.page_id},
                          {"date", to_string(page.date)},
                          {"source_ids", page.source_ids},
                          {"width", page.width},
                          {"height", page.height},
                          {"fidelity",
                           {{"stage", to_string(page.fidelity.stage)},
                            {"quality", page.fidelity.applied_quality},
                            {"scale", page.fidelity.applied_scale},
                            {"legibility", page.fidelity.legibility()}}},
                          {"layout", boxes},
                          {"texts", texts},
                          {"captions", page.captions}};
}

inline void save_page(const std::filesystem::path& pages_dir, const ScrapbookPage& page) {
    std::filesystem::create_directories(pages_dir);
    std::filesystem::path jpg = pages_dir / (page.page_id + ".jpg");
    std::filesystem::path tmp = pages_dir / (page.page_id + ".jpg.tmp");
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw StoreError("cannot write page raster: " + jpg.string());
        out.write(reinterpret_cast<const char*>(page.raster.data()),
                  static_cast<std::streamsize>(page.raster.size()));
    }
    std::filesystem::rename(tmp, jpg);
    std::filesystem::path sidecar = pages_dir / (page.page_id + ".json");
    std::filesystem::path stmp = pages_dir / (page.page_id + ".json.tmp");
    {
        std::ofstream out(stmp, std::ios::binary);
        if (!out) throw StoreError("cannot write page sidecar: " + sidecar.string());
        out << sidecar_json(page).dump(2) << "\n";
    }
    std::filesystem::rename(stmp, sidecar);
}

inline ScrapbookPage load_page(const std::filesystem::path& pages_dir,
                               const std::string& page_id) {
    std::filesystem::path jpg = pages_dir / (page_id + ".jpg");
    std::filesystem::path sidecar = pages_dir / (page_id + ".json");
    std::ifstream jin(jpg, std::ios::binary);
    if (!jin) throw StoreError("missing page raster: " + jpg.string());
    std::ifstream sin(sidecar);
    if (!sin) throw StoreError("missing page sidecar: " + sidecar.string());

    ScrapbookPage page;
    page.raster.assign(std::istreambuf_iterator<char>(jin), std::istreambuf_iterator<char>());
    nlohmann::json j;
    try {
        sin >> j;
        page.page_id = j.at("page_id").get<std::string>();
        page.date = parse_date(j.at("date").get<std::string>());
        page.source_ids = j.at("source_ids").get<std::vector<std::string>>();
        page.width = j.at("width");
        page.height = j.at("height");
        const auto& f = j.at("fidelity");
        page.fidelity.stage = stage_from(f.at("stage").get<std::string>());
        page.fidelity.applied_quality = f.at("quality");
        page.fidelity.applied_scale = f.at("scale");
        for (const auto& b : j.at("layout"))
            page.layout.push_back(LayoutBox{b.at("unit_id").get<std::string>(), b.at("x"),
                                            b.at("y"), b.at("w"), b.at("h")});
        for (const auto& t : j.at("texts"))
            page.texts.push_back(PageText{t.at("item_id").get<std::string>(),
                                          t.at("header").get<std::string>(),
                                          t.at("body").get<std::string>()});
        if (j.contains("captions"))
            page.captions = j.at("captions").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw InvariantError("corrupt page sidecar " + sidecar.string() + ": " + e.what());
    }
    return page;
}

}  // namespace scrapmem
