#pragma once
// Optical perception and semantic extraction behind a provider boundary.
// Remote mode drives a vision-language chat endpoint with the bundled
// prompt templates; mock mode is a deterministic tokenizer over the page
// sidecar, filtered by the page's legibility, so the whole pipeline runs
// offline with reproducible output.

#include <scrapmem/chat_client.hpp>
#include <scrapmem/errors.hpp>
#include <scrapmem/pagebuilder.hpp>
#include <scrapmem/prompts.hpp>
#include <scrapmem/textutil.hpp>
#include <scrapmem/time.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace scrapmem {

struct SalientItem {
    std::string phrase;
    double salience = 0.0;  // in [0,1]
};

struct PerceptionResult {
    std::string ocr_text;
    std::string visual_summary;
    std::vector<SalientItem> salient_items;  // salience non-increasing
};

// T~ = OCR text (+) visual description.
struct FusedText {
    std::string text;
};

inline FusedText fuse_text(const std::string& ocr, const std::string& visual_summary) {
    if (visual_summary.empty()) return FusedText{ocr};
    return FusedText{ocr + "\n[VISUAL] " + visual_summary};
}

struct NodeContext {
    CivilDate date;
    std::map<std::string, std::string> meta;
};

struct PathSummary {
    std::vector<std::string> semantic_nodes;  // at most 10
    std::string em_path;
};

// ---------------------------------------------------------------------------
// Mock tokenizer. Emits, in first-occurrence order: ISO dates, "month day"
// dates, numbers with a unit word, and multi-word capitalized spans; in
// query mode additionally bare content words after stop-word removal.
// ---------------------------------------------------------------------------
namespace mock_tokenizer {

inline const std::set<std::string>& stop_words() {
    static const std::set<std::string> words = {
        "a",     "an",    "the",   "i",     "me",    "my",    "we",    "our",   "you",
        "your",  "he",    "she",   "it",    "its",   "they",  "them",  "this",  "that",
        "these", "those", "what",  "which", "who",   "whom",  "when",  "where", "why",
        "how",   "is",    "are",   "was",   "were",  "be",    "been",  "being", "am",
        "do",    "does",  "did",   "doing", "have",  "has",   "had",   "having","can",
        "could", "should","would", "may",   "might", "must",  "will",  "shall", "of",
        "in",    "on",    "at",    "to",    "from",  "by",    "with",  "about", "as",
        "for",   "and",   "or",    "but",   "not",   "no",    "so",    "if",    "then",
        "than",  "too",   "very",  "just",  "there", "here",  "per",   "into"};
    return words;
}

inline const std::set<std::string>& month_names() {
    static const std::set<std::string> months = {
        "january", "february", "march",     "april",   "may",      "june",
        "july",    "august",   "september", "october", "november", "december"};
    return months;
}

// Canonical event form for a handful of verbs the mock normalizes.
inline const std::map<std::string, std::string>& verb_canon() {
    static const std::map<std::string, std::string> map = {
        {"own", "owned"},   {"buy", "bought"},   {"book", "booking"},
        {"pay", "paid"},    {"visit", "visited"}, {"stay", "stayed"}};
    return map;
}

struct Token {
    std::string text;       // original casing, boundary punctuation stripped
    bool sentence_initial = false;
};

inline std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    bool at_sentence_start = true;
    std::string cur;
    auto flush = [&](bool ends_sentence) {
        // strip boundary punctuation, keep '-' '.' ',' inside
        std::size_t b = 0, e = cur.size();
        while (b < e && !std::isalnum(static_cast<unsigned char>(cur[b]))) ++b;
        while (e > b && !std::isalnum(static_cast<unsigned char>(cur[e - 1]))) --e;
        if (e > b) {
            tokens.push_back(Token{cur.substr(b, e - b), at_sentence_start});
            at_sentence_start = false;
        }
        if (ends_sentence) at_sentence_start = true;
        cur.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '\n') {
            flush(true);
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            bool ends = !cur.empty() && (cur.back() == '.' || cur.back() == '!' ||
                                         cur.back() == '?' || cur.back() == ':');
            flush(ends);
        } else {
            cur.push_back(c);
        }
    }
    flush(true);
    return tokens;
}

inline bool is_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    try {
        parse_date(s);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

inline bool is_day_number(const std::string& s) {
    if (!is_all_digits(s) || s.size() > 2) return false;
    int v = std::stoi(s);
    return v >= 1 && v <= 31;
}

inline bool is_capitalized_alpha(const std::string& s) {
    return is_alpha_token(s) && starts_uppercase(s);
}

// Core extraction; cap = 0 means unlimited.
inline std::vector<std::string> extract_phrases(const std::string& text, std::size_t cap,
                                                bool query_mode) {
    std::vector<Token> tokens = tokenize(text);
    std::vector<std::string> phrases;
    std::set<std::string> seen;
    auto emit = [&](std::string phrase) {
        if (cap != 0 && phrases.size() >= cap) return;
        if (phrase.empty()) return;
        if (seen.insert(phrase).second) phrases.push_back(std::move(phrase));
    };

    std::size_t i = 0;
    while (i < tokens.size()) {
        const std::string& t = tokens[i].text;
        std::string lower = to_lower(t);
        bool has_next = i + 1 < tokens.size();
        const std::string next = has_next ? tokens[i + 1].text : "";
        const std::string next_lower = to_lower(next);

        if (is_iso_date(t)) {
            emit(lower);
            ++i;
        } else if (month_names().count(lower) && has_next && is_day_number(next)) {
            emit(lower + " " + std::to_string(std::stoi(next)));
            i += 2;
        } else if (is_day_number(t) && has_next && month_names().count(next_lower)) {
            emit(next_lower + " " + std::to_string(std::stoi(t)));
            i += 2;
        } else if (is_numeric_token(t) && has_next && is_alpha_token(next) &&
                   next.size() >= 2 && !stop_words().count(next_lower) &&
                   !month_names().count(next_lower)) {
            emit(lower + " " + next_lower);
            i += 2;
        } else if (is_capitalized_alpha(t) && !tokens[i].sentence_initial && has_next &&
                   is_capitalized_alpha(next)) {
            std::string span = lower;
            std::size_t j = i + 1;
            while (j < tokens.size() && is_capitalized_alpha(tokens[j].text)) {
                span += " " + to_lower(tokens[j].text);
                ++j;
            }
            emit(span);
            i = j;
        } else {
            if (query_mode && is_alpha_token(t) && !stop_words().count(lower)) {
                auto canon = verb_canon().find(lower);
                emit(canon != verb_canon().end() ? canon->second : lower);
            }
            ++i;
        }
    }
    return phrases;
}

}  // namespace mock_tokenizer

// ---------------------------------------------------------------------------
// Remote reply parsing. Strict: a reply missing the expected keys is a
// provider error with no partial result.
// ---------------------------------------------------------------------------

inline std::vector<std::string> parse_nodes_reply(const std::string& content) {
    try {
        nlohmann::json j = nlohmann::json::parse(content);
        std::vector<std::string> out;
        for (const auto& p : j.at("semantic_nodes")) out.push_back(to_lower(p.get<std::string>()));
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ProviderError(std::string("node extraction reply parse error: ") + e.what(), 1);
    }
}

inline PerceptionResult parse_perception_reply(const std::string& content) {
    try {
        nlohmann::json j = nlohmann::json::parse(content);
        PerceptionResult r;
        r.ocr_text = j.at("ocr_text").get<std::string>();
        r.visual_summary = j.at("visual_summary").get<std::string>();
        for (const auto& item : j.at("salient_items")) {
            SalientItem s;
            s.phrase = to_lower(item.at("phrase").get<std::string>());
            s.salience = item.at("salience").get<double>();
            r.salient_items.push_back(std::move(s));
        }
        std::stable_sort(r.salient_items.begin(), r.salient_items.end(),
                         [](const SalientItem& a, const SalientItem& b) {
                             return a.salience > b.salience;
                         });
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ProviderError(std::string("perception reply parse error: ") + e.what(), 1);
    }
}

inline PathSummary parse_path_reply(const std::string& content) {
    try {
        nlohmann::json j = nlohmann::json::parse(content);
        PathSummary p;
        for (const auto& n : j.at("semantic_nodes"))
            p.semantic_nodes.push_back(to_lower(n.get<std::string>()));
        if (p.semantic_nodes.size() > 10) p.semantic_nodes.resize(10);
        p.em_path = j.at("em_path").get<std::string>();
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ProviderError(std::string("path summary reply parse error: ") + e.what(), 1);
    }
}

// ---------------------------------------------------------------------------
// Provider boundary.
// ---------------------------------------------------------------------------

class PerceptionProvider {
public:
    virtual ~PerceptionProvider() = default;
    virtual PerceptionResult perceive_page(const ScrapbookPage& page) = 0;
    virtual std::vector<std::string> extract_nodes(const FusedText& fused,
                                                   const NodeContext& context) = 0;
    virtual std::vector<std::string> extract_query_nodes(const std::string& question) = 0;
    virtual PathSummary summarize_path(const PerceptionResult& perception,
                                       const CivilDate& date) = 0;
    virtual std::string mode() const = 0;
};

class MockPerception final : public PerceptionProvider {
public:
    std::string mode() const override { return "mock"; }

    // Source texts become OCR verbatim; captions of visual items become the
    // visual summary; salient phrases get rank salience 1 - r/(count+1) and
    // then pass the legibility gate: salience >= 1 - legibility.
    PerceptionResult perceive_page(const ScrapbookPage& page) override {
        PerceptionResult r;
        for (const auto& t : page.texts) {
            if (!r.ocr_text.empty()) r.ocr_text += "\n";
            r.ocr_text += t.header + "\n" + t.body;
        }
        r.visual_summary = page_captions(page);

        FusedText fused = fuse_text(r.ocr_text, r.visual_summary);
        auto phrases = mock_tokenizer::extract_phrases(fused.text, 0, false);
        const double count = static_cast<double>(phrases.size());
        const double threshold = 1.0 - page.fidelity.legibility();
        for (std::size_t rank = 0; rank < phrases.size(); ++rank) {
            double salience = 1.0 - (static_cast<double>(rank) + 1.0) / (count + 1.0);
            if (salience >= threshold)
                r.salient_items.push_back(SalientItem{phrases[rank], salience});
        }
        return r;
    }

    std::vector<std::string> extract_nodes(const FusedText& fused,
                                           const NodeContext&) override {
        return mock_tokenizer::extract_phrases(fused.text, 8, false);
    }

    std::vector<std::string> extract_query_nodes(const std::string& question) override {
        if (trim(question).empty()) throw ValidationError("empty question");
        auto phrases = mock_tokenizer::extract_phrases(question, 10, true);
        if (phrases.empty()) throw ValidationError("no extractable nodes");
        return phrases;
    }

    PathSummary summarize_path(const PerceptionResult& perception,
                               const CivilDate& date) override {
        PathSummary path;
        for (const auto& s : perception.salient_items) {
            if (path.semantic_nodes.size() >= 10) break;
            path.semantic_nodes.push_back(s.phrase);
        }
        path.em_path = to_string(date) + " : ";
        if (path.semantic_nodes.empty()) {
            path.em_path += "(empty)";
        } else {
            for (std::size_t i = 0; i < path.semantic_nodes.size(); ++i)
                path.em_path += (i ? " -> " : "") + path.semantic_nodes[i];
        }
        return path;
    }

private:
    static std::string page_captions(const ScrapbookPage& page) {
        // captions live beside texts in the sidecar-backed struct
        std::string out;
        for (const auto& c : page.captions) {
            if (!out.empty()) out += "; ";
            out += c;
        }
        return out;
    }
};

class RemotePerception final : public PerceptionProvider {
public:
    RemotePerception(std::shared_ptr<ChatClient> client, PromptSet prompts)
        : client_(std::move(client)), prompts_(std::move(prompts)) {}

    std::string mode() const override { return "remote"; }

    PerceptionResult perceive_page(const ScrapbookPage& page) override {
        nlohmann::json messages = nlohmann::json::array(
            {ChatClient::text_message("system", prompts_.page_perception.system),
             ChatClient::image_message(prompts_.page_perception.user, page.raster)});
        std::string content =
            client_->chat(messages, prompts::kPerceptionMaxTokens, prompts::kTemperature);
        return parse_perception_reply(content);
    }

    std::vector<std::string> extract_nodes(const FusedText& fused,
                                           const NodeContext& context) override {
        std::string user = prompts::substitute(prompts_.node_extraction.user, "date",
                                               to_string(context.date));
        user = prompts::substitute(user, "perception_text", fused.text);
        nlohmann::json messages = nlohmann::json::array(
            {ChatClient::text_message("system", prompts_.node_extraction.system),
             ChatClient::text_message("user", user)});
        std::string content =
            client_->chat(messages, prompts::kNodeExtractionMaxTokens, prompts::kTemperature);
        auto phrases = parse_nodes_reply(content);
        if (phrases.size() < 3)
            std::cerr << "[scrapmem] warning: node extraction returned only " << phrases.size()
                      << " phrases\n";
        return phrases;
    }

    std::vector<std::string> extract_query_nodes(const std::string& question) override {
        if (trim(question).empty()) throw ValidationError("empty question");
        std::string user =
            prompts::substitute(prompts_.query_node_extraction.user, "question", question);
        nlohmann::json messages = nlohmann::json::array(
            {ChatClient::text_message("system", prompts_.query_node_extraction.system),
             ChatClient::text_message("user", user)});
        std::string content =
            client_->chat(messages, prompts::kQueryExtractionMaxTokens, prompts::kTemperature);
        auto phrases = parse_nodes_reply(content);
        if (phrases.size() < 3)
            std::cerr << "[scrapmem] warning: query extraction returned only " << phrases.size()
                      << " phrases\n";
        return phrases;
    }

    PathSummary summarize_path(const PerceptionResult& perception,
                               const CivilDate& date) override {
        std::string perception_text = perception.ocr_text;
        if (!perception.visual_summary.empty())
            perception_text += "\n[VISUAL] " + perception.visual_summary;
        for (const auto& s : perception.salient_items)
            perception_text += "\n- " + s.phrase;
        std::string user =
            prompts::substitute(prompts_.path_summary.user, "date", to_string(date));
        user = prompts::substitute(user, "perception_text", perception_text);
        nlohmann::json messages = nlohmann::json::array(
            {ChatClient::text_message("system", prompts_.path_summary.system),
             ChatClient::text_message("user", user)});
        std::string content =
            client_->chat(messages, prompts::kPathSummaryMaxTokens, prompts::kTemperature);
        return parse_path_reply(content);
    }

private:
    std::shared_ptr<ChatClient> client_;
    PromptSet prompts_;
};

}  // namespace scrapmem
