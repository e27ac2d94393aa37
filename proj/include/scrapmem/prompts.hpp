#pragma once
// Prompt templates for the remote providers. The canonical copies live as
// files under prompts/; the same bytes are embedded here so the engine
// works from any working directory and tests can assert file/embedded
// parity. Placeholders: {date}, {question}, {perception_text}.

#include <scrapmem/errors.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

namespace scrapmem {

struct PromptTemplate {
    std::string system;
    std::string user;  // may be empty (image-only user turn)
};

struct PromptSet {
    PromptTemplate node_extraction;        // single record -> semantic nodes
    PromptTemplate query_node_extraction;  // question -> query nodes
    PromptTemplate page_perception;        // page image -> ocr/visual/salient
    PromptTemplate path_summary;           // perception -> nodes + em_path
};

namespace prompts {

inline constexpr std::string_view kNodeExtraction =
    R"([SYSTEM]
You extract semantic memory nodes from a single email for memory retrieval. Return ONLY a JSON object with key "semantic_nodes" (array of 3-8 concise phrases). Focus on named entities (people, places, brands, products), key objects, actions, events, and concrete time mentions. Use short lowercase phrases. Do NOT echo the email field names. Do NOT include the words Subject/Summary/Detail.
[USER]
Here are examples of the desired behaviour.

Input:
Day: 2022-05-07
Timestamp: 2022-05-07T09:12
Subject: Hotel booking confirmation
Short summary: Booked Grand Plaza Lisbon for 2 nights
Detail: Your reservation at Grand Plaza Lisbon from May 10 to May 12 is confirmed. Total 240 EUR.

Output:
{"semantic_nodes": ["grand plaza lisbon", "hotel booking", "2 nights", "may 10", "may 12", "240 eur", "reservation"]}

Input:
Day: {date}
{perception_text}

Output:
)";

inline constexpr std::string_view kQueryNodeExtraction =
    R"([SYSTEM]
You extract semantic memory nodes from a user's question so we can match them against a memory graph. Return JSON ONLY with key "semantic_nodes" (array of 3-10 concise phrases). Focus on entities (people, places, brands, products), objects, actions, events, and concrete time mentions. Use lowercase, short phrases, no stop words.
[USER]
Q: On 2022-05-10 in Lisbon, what hotel did I book and how many nights?
A: {"semantic_nodes": ["2022-05-10", "lisbon", "hotel booking", "number of nights", "reservation"]}

Q: {question}
Output JSON only (no markdown, no explanation).
)";

inline constexpr std::string_view kPagePerception =
    R"([SYSTEM]
You analyze a rendered daily scrapbook page. Read all visible text carefully, including email snippets, timestamps, IDs, signs, menus, posters, and other OCR. Also summarize the non-text visual evidence. Respond with a single JSON object with keys "ocr_text", "visual_summary", and "salient_items".
[USER]
)";

inline constexpr std::string_view kPathSummary =
    R"([SYSTEM]
Convert a daily scrapbook perception into a compact episodic memory path. Return only a JSON object with keys "semantic_nodes" (list of at most 10 short phrases) and "em_path" (one concise sentence summarizing the day).
[USER]
Date: {date}
Use OCR and visual evidence to build semantic nodes and a path.
{perception_text}
)";

// Remote call defaults as printed alongside the templates.
inline constexpr int kNodeExtractionMaxTokens = 256;
inline constexpr int kQueryExtractionMaxTokens = 200;
inline constexpr int kQueryExtractionTimeoutSec = 30;
inline constexpr double kTemperature = 0.0;
inline constexpr int kPerceptionMaxTokens = 1024;
inline constexpr int kPathSummaryMaxTokens = 512;

inline PromptTemplate parse_template(std::string_view raw, const std::string& what) {
    const std::string sys_tag = "[SYSTEM]\n";
    const std::string user_tag = "[USER]\n";
    std::size_t sys = raw.find(sys_tag);
    std::size_t user = raw.find(user_tag);
    if (sys != 0 || user == std::string_view::npos)
        throw ValidationError("prompt template '" + what + "' must contain [SYSTEM] and [USER]");
    PromptTemplate t;
    t.system = std::string(raw.substr(sys_tag.size(), user - sys_tag.size()));
    t.user = std::string(raw.substr(user + user_tag.size()));
    // trailing newline belongs to the file, not the message
    if (!t.system.empty() && t.system.back() == '\n') t.system.pop_back();
    if (!t.user.empty() && t.user.back() == '\n') t.user.pop_back();
    return t;
}

inline std::string substitute(std::string text, std::string_view key, std::string_view value) {
    std::string needle = "{" + std::string(key) + "}";
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        text.replace(pos, needle.size(), value);
        pos += value.size();
    }
    return text;
}

}  // namespace prompts

// Loads templates from a directory (expected files: node_extraction.txt,
// query_node_extraction.txt, page_perception.txt, path_summary.txt); embedded
// copies are used when the directory is empty/unset.
inline PromptSet load_prompts(const std::string& prompts_dir) {
    auto read_or = [&](const char* file, std::string_view fallback) -> std::string {
        if (!prompts_dir.empty()) {
            std::filesystem::path p = std::filesystem::path(prompts_dir) / file;
            std::ifstream in(p, std::ios::binary);
            if (in)
                return std::string(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
        }
        return std::string(fallback);
    };
    PromptSet set;
    set.node_extraction = prompts::parse_template(
        read_or("node_extraction.txt", prompts::kNodeExtraction), "node_extraction");
    set.query_node_extraction = prompts::parse_template(
        read_or("query_node_extraction.txt", prompts::kQueryNodeExtraction),
        "query_node_extraction");
    set.page_perception = prompts::parse_template(
        read_or("page_perception.txt", prompts::kPagePerception), "page_perception");
    set.path_summary =
        prompts::parse_template(read_or("path_summary.txt", prompts::kPathSummary), "path_summary");
    return set;
}

}  // namespace scrapmem
