#pragma once
// OpenAI-compatible HTTP client used by every remote provider: chat
// completions (optionally with an attached page image) and embeddings.
// Transient failures (transport errors, 429, 5xx) are retried with linear
// backoff; the final error carries the attempt count.

#include <scrapmem/errors.hpp>

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace scrapmem {

struct ChatClientConfig {
    std::string base_url;  // e.g. "http://127.0.0.1:8080/v1"
    std::string api_key;
    std::string model;
    int timeout_sec = 30;
    int max_retries = 3;
    int backoff_ms = 250;

    // SCRAPMEM_API_BASE / SCRAPMEM_API_KEY / SCRAPMEM_MODEL
    static ChatClientConfig from_env() {
        ChatClientConfig c;
        if (const char* v = std::getenv("SCRAPMEM_API_BASE")) c.base_url = v;
        if (const char* v = std::getenv("SCRAPMEM_API_KEY")) c.api_key = v;
        if (const char* v = std::getenv("SCRAPMEM_MODEL")) c.model = v;
        return c;
    }
};

inline std::string base64_encode(const std::uint8_t* data, std::size_t len) {
    static const char table[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((len + 2) / 3 * 4);
    for (std::size_t i = 0; i < len; i += 3) {
        std::uint32_t chunk = static_cast<std::uint32_t>(data[i]) << 16;
        if (i + 1 < len) chunk |= static_cast<std::uint32_t>(data[i + 1]) << 8;
        if (i + 2 < len) chunk |= data[i + 2];
        out.push_back(table[chunk >> 18 & 63]);
        out.push_back(table[chunk >> 12 & 63]);
        out.push_back(i + 1 < len ? table[chunk >> 6 & 63] : '=');
        out.push_back(i + 2 < len ? table[chunk & 63] : '=');
    }
    return out;
}

class ChatClient {
public:
    explicit ChatClient(ChatClientConfig config) : config_(std::move(config)) {
        if (config_.base_url.empty())
            throw ValidationError(
                "remote provider requested but no endpoint configured "
                "(set SCRAPMEM_API_BASE or the config file)");
        split_base_url();
    }

    const ChatClientConfig& config() const { return config_; }

    // POST {base}/chat/completions, returns choices[0].message.content.
    std::string chat(const nlohmann::json& messages, int max_tokens, double temperature) {
        nlohmann::json body{{"model", config_.model},
                            {"messages", messages},
                            {"max_tokens", max_tokens},
                            {"temperature", temperature}};
        nlohmann::json reply = post_json(path_prefix_ + "/chat/completions", body);
        try {
            return reply.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw ProviderError(std::string("malformed chat completion reply: ") + e.what(), 1);
        }
    }

    // POST {base}/embeddings, one vector per input string.
    std::vector<std::vector<float>> embed(const std::vector<std::string>& inputs) {
        nlohmann::json body{{"model", config_.model}, {"input", inputs}};
        nlohmann::json reply = post_json(path_prefix_ + "/embeddings", body);
        std::vector<std::vector<float>> out;
        try {
            for (const auto& row : reply.at("data"))
                out.push_back(row.at("embedding").get<std::vector<float>>());
        } catch (const nlohmann::json::exception& e) {
            throw ProviderError(std::string("malformed embeddings reply: ") + e.what(), 1);
        }
        if (out.size() != inputs.size())
            throw ProviderError("embeddings reply count mismatch", 1);
        return out;
    }

    static nlohmann::json text_message(const std::string& role, const std::string& content) {
        return nlohmann::json{{"role", role}, {"content", content}};
    }

    // User message carrying text plus an inline JPEG as a data URL.
    static nlohmann::json image_message(const std::string& text,
                                        const std::vector<std::uint8_t>& jpeg) {
        std::string url = "data:image/jpeg;base64," + base64_encode(jpeg.data(), jpeg.size());
        return nlohmann::json{
            {"role", "user"},
            {"content",
             nlohmann::json::array({{{"type", "text"}, {"text", text}},
                                    {{"type", "image_url"}, {"image_url", {{"url", url}}}}})}};
    }

private:
    void split_base_url() {
        std::string url = config_.base_url;
        std::size_t scheme_end = url.find("://");
        if (scheme_end == std::string::npos)
            throw ValidationError("endpoint must include a scheme: " + url);
        std::size_t path_start = url.find('/', scheme_end + 3);
        if (path_start == std::string::npos) {
            host_ = url;
        } else {
            host_ = url.substr(0, path_start);
            path_prefix_ = url.substr(path_start);
            while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
        }
    }

    nlohmann::json post_json(const std::string& path, const nlohmann::json& body) {
        std::string payload = body.dump();
        std::string last_error;
        int attempts = 0;
        for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
            ++attempts;
            httplib::Client client(host_);
            client.set_connection_timeout(config_.timeout_sec, 0);
            client.set_read_timeout(config_.timeout_sec, 0);
            httplib::Headers headers;
            if (!config_.api_key.empty())
                headers.emplace("Authorization", "Bearer " + config_.api_key);
            auto res = client.Post(path, headers, payload, "application/json");
            if (!res) {
                last_error = "transport error: " + httplib::to_string(res.error());
            } else if (res->status == 429 || res->status >= 500) {
                last_error = "HTTP " + std::to_string(res->status);
            } else if (res->status != 200) {
                throw ProviderError("HTTP " + std::to_string(res->status) + " from " + path +
                                        ": " + res->body.substr(0, 200),
                                    attempts);
            } else {
                try {
                    return nlohmann::json::parse(res->body);
                } catch (const nlohmann::json::exception& e) {
                    throw ProviderError(std::string("invalid JSON from ") + path + ": " + e.what(),
                                        attempts);
                }
            }
            if (attempt < config_.max_retries)
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(config_.backoff_ms * (attempt + 1)));
        }
        throw ProviderError("request to " + path + " failed: " + last_error, attempts);
    }

    ChatClientConfig config_;
    std::string host_;
    std::string path_prefix_;
};

}  // namespace scrapmem
