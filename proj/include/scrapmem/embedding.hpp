#pragma once
// Phrase embeddings behind a provider contract. The deterministic mode is a
// hashed character n-gram bag (d=64 by default, L2-normalized): no model
// download, stable geometry, identical phrase -> identical vector. Remote
// mode calls an embeddings endpoint.

#include <scrapmem/chat_client.hpp>
#include <scrapmem/errors.hpp>
#include <scrapmem/textutil.hpp>

#include <cmath>
#include <memory>
#include <string>
#include <vector>

namespace scrapmem {

inline double cosine(const std::vector<float>& a, const std::vector<float>& b) {
    if (a.size() != b.size())
        throw ValidationError("cosine: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()) + ")");
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<double>(a[i]) * b[i];
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    if (na == 0 || nb == 0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

inline void l2_normalize(std::vector<float>& v) {
    double norm = 0;
    for (float x : v) norm += static_cast<double>(x) * x;
    norm = std::sqrt(norm);
    if (norm == 0) return;
    for (float& x : v) x = static_cast<float>(x / norm);
}

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual int dim() const = 0;
    virtual std::vector<float> embed(const std::string& phrase) = 0;
    virtual std::string mode() const = 0;
};

class DeterministicEmbedder final : public EmbeddingProvider {
public:
    explicit DeterministicEmbedder(int dim = 64) : dim_(dim) {
        if (dim_ < 1) throw ValidationError("embedding dimension must be >= 1");
    }

    int dim() const override { return dim_; }
    std::string mode() const override { return "deterministic"; }

    std::vector<float> embed(const std::string& phrase) override {
        std::vector<float> v(static_cast<std::size_t>(dim_), 0.0f);
        std::string s = " " + to_lower(phrase) + " ";  // pad to mark word boundaries
        for (std::size_t n = 1; n <= 3; ++n) {
            if (s.size() < n) break;
            for (std::size_t i = 0; i + n <= s.size(); ++i) {
                std::uint64_t h = fnv1a64(std::string_view(s).substr(i, n), 0x9e3779b97f4a7c15ULL + n);
                std::size_t idx = h % static_cast<std::uint64_t>(dim_);
                float sign = (h >> 32 & 1) ? 1.0f : -1.0f;
                v[idx] += sign;
            }
        }
        l2_normalize(v);
        return v;
    }

private:
    int dim_;
};

class RemoteEmbedder final : public EmbeddingProvider {
public:
    RemoteEmbedder(std::shared_ptr<ChatClient> client, int dim)
        : client_(std::move(client)), dim_(dim) {}

    int dim() const override { return dim_; }
    std::string mode() const override { return "remote"; }

    std::vector<float> embed(const std::string& phrase) override {
        auto rows = client_->embed({phrase});
        std::vector<float> v = std::move(rows[0]);
        if (dim_ > 0 && static_cast<int>(v.size()) != dim_)
            throw ProviderError("embedding dimension mismatch: got " +
                                    std::to_string(v.size()) + ", expected " +
                                    std::to_string(dim_),
                                1);
        l2_normalize(v);
        return v;
    }

private:
    std::shared_ptr<ChatClient> client_;
    int dim_;
};

}  // namespace scrapmem
