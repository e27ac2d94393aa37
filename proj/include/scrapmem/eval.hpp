#pragma once
// Evaluation harness: per-question scores dispatched by question type
// (exact match / Jaccard / judge), retrieval recall, their product, run
// aggregation, and the three-way failure taxonomy against a baseline run.

#include <scrapmem/errors.hpp>
#include <scrapmem/retrieval.hpp>
#include <scrapmem/textutil.hpp>
#include <scrapmem/time.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace scrapmem {

enum class QType { number, list_recall, open_end };

inline std::string to_string(QType t) {
    switch (t) {
        case QType::number: return "number";
        case QType::list_recall: return "list_recall";
        default: return "open_end";
    }
}

inline QType qtype_from(const std::string& s) {
    if (s == "number") return QType::number;
    if (s == "list_recall") return QType::list_recall;
    if (s == "open_end") return QType::open_end;
    throw ValidationError("unknown question type '" + s + "'");
}

struct BenchmarkQuestion {
    std::string qid;
    std::string question;
    QType qtype = QType::open_end;
    std::string answer;                 // ground truth
    std::vector<std::string> evidence;  // ground-truth item ids E
    std::optional<CivilDate> asked_date;
};

inline std::vector<BenchmarkQuestion> load_benchmark(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open benchmark file: " + path.string());
    std::vector<BenchmarkQuestion> questions;
    std::string line;
    int line_no = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
            BenchmarkQuestion q;
            q.qid = j.at("qid").get<std::string>();
            q.question = j.at("question").get<std::string>();
            q.qtype = qtype_from(j.at("type").get<std::string>());
            q.answer = j.at("answer").get<std::string>();
            q.evidence = j.at("evidence").get<std::vector<std::string>>();
            if (j.contains("asked_date"))
                q.asked_date = parse_date(j.at("asked_date").get<std::string>());
            if (!seen.insert(q.qid).second)
                throw ValidationError("duplicate qid '" + q.qid + "'");
            questions.push_back(std::move(q));
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("benchmark line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return questions;
}

// --- answer normalization & metrics ----------------------------------------

// Trim, lowercase, strip thousands separators and currency symbols; numeric
// strings compare as numbers, anything else as strings.
inline std::string normalize_answer(const std::string& s) {
    std::string lowered = to_lower(trim(s));
    std::string out;
    for (std::size_t i = 0; i < lowered.size(); ++i) {
        char c = lowered[i];
        if (c == '$' || c == '"' || c == '\'') continue;
        // comma between digits is a thousands separator
        if (c == ',' && i > 0 && i + 1 < lowered.size() &&
            std::isdigit(static_cast<unsigned char>(lowered[i - 1])) &&
            std::isdigit(static_cast<unsigned char>(lowered[i + 1])))
            continue;
        out.push_back(c);
    }
    return trim(out);
}

inline std::optional<double> parse_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() + s.size()) return v;
    return std::nullopt;
}

inline int exact_match(const std::string& truth, const std::string& prediction) {
    std::string a = normalize_answer(truth);
    std::string b = normalize_answer(prediction);
    auto na = parse_number(a);
    auto nb = parse_number(b);
    if (na && nb) return *na == *nb ? 1 : 0;
    return a == b ? 1 : 0;
}

// Split on commas/semicolons/newlines, trim, lowercase, drop empties, dedupe.
inline std::set<std::string> to_list(const std::string& s) {
    std::set<std::string> out;
    for (const auto& part : split_any(s, ",;\n")) {
        std::string item = to_lower(trim(part));
        if (!item.empty()) out.insert(item);
    }
    return out;
}

// |A ∩ B| / |A ∪ B|; both-empty is 1 by convention (a correctly empty
// prediction is not an error) and flagged on stderr.
inline double jaccard(const std::string& truth, const std::string& prediction) {
    std::set<std::string> a = to_list(truth);
    std::set<std::string> b = to_list(prediction);
    if (a.empty() && b.empty()) {
        std::cerr << "[scrapmem] warning: jaccard of two empty lists, scoring 1 by convention\n";
        return 1.0;
    }
    std::size_t inter = 0;
    for (const auto& x : a) inter += b.count(x);
    std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

inline double recall_at_k(const std::set<std::string>& truth_evidence,
                          const std::vector<std::string>& retrieved) {
    if (truth_evidence.empty()) throw ValidationError("unscorable question: empty evidence set");
    std::size_t hit = 0;
    std::set<std::string> seen;
    for (const auto& id : retrieved)
        if (truth_evidence.count(id) && seen.insert(id).second) ++hit;
    return static_cast<double>(hit) / static_cast<double>(truth_evidence.size());
}

// Multiset token F1; the offline judge scores 1 iff F1 >= 0.5.
inline double token_f1(const std::string& truth, const std::string& prediction) {
    auto count = [](const std::string& s) {
        std::map<std::string, int> c;
        for (const auto& w : word_tokens(to_lower(s))) ++c[w];
        return c;
    };
    auto a = count(truth);
    auto b = count(prediction);
    int overlap = 0, total_a = 0, total_b = 0;
    for (const auto& [w, n] : a) {
        total_a += n;
        auto it = b.find(w);
        if (it != b.end()) overlap += std::min(n, it->second);
    }
    for (const auto& [w, n] : b) total_b += n;
    if (total_a == 0 && total_b == 0) return 1.0;
    if (overlap == 0) return 0.0;
    double precision = static_cast<double>(overlap) / total_b;
    double recall = static_cast<double>(overlap) / total_a;
    return 2 * precision * recall / (precision + recall);
}

inline double offline_judge(const std::string& /*question*/, const std::string& truth,
                            const std::string& prediction) {
    return token_f1(truth, prediction) >= 0.5 ? 1.0 : 0.0;
}

// judge(question, truth, prediction) -> score in [0,1]
using JudgeFn = std::function<double(const std::string&, const std::string&, const std::string&)>;

// Type dispatch. Returns nullopt when the judge fails, in which case the
// question is excluded from aggregates.
inline std::optional<double> qs(const std::string& question, QType qtype,
                                const std::string& truth, const std::string& prediction,
                                const JudgeFn& judge) {
    switch (qtype) {
        case QType::number: return static_cast<double>(exact_match(truth, prediction));
        case QType::list_recall: return jaccard(truth, prediction);
        case QType::open_end:
            try {
                return judge(question, truth, prediction);
            } catch (const std::exception& e) {
                std::cerr << "[scrapmem] warning: judge failed, question unscored: " << e.what()
                          << "\n";
                return std::nullopt;
            }
    }
    return std::nullopt;
}

inline double joint_at_k(double qs_val, double recall_val) { return qs_val * recall_val; }

// --- benchmark runs ---------------------------------------------------------

struct QuestionResult {
    std::string qid;
    QType qtype = QType::open_end;
    std::string prediction;
    std::vector<std::string> retrieved_ids;  // truncated to k
    std::optional<double> qs;                // nullopt = unscored
    double recall = 0.0;
    double joint = 0.0;
    std::string error;  // provider failure note, if any
};

struct RunResult {
    int k = 10;
    std::vector<QuestionResult> questions;

    std::optional<double> mean_qs;
    std::optional<double> mean_recall;
    std::optional<double> mean_joint;
    std::map<std::string, std::optional<double>> type_means;  // number/list_recall/open_end

    void aggregate() {
        double sq = 0, sr = 0, sj = 0;
        std::size_t n = 0;
        std::map<std::string, std::pair<double, std::size_t>> per_type;
        for (const auto& q : questions) {
            if (!q.qs) continue;
            sq += *q.qs;
            sr += q.recall;
            sj += q.joint;
            ++n;
            auto& t = per_type[to_string(q.qtype)];
            t.first += *q.qs;
            t.second += 1;
        }
        if (n > 0) {
            mean_qs = sq / n;
            mean_recall = sr / n;
            mean_joint = sj / n;
        }
        for (const char* t : {"number", "list_recall", "open_end"}) {
            auto it = per_type.find(t);
            type_means[t] = it == per_type.end() || it->second.second == 0
                                ? std::nullopt
                                : std::optional<double>(it->second.first / it->second.second);
        }
    }
};

// answerer(question) -> (prediction, retrieved item ids)
using AnswerFn = std::function<std::pair<std::string, std::vector<std::string>>(
    const BenchmarkQuestion&)>;

// Retrieval + answering + scoring per question; provider failures are
// recorded and the run continues.
inline RunResult run_benchmark(const std::vector<BenchmarkQuestion>& questions, int k,
                               const AnswerFn& answer_fn, const JudgeFn& judge) {
    RunResult run;
    run.k = k;
    for (const auto& q : questions) {
        QuestionResult r;
        r.qid = q.qid;
        r.qtype = q.qtype;
        try {
            auto [prediction, retrieved] = answer_fn(q);
            r.prediction = prediction;
            if (static_cast<int>(retrieved.size()) > k) retrieved.resize(k);
            r.retrieved_ids = retrieved;
            r.qs = qs(q.question, q.qtype, q.answer, r.prediction, judge);
            std::set<std::string> truth(q.evidence.begin(), q.evidence.end());
            r.recall = recall_at_k(truth, r.retrieved_ids);
            if (r.qs) r.joint = joint_at_k(*r.qs, r.recall);
        } catch (const std::exception& e) {
            r.error = e.what();
            r.qs = std::nullopt;
            std::cerr << "[scrapmem] warning: question " << q.qid << " failed: " << e.what()
                      << "\n";
        }
        run.questions.push_back(std::move(r));
    }
    run.aggregate();
    return run;
}

inline nlohmann::json to_json(const RunResult& run) {
    auto opt = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    nlohmann::json questions = nlohmann::json::array();
    for (const auto& q : run.questions)
        questions.push_back({{"qid", q.qid},
                             {"qtype", to_string(q.qtype)},
                             {"prediction", q.prediction},
                             {"retrieved", q.retrieved_ids},
                             {"qs", opt(q.qs)},
                             {"recall_at_k", q.recall},
                             {"joint_at_k", q.joint},
                             {"error", q.error}});
    nlohmann::json by_type;
    for (const auto& [t, v] : run.type_means) by_type[t] = opt(v);
    return nlohmann::json{{"k", run.k},
                          {"questions", questions},
                          {"aggregates",
                           {{"qs", opt(run.mean_qs)},
                            {"recall_at_k", opt(run.mean_recall)},
                            {"joint_at_k", opt(run.mean_joint)},
                            {"by_type", by_type}}}};
}

inline RunResult run_from_json(const nlohmann::json& j) {
    RunResult run;
    run.k = j.at("k");
    for (const auto& q : j.at("questions")) {
        QuestionResult r;
        r.qid = q.at("qid").get<std::string>();
        r.qtype = qtype_from(q.at("qtype").get<std::string>());
        r.prediction = q.at("prediction").get<std::string>();
        r.retrieved_ids = q.at("retrieved").get<std::vector<std::string>>();
        if (!q.at("qs").is_null()) r.qs = q.at("qs").get<double>();
        r.recall = q.at("recall_at_k");
        r.joint = q.at("joint_at_k");
        r.error = q.value("error", "");
        run.questions.push_back(std::move(r));
    }
    run.aggregate();
    return run;
}

// --- failure taxonomy -------------------------------------------------------

enum class FailureLabel { em_graph, optical_forgetting, llm_reasoning };

inline std::string to_string(FailureLabel l) {
    switch (l) {
        case FailureLabel::em_graph: return "em_graph";
        case FailureLabel::optical_forgetting: return "optical_forgetting";
        default: return "llm_reasoning";
    }
}

struct FailureReport {
    std::vector<std::pair<std::string, FailureLabel>> labels;  // qid -> label
    std::map<std::string, std::size_t> counts;
    std::map<std::string, double> shares_pct;  // of incorrect questions
    std::size_t incorrect = 0;
};

// "Incorrect" is a strict miss: qs < 1 (the binary judge makes open-ended
// equivalent to judge == 0). Labels follow the forgetting run's recall:
//   recall < 1                          -> em_graph
//   recall = 1 and baseline correct     -> optical_forgetting
//   recall = 1 and baseline incorrect   -> llm_reasoning
inline FailureReport classify_failures(const RunResult& run, const RunResult& baseline) {
    std::map<std::string, const QuestionResult*> base;
    for (const auto& q : baseline.questions) base[q.qid] = &q;
    if (base.size() != run.questions.size())
        throw ValidationError("classify_failures: runs cover different question sets");

    FailureReport report;
    report.counts = {{"em_graph", 0}, {"optical_forgetting", 0}, {"llm_reasoning", 0}};
    for (const auto& q : run.questions) {
        auto it = base.find(q.qid);
        if (it == base.end())
            throw ValidationError("classify_failures: qid '" + q.qid + "' missing from baseline");
        if (!q.qs || !it->second->qs) continue;  // unscored: excluded
        if (*q.qs >= 1.0) continue;              // correct: no label

        ++report.incorrect;
        FailureLabel label;
        if (q.recall < 1.0) {
            label = FailureLabel::em_graph;
        } else if (*it->second->qs >= 1.0) {
            label = FailureLabel::optical_forgetting;
        } else {
            label = FailureLabel::llm_reasoning;
        }
        report.labels.emplace_back(q.qid, label);
        ++report.counts[to_string(label)];
    }
    for (const auto& [name, count] : report.counts)
        report.shares_pct[name] =
            report.incorrect == 0 ? 0.0 : 100.0 * static_cast<double>(count) / report.incorrect;
    return report;
}

inline nlohmann::json to_json(const FailureReport& report) {
    nlohmann::json labels = nlohmann::json::array();
    for (const auto& [qid, label] : report.labels)
        labels.push_back({{"qid", qid}, {"label", to_string(label)}});
    return nlohmann::json{{"incorrect", report.incorrect},
                          {"counts", report.counts},
                          {"shares_pct", report.shares_pct},
                          {"labels", labels}};
}

inline void write_failure_csv(const FailureReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StoreError("cannot write failure CSV: " + path.string());
    out << "qid,label\n";
    for (const auto& [qid, label] : report.labels) out << qid << "," << to_string(label) << "\n";
}

}  // namespace scrapmem
