// scrapmem: operator CLI for the scrapbook memory engine. Every command
// prints one machine-parseable JSON document on stdout; diagnostics go to
// stderr. Exit codes: 0 ok, 2 invalid input, 3 provider failure.

#include <scrapmem/scrapmem.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace scrapmem;

EngineConfig load_config_or_default(const std::string& path) {
    if (path.empty()) {
        EngineConfig config;
        config.validate();
        return config;
    }
    return load_config(path);
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << std::endl; }

int cmd_ingest(const std::string& corpus_dir, const std::string& store_dir,
               const std::string& config_path) {
    EngineConfig config = load_config_or_default(config_path);
    Corpus corpus = ingest(std::filesystem::path(corpus_dir) / "manifest.jsonl");
    Store store(store_dir);
    WriterLock lock(store);
    store.init_skeleton(corpus, config.graph_config_hash());
    auto kinds = corpus.kind_counts();
    emit({{"items", corpus.items.size()},
          {"days", corpus.by_day.size()},
          {"kinds", kinds},
          {"store", store.root().string()}});
    std::cerr << corpus.items.size() << " items, " << corpus.by_day.size() << " days\n";
    return 0;
}

int cmd_build(const std::string& store_dir, const std::string& config_path) {
    EngineConfig config = load_config_or_default(config_path);
    Store store(store_dir);
    if (!store.exists()) throw StoreError("store not initialized (run ingest first): " + store_dir);
    WriterLock lock(store);
    ProviderBundle providers = make_providers(config, store);
    BuildStats stats = build_store(store, config, providers);
    emit({{"pages_processed", stats.pages_processed},
          {"pages_total", stats.pages_total},
          {"paths", stats.paths},
          {"nodes", stats.nodes}});
    std::cerr << stats.pages_processed << " pages processed\n";
    return 0;
}

int cmd_forget(const std::string& store_dir, const std::string& policy_name,
               const std::string& now_str, const std::string& config_path) {
    EngineConfig config = load_config_or_default(config_path);
    ForgettingPolicy policy = load_policy(policy_name.empty() ? config.policy : policy_name);
    CivilDate now = parse_date(now_str);
    Store store(store_dir);
    if (!store.exists()) throw StoreError("store not initialized: " + store_dir);
    WriterLock lock(store);
    ProviderBundle providers = make_providers(config, store);
    ForgetStats stats = forget_pass(store, policy, now, config, providers);

    Corpus corpus = store.load_corpus();
    StorageReport report = storage_report(store, corpus_raw_bytes(corpus));
    emit({{"policy", policy.name},
          {"now", now_str},
          {"pages", stats.stage_counts},
          {"changed_pages", stats.changed_pages},
          {"lost_mentions", stats.lost_mentions},
          {"pruned_paths", stats.pruned_paths},
          {"removed_nodes", stats.removed_nodes},
          {"storage", to_json(report)}});
    return 0;
}

int cmd_query(const std::string& store_dir, const std::string& question, int k,
              const std::string& config_path) {
    EngineConfig config = load_config_or_default(config_path);
    if (k > 0) config.k = k;
    Store store(store_dir);
    MemoryGraph graph = store.load_graph();
    ProviderBundle providers = make_providers(config, store);
    Retriever retriever(graph, store, *providers.perception, *providers.embedder,
                        retrieval_params(config));
    EvidenceSet evidence = retriever.retrieve(question, config.k);
    emit(retrieval_report_json(question, config.k, evidence));
    return 0;
}

int cmd_answer(const std::string& store_dir, const std::string& question, int k,
               const std::string& config_path) {
    EngineConfig config = load_config_or_default(config_path);
    if (k > 0) config.k = k;
    Store store(store_dir);
    MemoryGraph graph = store.load_graph();
    ProviderBundle providers = make_providers(config, store);
    Retriever retriever(graph, store, *providers.perception, *providers.embedder,
                        retrieval_params(config));
    EvidenceSet evidence = retriever.retrieve(question, config.k);
    AnswerRecord record = providers.answerer->answer(question, evidence);
    emit({{"question", record.question},
          {"answer", record.answer},
          {"evidence_path_ids", record.evidence_path_ids},
          {"provider", record.provider_mode}});
    return 0;
}

int cmd_eval(const std::string& store_dir, const std::string& questions_path, int k,
             const std::string& out_path, const std::string& config_path) {
    EngineConfig config = load_config_or_default(config_path);
    if (k > 0) config.k = k;
    Store store(store_dir);
    MemoryGraph graph = store.load_graph();
    ProviderBundle providers = make_providers(config, store);
    Retriever retriever(graph, store, *providers.perception, *providers.embedder,
                        retrieval_params(config));

    std::vector<BenchmarkQuestion> questions = load_benchmark(questions_path);
    AnswerFn answer_fn = [&](const BenchmarkQuestion& q) {
        EvidenceSet evidence = retriever.retrieve(q.question, config.k);
        AnswerRecord record = providers.answerer->answer(q.question, evidence);
        return std::make_pair(record.answer, evidence.item_ids);
    };
    RunResult run = run_benchmark(questions, config.k, answer_fn, providers.judge);
    nlohmann::json j = to_json(run);

    std::filesystem::path out = out_path.empty()
                                    ? store.reports_dir() /
                                          (std::filesystem::path(questions_path).stem().string() +
                                           "-run.json")
                                    : std::filesystem::path(out_path);
    std::filesystem::create_directories(out.parent_path());
    std::ofstream f(out, std::ios::binary);
    f << j.dump(2) << "\n";
    std::cerr << "run report written to " << out.string() << "\n";
    emit(j);
    return 0;
}

int cmd_storage(const std::string& store_dir, std::uint64_t baseline) {
    Store store(store_dir);
    if (baseline == 0) baseline = corpus_raw_bytes(store.load_corpus());
    emit(to_json(storage_report(store, baseline)));
    return 0;
}

int cmd_classify(const std::string& run_path, const std::string& baseline_path,
                 const std::string& csv_path) {
    auto load_run = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot open run report: " + path);
        nlohmann::json j;
        in >> j;
        return run_from_json(j);
    };
    RunResult run = load_run(run_path);
    RunResult baseline = load_run(baseline_path);
    FailureReport report = classify_failures(run, baseline);
    if (!csv_path.empty()) write_failure_csv(report, csv_path);
    emit(to_json(report));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scrapmem: storage-efficient episodic memory engine"};
    app.require_subcommand(1);

    std::string store_dir, config_path, corpus_dir, policy, now, question, questions_path;
    std::string out_path, run_path, baseline_path, csv_path;
    int k = 0;
    std::uint64_t baseline_bytes = 0;
    unsigned seed = 0;
    bool json_flag = true;

    app.add_option("--seed", seed, "seed for fixture-generation tooling (core is seedless)");
    app.add_flag("--json", json_flag, "machine-readable stdout (always on)");

    auto* ingest_cmd = app.add_subcommand("ingest", "validate a corpus and initialize a store");
    ingest_cmd->add_option("--corpus", corpus_dir, "corpus directory with manifest.jsonl")
        ->required();
    ingest_cmd->add_option("--store", store_dir, "store directory to create")->required();
    ingest_cmd->add_option("--config", config_path, "engine config JSON");

    auto* build_cmd = app.add_subcommand("build", "consolidate pages and build the memory graph");
    build_cmd->add_option("--store", store_dir)->required();
    build_cmd->add_option("--config", config_path);

    auto* forget_cmd = app.add_subcommand("forget", "run a degradation pass");
    forget_cmd->add_option("--store", store_dir)->required();
    forget_cmd->add_option("--policy", policy, "preset name or policy JSON file");
    forget_cmd->add_option("--now", now, "reference date YYYY-MM-DD")->required();
    forget_cmd->add_option("--config", config_path);

    auto* query_cmd = app.add_subcommand("query", "retrieve evidence for a question");
    query_cmd->add_option("--store", store_dir)->required();
    query_cmd->add_option("question", question)->required();
    query_cmd->add_option("-k", k, "retrieval budget");
    query_cmd->add_option("--config", config_path);

    auto* answer_cmd = app.add_subcommand("answer", "retrieve evidence and answer a question");
    answer_cmd->add_option("--store", store_dir)->required();
    answer_cmd->add_option("question", question)->required();
    answer_cmd->add_option("-k", k, "retrieval budget");
    answer_cmd->add_option("--config", config_path);

    auto* eval_cmd = app.add_subcommand("eval", "run a benchmark and report metrics");
    eval_cmd->add_option("--store", store_dir)->required();
    eval_cmd->add_option("--questions", questions_path, "benchmark JSONL")->required();
    eval_cmd->add_option("-k", k, "retrieval budget");
    eval_cmd->add_option("--out", out_path, "run report path (default: store reports dir)");
    eval_cmd->add_option("--config", config_path);

    auto* storage_cmd = app.add_subcommand("storage", "report store size vs baseline");
    storage_cmd->add_option("--store", store_dir)->required();
    storage_cmd->add_option("--baseline", baseline_bytes,
                            "baseline bytes (default: raw corpus size)");

    auto* classify_cmd =
        app.add_subcommand("classify-failures", "label incorrect answers against a baseline run");
    classify_cmd->add_option("--run", run_path, "forgetting run report JSON")->required();
    classify_cmd->add_option("--baseline", baseline_path, "baseline run report JSON")->required();
    classify_cmd->add_option("--csv", csv_path, "write qid,label CSV here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest_cmd->parsed()) return cmd_ingest(corpus_dir, store_dir, config_path);
        if (build_cmd->parsed()) return cmd_build(store_dir, config_path);
        if (forget_cmd->parsed()) return cmd_forget(store_dir, policy, now, config_path);
        if (query_cmd->parsed()) return cmd_query(store_dir, question, k, config_path);
        if (answer_cmd->parsed()) return cmd_answer(store_dir, question, k, config_path);
        if (eval_cmd->parsed())
            return cmd_eval(store_dir, questions_path, k, out_path, config_path);
        if (storage_cmd->parsed()) return cmd_storage(store_dir, baseline_bytes);
        if (classify_cmd->parsed()) return cmd_classify(run_path, baseline_path, csv_path);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ProviderError& e) {
        std::cerr << "provider error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
