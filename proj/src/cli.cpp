#include "notesforge/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "notesforge/classify.hpp"
#include "notesforge/coherence.hpp"
#include "notesforge/corpus.hpp"
#include "notesforge/csv.hpp"
#include "notesforge/embedding.hpp"
#include "notesforge/errors.hpp"
#include "notesforge/features.hpp"
#include "notesforge/io.hpp"
#include "notesforge/numfmt.hpp"
#include "notesforge/rng.hpp"
#include "notesforge/stopwords.hpp"
#include "notesforge/synth.hpp"
#include "notesforge/tagging.hpp"
#include "notesforge/topic_model.hpp"

#include "CLI11.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace notesforge {

namespace {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// config file + overlay
// ---------------------------------------------------------------------------

std::map<std::string, std::string> load_kv(const std::string& path) {
    const auto lines = read_lines(path);
    std::map<std::string, std::string> kv;
    for (size_t i = 0; i < lines.size(); ++i) {
        std::string line = lines[i];
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto trim = [](std::string s) {
            size_t a = 0, b = s.size();
            while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
            while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
            return s.substr(a, b - a);
        };
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw SchemaError(path + ":" + std::to_string(i + 1) + ": expected key=value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void parse_kv_value(const std::string& raw, const std::string& key, std::string& target) {
    (void)key;
    target = raw;
}
void parse_kv_value(const std::string& raw, const std::string& key, double& target) {
    try {
        target = parse_double(raw);
    } catch (const SchemaError&) {
        throw SchemaError("config key '" + key + "': invalid number '" + raw + "'");
    }
}
void parse_kv_value(const std::string& raw, const std::string& key, bool& target) {
    if (raw == "true" || raw == "1" || raw == "yes") target = true;
    else if (raw == "false" || raw == "0" || raw == "no") target = false;
    else throw SchemaError("config key '" + key + "': invalid bool '" + raw + "'");
}
template <typename T>
    requires std::is_integral_v<T>
void parse_kv_value(const std::string& raw, const std::string& key, T& target) {
    try {
        target = static_cast<T>(parse_ll(raw));
    } catch (const SchemaError&) {
        throw SchemaError("config key '" + key + "': invalid integer '" + raw + "'");
    }
}

// Applies config-file values to options the user did not set on the command line.
class Overlay {
  public:
    explicit Overlay(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

    template <typename T>
    void bind(CLI::Option* opt, const std::string& key, T* target) {
        bindings_.push_back([this, opt, key, target] {
            if (opt != nullptr && opt->count() > 0) return;
            auto it = kv_.find(key);
            if (it == kv_.end()) return;
            parse_kv_value(it->second, key, *target);
        });
    }

    void apply() {
        for (auto& b : bindings_) b();
    }

    uint64_t resolve_seed(const CLI::Option* seed_opt, uint64_t flag_value) const {
        if (seed_opt != nullptr && seed_opt->count() > 0) return flag_value;
        if (auto it = kv_.find("seed"); it != kv_.end()) {
            uint64_t v = 0;
            parse_kv_value(it->second, "seed", v);
            return v;
        }
        if (const char* env = std::getenv("NOTESFORGE_SEED")) {
            try {
                return static_cast<uint64_t>(parse_ll(env));
            } catch (const SchemaError&) {
                throw UsageError("NOTESFORGE_SEED is not an integer");
            }
        }
        return flag_value;
    }

  private:
    std::map<std::string, std::string> kv_;
    std::vector<std::function<void()>> bindings_;
};

void require_file(const std::string& path) {
    if (!fs::exists(path)) throw InputError("input file '" + path + "' does not exist");
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create output directory '" + dir + "': " + ec.message());
}

std::vector<int> parse_k_list(const std::string& raw) {
    std::vector<int> ks;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        ks.push_back(static_cast<int>(parse_ll(item)));
    }
    if (ks.empty()) throw UsageError("--k list is empty");
    return ks;
}

std::string source_group(const std::string& feature) {
    if (feature.rfind("note.", 0) == 0) return "note";
    if (feature.rfind("txn.", 0) == 0) return "txn";
    return "other";
}

// ---------------------------------------------------------------------------
// shared option blocks
// ---------------------------------------------------------------------------

struct PreprocessArgs {
    PreprocessConfig config;
    std::string stopwords_path;
    std::string lemma_exceptions_path;
    bool no_phrases = false;

    void add_options(CLI::App* cmd, Overlay& overlay) {
        auto* o1 = cmd->add_option("--phrase-min-count", config.phrase_min_count,
                                   "Minimum collocation count for phrase mining")
                       ->capture_default_str();
        auto* o2 = cmd->add_option("--phrase-threshold", config.phrase_threshold,
                                   "NPMI threshold for phrase mining")
                       ->capture_default_str();
        auto* o3 = cmd->add_option("--vocab-min-count", config.vocab_min_count,
                                   "Prune vocabulary below this count")
                       ->capture_default_str();
        auto* o4 = cmd->add_flag("--no-phrases", no_phrases, "Disable phrase mining");
        auto* o5 = cmd->add_option("--stopwords", stopwords_path,
                                   "Stopword list file (one word per line)");
        auto* o6 = cmd->add_option("--lemma-exceptions", lemma_exceptions_path,
                                   "Extra lemma exceptions CSV (form,lemma)");
        overlay.bind(o1, "preprocess.phrase_min_count", &config.phrase_min_count);
        overlay.bind(o2, "preprocess.phrase_threshold", &config.phrase_threshold);
        overlay.bind(o3, "preprocess.vocab_min_count", &config.vocab_min_count);
        overlay.bind(o4, "preprocess.no_phrases", &no_phrases);
        overlay.bind(o5, "preprocess.stopwords", &stopwords_path);
        overlay.bind(o6, "preprocess.lemma_exceptions", &lemma_exceptions_path);
    }

    PreprocessConfig resolve() const {
        PreprocessConfig cfg = config;
        cfg.mine_phrases_enabled = !no_phrases;
        if (!stopwords_path.empty()) {
            require_file(stopwords_path);
            cfg.stopwords = read_word_list(stopwords_path);
        }
        if (!lemma_exceptions_path.empty()) {
            require_file(lemma_exceptions_path);
            for (const auto& [k, v] : read_lemma_exceptions_csv(lemma_exceptions_path))
                cfg.lemma_exceptions[k] = v;
        }
        return cfg;
    }
};

struct LdaArgs {
    LdaConfig config;

    void add_options(CLI::App* cmd, Overlay& overlay, bool with_k = true) {
        if (with_k) {
            auto* ok = cmd->add_option("--k", config.k, "Number of topics")->capture_default_str();
            overlay.bind(ok, "lda.k", &config.k);
        }
        auto* o1 = cmd->add_option("--alpha", config.alpha,
                                   "Symmetric doc-topic prior (negative -> 50/k)")
                       ->capture_default_str();
        auto* o2 = cmd->add_option("--beta", config.beta, "Symmetric topic-word prior")
                       ->capture_default_str();
        auto* o3 = cmd->add_option("--iterations", config.iterations, "Gibbs sweeps")
                       ->capture_default_str();
        auto* o4 = cmd->add_option("--burn-in", config.burn_in, "Sweeps discarded before averaging")
                       ->capture_default_str();
        auto* o5 = cmd->add_option("--thin", config.thin, "Averaging stride after burn-in")
                       ->capture_default_str();
        overlay.bind(o1, "lda.alpha", &config.alpha);
        overlay.bind(o2, "lda.beta", &config.beta);
        overlay.bind(o3, "lda.iterations", &config.iterations);
        overlay.bind(o4, "lda.burn_in", &config.burn_in);
        overlay.bind(o5, "lda.thin", &config.thin);
    }
};

struct EmbeddingArgs {
    EmbeddingConfig config;

    void add_options(CLI::App* cmd, Overlay& overlay) {
        auto* o1 = cmd->add_option("--dim", config.dim, "Vector dimension")->capture_default_str();
        auto* o2 = cmd->add_option("--window", config.window, "Max context offset")
                       ->capture_default_str();
        auto* o3 = cmd->add_option("--min-count", config.min_count, "Vocabulary count floor")
                       ->capture_default_str();
        auto* o4 = cmd->add_option("--negatives", config.negatives, "Noise samples per positive")
                       ->capture_default_str();
        auto* o5 = cmd->add_option("--epochs", config.epochs, "Corpus passes")
                       ->capture_default_str();
        auto* o6 = cmd->add_option("--lr-initial", config.lr_initial, "Initial learning rate")
                       ->capture_default_str();
        auto* o7 = cmd->add_option("--lr-final", config.lr_final, "Final learning rate")
                       ->capture_default_str();
        auto* o8 = cmd->add_flag("--subsample", config.subsample,
                                 "Enable frequent-word subsampling");
        overlay.bind(o1, "embedding.dim", &config.dim);
        overlay.bind(o2, "embedding.window", &config.window);
        overlay.bind(o3, "embedding.min_count", &config.min_count);
        overlay.bind(o4, "embedding.negatives", &config.negatives);
        overlay.bind(o5, "embedding.epochs", &config.epochs);
        overlay.bind(o6, "embedding.lr_initial", &config.lr_initial);
        overlay.bind(o7, "embedding.lr_final", &config.lr_final);
        overlay.bind(o8, "embedding.subsample", &config.subsample);
    }
};

struct ModelArgs {
    std::string model = "gbt";
    double l2 = 1e-3;
    int epochs = 500;
    double lr = 0.1;
    int max_depth = -1;  // -1 -> model default (tree 6, gbt 3)
    int min_leaf = -1;   // -1 -> model default (tree 20, gbt 200)
    int rounds = 200;
    double learning_rate = 0.1;

    void add_options(CLI::App* cmd, Overlay& overlay) {
        auto* o0 = cmd->add_option("--model", model, "Classifier: logistic | tree | gbt")
                       ->check(CLI::IsMember({"logistic", "tree", "gbt"}))
                       ->capture_default_str();
        auto* o1 = cmd->add_option("--l2", l2, "Logistic L2 penalty")->capture_default_str();
        auto* o2 = cmd->add_option("--epochs", epochs, "Logistic gradient-descent epochs")
                       ->capture_default_str();
        auto* o3 = cmd->add_option("--lr", lr, "Logistic learning rate")->capture_default_str();
        auto* o4 = cmd->add_option("--max-depth", max_depth,
                                   "Tree depth (default 6 for tree, 3 for gbt)");
        auto* o5 = cmd->add_option("--min-leaf", min_leaf,
                                   "Minimum samples per leaf (default 20 for tree, 200 for gbt)");
        auto* o6 = cmd->add_option("--rounds", rounds, "GBT boosting rounds")
                       ->capture_default_str();
        auto* o7 = cmd->add_option("--learning-rate", learning_rate, "GBT shrinkage")
                       ->capture_default_str();
        overlay.bind(o0, "train.model", &model);
        overlay.bind(o1, "train.l2", &l2);
        overlay.bind(o2, "train.epochs", &epochs);
        overlay.bind(o3, "train.lr", &lr);
        overlay.bind(o4, "train.max_depth", &max_depth);
        overlay.bind(o5, "train.min_leaf", &min_leaf);
        overlay.bind(o6, "train.rounds", &rounds);
        overlay.bind(o7, "train.learning_rate", &learning_rate);
    }

    ModelParams resolve(uint64_t seed) const {
        if (model == "logistic") return LogisticParams{l2, epochs, lr, seed};
        if (model == "tree")
            return TreeParams{max_depth < 0 ? 6 : max_depth, min_leaf < 0 ? 20 : min_leaf, seed};
        return GbtParams{rounds, learning_rate, max_depth < 0 ? 3 : max_depth,
                         min_leaf < 0 ? 200 : min_leaf, seed};
    }
};

// ---------------------------------------------------------------------------
// report writers
// ---------------------------------------------------------------------------

ojson eval_to_json(const EvalReport& r) {
    ojson j;
    j["accuracy"] = r.accuracy;
    j["weighted_f1"] = r.weighted_f1;
    if (r.auc)
        j["auc"] = *r.auc;
    else
        j["auc"] = nullptr;
    j["confusion"] = {{"tp", r.tp}, {"tn", r.tn}, {"fp", r.fp}, {"fn", r.fn}};
    j["threshold"] = r.threshold;
    return j;
}

std::string roc_csv(const std::vector<RocPoint>& roc) {
    std::string out = "fpr,tpr,threshold\n";
    for (const auto& p : roc) {
        out += fmt_double(p.fpr);
        out += ',';
        out += fmt_double(p.tpr);
        out += ',';
        out += fmt_double(p.threshold);
        out += '\n';
    }
    return out;
}

void write_cv_report(const std::string& dir, const std::string& model_name, const CvReport& cv) {
    ensure_dir(dir);
    ojson j;
    j["model"] = model_name;
    j["folds"] = cv.folds.size();
    j["mean_train_accuracy"] = cv.mean_train_accuracy;
    j["mean_test_accuracy"] = cv.mean_test_accuracy;
    j["mean_train_weighted_f1"] = cv.mean_train_f1;
    j["mean_test_weighted_f1"] = cv.mean_test_f1;
    j["mean_train_auc"] = cv.mean_train_auc;
    j["mean_test_auc"] = cv.mean_test_auc;
    j["representative_fold"] = cv.representative_fold;
    ojson folds = ojson::array();
    for (const auto& fe : cv.folds) {
        ojson f;
        f["train"] = eval_to_json(fe.train);
        f["test"] = eval_to_json(fe.test);
        folds.push_back(std::move(f));
    }
    j["per_fold"] = std::move(folds);
    write_text_file(dir + "/metrics.json", j.dump(2) + "\n");
    const auto& rep = cv.folds[static_cast<size_t>(cv.representative_fold)];
    write_text_file(dir + "/roc.csv", roc_csv(rep.test.roc));
    write_text_file(dir + "/roc_train.csv", roc_csv(rep.train.roc));
}

void write_importance_csv(const std::string& path,
                          const std::vector<std::pair<std::string, double>>& ranking) {
    std::string out = "rank,feature,importance,source_group\n";
    for (size_t i = 0; i < ranking.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += csv_escape(ranking[i].first);
        out += ',';
        out += fmt_double(ranking[i].second);
        out += ',';
        out += source_group(ranking[i].first);
        out += '\n';
    }
    write_text_file(path, out);
}

void write_scenario(const std::string& dir, const Scenario& scenario, const ScenarioSpec& spec) {
    ensure_dir(dir);
    write_notes_jsonl(dir + "/notes.jsonl", scenario.notes);
    write_transactions_csv(dir + "/transactions.csv", scenario.transactions);
    write_vix_csv(dir + "/vix.csv", scenario.vix);
    write_labels_csv(dir + "/labels.csv", scenario.labels);
    ojson truth;
    truth["kind"] = "scenario";
    truth["spec"] = {{"n_clients", spec.n_clients},
                     {"start", format_date(spec.start)},
                     {"weeks", spec.weeks},
                     {"base_rate", spec.base_rate},
                     {"beta_signal", spec.beta_signal},
                     {"notes_min", spec.notes_min},
                     {"notes_max", spec.notes_max},
                     {"trades_min", spec.trades_min},
                     {"trades_max", spec.trades_max},
                     {"calm_block_weeks", spec.calm_block_weeks},
                     {"volatile_block_weeks", spec.volatile_block_weeks},
                     {"trade_clustering", spec.trade_clustering},
                     {"misspell_rate", spec.misspell_rate},
                     {"seed", spec.seed}};
    truth["intercept"] = scenario.truth.intercept;
    truth["end"] = format_date(scenario.end);
    truth["volatile_weeks"] = scenario.truth.volatile_week_index;
    ojson clients = ojson::array();
    for (size_t i = 0; i < scenario.truth.client_ids.size(); ++i) {
        clients.push_back({{"client_id", scenario.truth.client_ids[i]},
                           {"anxiety", scenario.truth.anxiety[i]},
                           {"note_channel", scenario.truth.note_channel[i]},
                           {"trade_channel", scenario.truth.trade_channel[i]},
                           {"p_label", scenario.truth.p_label[i]},
                           {"label", scenario.labels.at(scenario.truth.client_ids[i])}});
    }
    truth["clients"] = std::move(clients);
    write_text_file(dir + "/ground_truth.json", truth.dump(2) + "\n");
}

void write_topic_corpus(const std::string& dir, const TopicCorpus& corpus,
                        const TopicCorpusSpec& spec) {
    ensure_dir(dir);
    write_notes_jsonl(dir + "/notes.jsonl", corpus.notes);
    ojson truth;
    truth["kind"] = "topic-corpus";
    truth["spec"] = {{"n_topics", spec.n_topics},
                     {"vocab_per_topic", spec.vocab_per_topic},
                     {"shared_vocab", spec.shared_vocab},
                     {"n_docs", spec.n_docs},
                     {"doc_len_min", spec.doc_len_min},
                     {"doc_len_max", spec.doc_len_max},
                     {"concentration", spec.concentration},
                     {"seed", spec.seed}};
    truth["topic_vocab"] = corpus.truth.topic_vocab;
    ojson docs = ojson::array();
    for (size_t i = 0; i < corpus.notes.size(); ++i) {
        docs.push_back({{"note_id", corpus.notes[i].note_id},
                        {"dominant", corpus.truth.dominant[i]},
                        {"mixture", corpus.truth.doc_mixture[i]}});
    }
    truth["docs"] = std::move(docs);
    write_text_file(dir + "/ground_truth.json", truth.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// stage runners shared by individual commands and `pipeline`
// ---------------------------------------------------------------------------

void run_lda_fit(const std::vector<TokenDoc>& docs, const Vocabulary& vocab, LdaConfig config,
                 int top_n, const std::string& theme_map_path, const std::string& out_dir,
                 std::ostream& out) {
    const LdaModel model = fit_lda(docs, vocab, config);
    ensure_dir(out_dir);
    save_lda(model, out_dir);

    std::vector<long long> dominant_counts(static_cast<size_t>(model.k), 0);
    std::string doc_topics = "note_id,topic,share\n";
    for (int d = 0; d < model.D; ++d) {
        const auto [topic, share] = model.dominant_topic(d);
        ++dominant_counts[static_cast<size_t>(topic)];
        doc_topics += csv_escape(model.note_ids[static_cast<size_t>(d)]);
        doc_topics += ',';
        doc_topics += std::to_string(topic);
        doc_topics += ',';
        doc_topics += fmt_double(share);
        doc_topics += '\n';
    }
    write_text_file(out_dir + "/doc_topics.csv", doc_topics);

    std::string topics = "topic,share,keywords\n";
    for (int t = 0; t < model.k; ++t) {
        const auto words = model.top_words(t, top_n);
        std::string joined;
        for (size_t i = 0; i < words.size(); ++i) {
            if (i) joined += ' ';
            joined += words[i];
        }
        topics += std::to_string(t);
        topics += ',';
        topics += fmt_double(static_cast<double>(dominant_counts[static_cast<size_t>(t)]) /
                             static_cast<double>(model.D));
        topics += ',';
        topics += csv_escape(joined);
        topics += '\n';
    }
    write_text_file(out_dir + "/topics.csv", topics);

    if (!theme_map_path.empty()) {
        require_file(theme_map_path);
        const auto theme_map = read_theme_map_csv(theme_map_path);
        std::map<std::string, double> theme_share;
        for (int t = 0; t < model.k; ++t) {
            auto it = theme_map.find(t);
            const std::string theme = it == theme_map.end() ? "(unmapped)" : it->second;
            theme_share[theme] += static_cast<double>(dominant_counts[static_cast<size_t>(t)]) /
                                  static_cast<double>(model.D);
        }
        std::string themes = "theme,share\n";
        for (const auto& [theme, share] : theme_share) {
            themes += csv_escape(theme);
            themes += ',';
            themes += fmt_double(share);
            themes += '\n';
        }
        write_text_file(out_dir + "/themes.csv", themes);
    }
    out << "lda fit: k=" << model.k << " D=" << model.D << " V=" << model.V << " -> " << out_dir
        << "\n";
}

std::string scan_curve_csv(const ScanResult& scan) {
    std::string curve = "k,mean_cv,per_topic_cv\n";
    for (const auto& p : scan.points) {
        curve += std::to_string(p.k);
        curve += ',';
        curve += fmt_double(p.mean_cv);
        for (double v : p.per_topic) {
            curve += ',';
            curve += fmt_double(v);
        }
        curve += '\n';
    }
    return curve;
}

Date max_input_date(const std::vector<RawNote>& notes,
                    const std::vector<TransactionRecord>& records, const VixSeries& vix) {
    Date m{INT32_MIN};
    for (const auto& n : notes) m = std::max(m, n.date);
    for (const auto& r : records) m = std::max(m, r.date);
    for (const auto& d : vix.dates) m = std::max(m, d);
    return m;
}

Dataset run_featurize(const std::vector<RawNote>& notes, const std::vector<TagEvent>& events,
                      const std::vector<TransactionRecord>& records, const VixSeries& vix,
                      const std::map<std::string, int>& labels, Date as_of,
                      const TxnFeatureConfig& txn_cfg, const NoteFeatureConfig& note_cfg) {
    std::vector<std::string> clients;
    clients.reserve(labels.size());
    for (const auto& [client, label] : labels) clients.push_back(client);

    std::map<std::string, long long> note_counts;
    for (const auto& n : notes)
        if (n.date <= as_of) ++note_counts[n.client_id];

    std::vector<std::string> topics;
    {
        std::set<std::string> distinct;
        for (const auto& ev : events) distinct.insert(ev.topic_name);
        topics.assign(distinct.begin(), distinct.end());
    }

    const auto weekly = weekly_vix(vix);
    const FeatureGroup note_group =
        note_features(events, note_counts, as_of, note_cfg, clients, topics);
    const FeatureGroup txn_group = txn_features(records, weekly, as_of, txn_cfg, clients);
    return build_dataset(note_group, txn_group, labels);
}

// ---------------------------------------------------------------------------
// run_cli
// ---------------------------------------------------------------------------

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace

std::map<std::string, std::string> parse_kv_config(const std::string& path) {
    require_file(path);
    return load_kv(path);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const UsageError& e) {
        ojson j;
        j["error"] = {{"code", 1}, {"kind", "usage"}, {"message", e.what()}};
        err << j.dump() << "\n";
        return 1;
    } catch (const InputError& e) {
        ojson j;
        j["error"] = {{"code", 2}, {"kind", "input"}, {"message", e.what()}};
        err << j.dump() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        ojson j;
        j["error"] = {{"code", 3}, {"kind", "schema"}, {"message", e.what()}};
        err << j.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        ojson j;
        j["error"] = {{"code", 3}, {"kind", "schema"}, {"message", e.what()}};
        err << j.dump() << "\n";
        return 3;
    }
}

namespace {

int dispatch(const std::vector<std::string>& args, std::ostream& out, [[maybe_unused]] std::ostream& err) {
    CLI::App app{"notesforge: advisor-notes analytics pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key=value config file (flags override)")
        ->expected(1);

    uint64_t seed = 0;
    // pre-scan for --config so file values can back every subcommand
    for (size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") config_path = args[i + 1];
    std::map<std::string, std::string> kv;
    if (!config_path.empty()) kv = parse_kv_config(config_path);
    Overlay overlay(kv);

    // --- synth ---------------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "Generate seeded synthetic inputs");
    std::string synth_out, synth_mode = "scenario", synth_start;
    ScenarioSpec scen_spec;
    TopicCorpusSpec topic_spec;
    synth->add_option("--out", synth_out, "Output directory")->required();
    synth->add_option("--mode", synth_mode, "scenario | topic-corpus")
        ->check(CLI::IsMember({"scenario", "topic-corpus"}))
        ->capture_default_str();
    auto* so1 = synth->add_option("--clients", scen_spec.n_clients, "Scenario clients")
                    ->capture_default_str();
    auto* so2 = synth->add_option("--weeks", scen_spec.weeks, "Study window weeks")
                    ->capture_default_str();
    auto* so3 = synth->add_option("--base-rate", scen_spec.base_rate, "Cash-out base rate")
                    ->capture_default_str();
    auto* so4 = synth->add_option("--beta", scen_spec.beta_signal,
                                  "Anxiety effect on cash-out log-odds")
                    ->capture_default_str();
    auto* so5 = synth->add_option("--trade-clustering", scen_spec.trade_clustering,
                                  "Trade-timing coupling to anxiety (0 = none)")
                    ->capture_default_str();
    synth->add_option("--start", synth_start, "Window start date (YYYY-MM-DD, a Monday)");
    auto* so6 = synth->add_option("--topics", topic_spec.n_topics, "Topic-corpus topics")
                    ->capture_default_str();
    auto* so7 = synth->add_option("--docs", topic_spec.n_docs, "Topic-corpus documents")
                    ->capture_default_str();
    auto* so8 = synth->add_option("--vocab-per-topic", topic_spec.vocab_per_topic,
                                  "Planted vocabulary per topic")
                    ->capture_default_str();
    auto* so9 = synth->add_option("--shared-vocab", topic_spec.shared_vocab,
                                  "Shared vocabulary across topics")
                    ->capture_default_str();
    auto* so10 = synth->add_option("--concentration", topic_spec.concentration,
                                   "Dirichlet concentration (0 = single-topic docs)")
                     ->capture_default_str();
    auto* synth_seed = synth->add_option("--seed", seed, "RNG seed")->capture_default_str();
    overlay.bind(so1, "synth.clients", &scen_spec.n_clients);
    overlay.bind(so2, "synth.weeks", &scen_spec.weeks);
    overlay.bind(so3, "synth.base_rate", &scen_spec.base_rate);
    overlay.bind(so4, "synth.beta", &scen_spec.beta_signal);
    overlay.bind(so5, "synth.trade_clustering", &scen_spec.trade_clustering);
    overlay.bind(so6, "synth.topics", &topic_spec.n_topics);
    overlay.bind(so7, "synth.docs", &topic_spec.n_docs);
    overlay.bind(so8, "synth.vocab_per_topic", &topic_spec.vocab_per_topic);
    overlay.bind(so9, "synth.shared_vocab", &topic_spec.shared_vocab);
    overlay.bind(so10, "synth.concentration", &topic_spec.concentration);

    // --- preprocess ------------------------------------------------------------
    auto* preprocess_cmd = app.add_subcommand("preprocess", "Clean, tokenize, mine phrases, lemmatize");
    std::string pp_notes, pp_out;
    PreprocessArgs pp_args;
    preprocess_cmd->add_option("--notes", pp_notes, "Notes JSONL input")->required();
    preprocess_cmd->add_option("--out", pp_out, "Output directory")->required();
    pp_args.add_options(preprocess_cmd, overlay);

    // --- stats -----------------------------------------------------------------
    auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics CSVs");
    std::string st_notes, st_out;
    stats_cmd->add_option("--notes", st_notes, "Notes JSONL input")->required();
    stats_cmd->add_option("--out", st_out, "Output directory")->required();

    // --- lda fit | scan ----------------------------------------------------------
    auto* lda_cmd = app.add_subcommand("lda", "Topic modeling");
    lda_cmd->require_subcommand(1);
    auto* lda_fit = lda_cmd->add_subcommand("fit", "Fit LDA by collapsed Gibbs sampling");
    std::string lf_corpus, lf_vocab, lf_out, lf_theme_map;
    LdaArgs lf_args;
    int lf_top_n = 10;
    lda_fit->add_option("--corpus", lf_corpus, "Corpus JSONL input")->required();
    lda_fit->add_option("--vocab", lf_vocab, "Vocabulary CSV input")->required();
    lda_fit->add_option("--out", lf_out, "Model output directory")->required();
    lf_args.add_options(lda_fit, overlay);
    auto* lf_topn_opt =
        lda_fit->add_option("--top-n", lf_top_n, "Keywords per topic in topics.csv")
            ->capture_default_str();
    overlay.bind(lf_topn_opt, "lda.top_n", &lf_top_n);
    lda_fit->add_option("--theme-map", lf_theme_map, "topic,theme CSV for theme rollup");
    auto* lf_seed = lda_fit->add_option("--seed", seed, "RNG seed")->capture_default_str();

    auto* lda_scan = lda_cmd->add_subcommand("scan", "Coherence scan over topic counts");
    std::string ls_corpus, ls_vocab, ls_out, ls_klist = "5,10,15,20,25";
    LdaArgs ls_args;
    CoherenceConfig ls_coh;
    lda_scan->add_option("--corpus", ls_corpus, "Corpus JSONL input")->required();
    lda_scan->add_option("--vocab", ls_vocab, "Vocabulary CSV input")->required();
    lda_scan->add_option("--out", ls_out, "Output directory")->required();
    lda_scan->add_option("--k", ls_klist, "Comma-separated k values")->capture_default_str();
    ls_args.add_options(lda_scan, overlay, /*with_k=*/false);
    auto* ls_w = lda_scan->add_option("--window-size", ls_coh.window_size,
                                      "Sliding window size in tokens")
                     ->capture_default_str();
    auto* ls_t = lda_scan->add_option("--top-n", ls_coh.top_n, "Topic words scored")
                     ->capture_default_str();
    overlay.bind(ls_w, "coherence.window_size", &ls_coh.window_size);
    overlay.bind(ls_t, "coherence.top_n", &ls_coh.top_n);
    auto* ls_seed = lda_scan->add_option("--seed", seed, "RNG seed")->capture_default_str();

    // --- coherence ---------------------------------------------------------------
    auto* coh_cmd = app.add_subcommand("coherence", "Score topic coherence (C_v)");
    std::string ch_corpus, ch_words, ch_model, ch_out;
    CoherenceConfig ch_cfg;
    coh_cmd->add_option("--corpus", ch_corpus, "Corpus JSONL input")->required();
    coh_cmd->add_option("--words", ch_words, "Comma-separated word set to score");
    coh_cmd->add_option("--model", ch_model, "LDA model directory (scores each topic)");
    coh_cmd->add_option("--out", ch_out, "Output CSV (default stdout)");
    auto* ch_w = coh_cmd->add_option("--window-size", ch_cfg.window_size, "Sliding window size")
                     ->capture_default_str();
    auto* ch_t = coh_cmd->add_option("--top-n", ch_cfg.top_n, "Topic words scored")
                     ->capture_default_str();
    overlay.bind(ch_w, "coherence.window_size", &ch_cfg.window_size);
    overlay.bind(ch_t, "coherence.top_n", &ch_cfg.top_n);

    // --- embed train | similar ------------------------------------------------------
    auto* embed_cmd = app.add_subcommand("embed", "Skip-gram embeddings");
    embed_cmd->require_subcommand(1);
    auto* embed_train = embed_cmd->add_subcommand("train", "Train SGNS embeddings");
    std::string et_corpus, et_out;
    EmbeddingArgs et_args;
    embed_train->add_option("--corpus", et_corpus, "Corpus JSONL input")->required();
    embed_train->add_option("--out", et_out, "Vector text file output")->required();
    et_args.add_options(embed_train, overlay);
    auto* et_seed = embed_train->add_option("--seed", seed, "RNG seed")->capture_default_str();

    auto* embed_similar = embed_cmd->add_subcommand("similar", "Nearest neighbors by cosine");
    std::string es_vectors, es_word;
    int es_k = 10;
    embed_similar->add_option("--vectors", es_vectors, "Vector text file")->required();
    embed_similar->add_option("--word", es_word, "Query word")->required();
    embed_similar->add_option("--k", es_k, "Neighbors returned")->capture_default_str();

    // --- tag -------------------------------------------------------------------
    auto* tag_cmd = app.add_subcommand("tag", "Tag semantic keyword occurrences");
    std::string tg_corpus, tg_notes, tg_vectors, tg_out, tg_lexicons;
    double tg_threshold = 0.7;
    tag_cmd->add_option("--corpus", tg_corpus, "Corpus JSONL input")->required();
    tag_cmd->add_option("--notes", tg_notes, "Notes JSONL input (metadata)")->required();
    tag_cmd->add_option("--vectors", tg_vectors, "Vector text file")->required();
    tag_cmd->add_option("--out", tg_out, "Events CSV output")->required();
    auto* tg_lx = tag_cmd->add_option("--lexicons", tg_lexicons,
                                      "Lexicon JSON (default: built-in topics)");
    auto* tg_th = tag_cmd->add_option("--threshold", tg_threshold,
                                      "Similarity threshold for built-in lexicons")
                      ->capture_default_str();
    overlay.bind(tg_lx, "tagging.lexicons", &tg_lexicons);
    overlay.bind(tg_th, "tagging.threshold", &tg_threshold);

    // --- featurize ----------------------------------------------------------------
    auto* feat_cmd = app.add_subcommand("featurize", "Join note/transaction features with labels");
    std::string fz_events, fz_notes, fz_txns, fz_vix, fz_labels, fz_as_of, fz_out;
    TxnFeatureConfig fz_txn_cfg;
    NoteFeatureConfig fz_note_cfg;
    feat_cmd->add_option("--events", fz_events, "Tag events CSV")->required();
    feat_cmd->add_option("--notes", fz_notes, "Notes JSONL (per-client note counts)")->required();
    feat_cmd->add_option("--transactions", fz_txns, "Transactions CSV")->required();
    feat_cmd->add_option("--vix", fz_vix, "VIX CSV")->required();
    feat_cmd->add_option("--labels", fz_labels, "Labels CSV")->required();
    feat_cmd->add_option("--as-of", fz_as_of, "Feature cutoff date (YYYY-MM-DD)")->required();
    feat_cmd->add_option("--out", fz_out, "Dataset CSV output")->required();
    auto* fz_lb = feat_cmd->add_option("--lookback", fz_txn_cfg.lookback_days,
                                       "Transaction lookback days")
                      ->capture_default_str();
    auto* fz_hl = feat_cmd->add_option("--half-life", fz_note_cfg.half_life_days,
                                       "Tag recency half-life days")
                      ->capture_default_str();
    overlay.bind(fz_lb, "features.lookback_days", &fz_txn_cfg.lookback_days);
    overlay.bind(fz_hl, "features.half_life", &fz_note_cfg.half_life_days);

    // --- train / evaluate / importance ----------------------------------------------
    auto* train_cmd = app.add_subcommand("train", "Train a classifier on the full dataset");
    std::string tr_dataset, tr_out;
    ModelArgs tr_model;
    train_cmd->add_option("--dataset", tr_dataset, "Dataset CSV")->required();
    train_cmd->add_option("--out", tr_out, "Model JSON output")->required();
    tr_model.add_options(train_cmd, overlay);
    auto* tr_seed = train_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();

    auto* eval_cmd = app.add_subcommand("evaluate", "Stratified k-fold cross-validation report");
    std::string ev_dataset, ev_out;
    ModelArgs ev_model;
    int ev_folds = 5;
    eval_cmd->add_option("--dataset", ev_dataset, "Dataset CSV")->required();
    eval_cmd->add_option("--out", ev_out, "Report output directory")->required();
    ev_model.add_options(eval_cmd, overlay);
    auto* ev_f = eval_cmd->add_option("--folds", ev_folds, "Cross-validation folds")
                     ->capture_default_str();
    overlay.bind(ev_f, "train.folds", &ev_folds);
    auto* ev_seed = eval_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();

    auto* imp_cmd = app.add_subcommand("importance", "Rank features by importance");
    std::string im_dataset, im_model_file, im_out;
    ModelArgs im_model;
    imp_cmd->add_option("--dataset", im_dataset, "Dataset CSV (trains on the full data)");
    imp_cmd->add_option("--model-file", im_model_file, "Use a saved model instead of training");
    imp_cmd->add_option("--out", im_out, "Importance CSV output")->required();
    im_model.add_options(imp_cmd, overlay);
    auto* im_seed = imp_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();

    // --- pipeline --------------------------------------------------------------
    auto* pipe_cmd = app.add_subcommand("pipeline", "Chain synth-or-real inputs through evaluate");
    std::string pl_out, pl_synth, pl_notes, pl_txns, pl_vix, pl_labels;
    PreprocessArgs pl_pp;
    LdaArgs pl_lda;
    EmbeddingArgs pl_embed;
    ModelArgs pl_model;  // used for both evaluated models' shared knobs
    std::string pl_lexicons;
    int pl_folds = 5;
    int pl_top_n = 10;
    pipe_cmd->add_option("--out", pl_out, "Output directory")->required();
    pipe_cmd->add_option("--synth", pl_synth,
                         "Generate inputs first: 'default' or omit to use real inputs");
    pipe_cmd->add_option("--notes", pl_notes, "Notes JSONL (real input)");
    pipe_cmd->add_option("--transactions", pl_txns, "Transactions CSV (real input)");
    pipe_cmd->add_option("--vix", pl_vix, "VIX CSV (real input)");
    pipe_cmd->add_option("--labels", pl_labels, "Labels CSV (real input)");
    pl_pp.add_options(pipe_cmd, overlay);
    pl_lda.add_options(pipe_cmd, overlay);
    pl_embed.add_options(pipe_cmd, overlay);
    auto* pl_lx = pipe_cmd->add_option("--lexicons", pl_lexicons, "Lexicon JSON file");
    overlay.bind(pl_lx, "tagging.lexicons", &pl_lexicons);
    auto* pl_f = pipe_cmd->add_option("--folds", pl_folds, "Cross-validation folds")
                     ->capture_default_str();
    overlay.bind(pl_f, "train.folds", &pl_folds);
    auto* pl_tn = pipe_cmd->add_option("--top-n", pl_top_n, "Keywords per topic")
                      ->capture_default_str();
    overlay.bind(pl_tn, "lda.top_n", &pl_top_n);
    auto* pl_rounds = pipe_cmd->add_option("--rounds", pl_model.rounds, "GBT boosting rounds")
                          ->capture_default_str();
    overlay.bind(pl_rounds, "train.rounds", &pl_model.rounds);
    auto* pl_seed = pipe_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();

    // ----------------------------------------------------------------------------
    std::vector<const char*> argv;
    argv.push_back("notesforge");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        const CLI::App* target = &app;
        while (!target->get_subcommands().empty()) target = target->get_subcommands().front();
        out << target->help();
        return 0;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    overlay.apply();

    if (*synth) {
        const uint64_t s = overlay.resolve_seed(synth_seed, seed);
        ensure_dir(synth_out);
        if (synth_mode == "scenario") {
            scen_spec.seed = s;
            if (!synth_start.empty()) scen_spec.start = parse_date(synth_start);
            write_scenario(synth_out, gen_scenario(scen_spec), scen_spec);
        } else {
            topic_spec.seed = s;
            write_topic_corpus(synth_out, gen_topic_corpus(topic_spec), topic_spec);
        }
        out << "synth: wrote " << synth_out << "\n";
        return 0;
    }

    if (*preprocess_cmd) {
        require_file(pp_notes);
        const auto notes = read_notes_jsonl(pp_notes);
        const auto result = preprocess(notes, pp_args.resolve());
        ensure_dir(pp_out);
        write_corpus_jsonl(pp_out + "/corpus.jsonl", result.docs);
        write_vocab_csv(pp_out + "/vocab.csv", result.vocab);
        out << "preprocess: " << result.docs.size() << " docs, vocabulary " << result.vocab.size()
            << ", " << result.phrases.size() << " phrases -> " << pp_out << "\n";
        return 0;
    }

    if (*stats_cmd) {
        require_file(st_notes);
        const auto notes = read_notes_jsonl(st_notes);
        write_stats(st_out, corpus_stats(notes));
        out << "stats: " << notes.size() << " notes -> " << st_out << "\n";
        return 0;
    }

    if (*lda_fit) {
        require_file(lf_corpus);
        require_file(lf_vocab);
        lf_args.config.seed = overlay.resolve_seed(lf_seed, seed);
        run_lda_fit(read_corpus_jsonl(lf_corpus), read_vocab_csv(lf_vocab), lf_args.config,
                    lf_top_n, lf_theme_map, lf_out, out);
        return 0;
    }

    if (*lda_scan) {
        require_file(ls_corpus);
        require_file(ls_vocab);
        ls_args.config.seed = overlay.resolve_seed(ls_seed, seed);
        const auto ks = parse_k_list(ls_klist);
        const auto scan = scan_topics(read_corpus_jsonl(ls_corpus), read_vocab_csv(ls_vocab), ks,
                                      ls_args.config, ls_coh);
        ensure_dir(ls_out);
        write_text_file(ls_out + "/coherence_curve.csv", scan_curve_csv(scan));
        write_text_file(ls_out + "/best_k.txt", std::to_string(scan.best_k) + "\n");
        out << "best_k," << scan.best_k << "\n";
        return 0;
    }

    if (*coh_cmd) {
        require_file(ch_corpus);
        const auto docs = read_corpus_jsonl(ch_corpus);
        if (ch_words.empty() == ch_model.empty())
            throw UsageError("coherence: pass exactly one of --words or --model");
        std::string csv = "topic,cv,words\n";
        if (!ch_words.empty()) {
            std::vector<std::string> words;
            std::stringstream ss(ch_words);
            std::string w;
            while (std::getline(ss, w, ','))
                if (!w.empty()) words.push_back(w);
            const auto counts = count_windows(
                docs, ch_cfg.window_size,
                std::unordered_set<std::string>(words.begin(), words.end()));
            csv += "0," + fmt_double(c_v(words, counts, ch_cfg)) + "," + csv_escape(ch_words) +
                   "\n";
        } else {
            const LdaModel model = load_lda(ch_model);
            std::unordered_set<std::string> needed;
            std::vector<std::vector<std::string>> lists;
            for (int t = 0; t < model.k; ++t) {
                lists.push_back(model.top_words(t, ch_cfg.top_n));
                needed.insert(lists.back().begin(), lists.back().end());
            }
            const auto counts = count_windows(docs, ch_cfg.window_size, needed);
            for (int t = 0; t < model.k; ++t) {
                std::string joined;
                for (size_t i = 0; i < lists[static_cast<size_t>(t)].size(); ++i) {
                    if (i) joined += ' ';
                    joined += lists[static_cast<size_t>(t)][i];
                }
                csv += std::to_string(t) + "," +
                       fmt_double(c_v(lists[static_cast<size_t>(t)], counts, ch_cfg)) + "," +
                       csv_escape(joined) + "\n";
            }
        }
        if (ch_out.empty())
            out << csv;
        else
            write_text_file(ch_out, csv);
        return 0;
    }

    if (*embed_train) {
        require_file(et_corpus);
        et_args.config.seed = overlay.resolve_seed(et_seed, seed);
        const auto model = train_embedding(read_corpus_jsonl(et_corpus), et_args.config);
        save_embedding(model, et_out);
        out << "embed train: " << model.size() << " words, dim " << model.dim() << " -> "
            << et_out << "\n";
        return 0;
    }

    if (*embed_similar) {
        require_file(es_vectors);
        const auto model = load_embedding(es_vectors);
        out << "word,similarity\n";
        for (const auto& [word, sim] : model.most_similar(es_word, es_k))
            out << csv_escape(word) << ',' << fmt_double(sim) << "\n";
        return 0;
    }

    if (*tag_cmd) {
        require_file(tg_corpus);
        require_file(tg_notes);
        require_file(tg_vectors);
        const auto docs = read_corpus_jsonl(tg_corpus);
        const auto notes = read_notes_jsonl(tg_notes);
        const auto model = load_embedding(tg_vectors);
        std::vector<LexiconSpec> specs;
        if (tg_lexicons.empty()) {
            specs = default_lexicons();
            for (auto& spec : specs) spec.threshold = tg_threshold;
        } else {
            require_file(tg_lexicons);
            specs = read_lexicon_specs(tg_lexicons);
        }
        std::vector<TopicLexicon> lexicons;
        for (const auto& spec : specs) lexicons.push_back(expand_lexicon(model, spec));
        std::unordered_map<std::string, RawNote> meta;
        for (const auto& n : notes) meta[n.note_id] = n;
        const auto events = tag_corpus(docs, meta, lexicons);
        write_events_csv(tg_out, events);
        out << "tag: " << events.size() << " events -> " << tg_out << "\n";
        return 0;
    }

    if (*feat_cmd) {
        require_file(fz_events);
        require_file(fz_notes);
        require_file(fz_txns);
        require_file(fz_vix);
        require_file(fz_labels);
        const Date as_of = parse_date(fz_as_of);
        const Dataset ds = run_featurize(read_notes_jsonl(fz_notes), read_events_csv(fz_events),
                                         read_transactions_csv(fz_txns), read_vix_csv(fz_vix),
                                         read_labels_csv(fz_labels), as_of, fz_txn_cfg,
                                         fz_note_cfg);
        write_dataset_csv(fz_out, ds);
        out << "featurize: " << ds.rows() << " clients x " << ds.cols() << " features -> "
            << fz_out << "\n";
        return 0;
    }

    if (*train_cmd) {
        require_file(tr_dataset);
        const Dataset ds = read_dataset_csv(tr_dataset);
        const uint64_t s = overlay.resolve_seed(tr_seed, seed);
        const TrainedModel model = train_model(ds, tr_model.resolve(s));
        save_model(model, tr_out);
        out << "train: " << model.kind() << " on " << ds.rows() << " rows -> " << tr_out << "\n";
        return 0;
    }

    if (*eval_cmd) {
        require_file(ev_dataset);
        const Dataset ds = read_dataset_csv(ev_dataset);
        const uint64_t s = overlay.resolve_seed(ev_seed, seed);
        const CvReport cv = cross_validate(ds, ev_model.resolve(s), ev_folds, s);
        write_cv_report(ev_out, ev_model.model, cv);
        out << "evaluate: " << ev_model.model << " mean test accuracy "
            << fmt_double(cv.mean_test_accuracy) << ", weighted F1 "
            << fmt_double(cv.mean_test_f1) << ", AUC " << fmt_double(cv.mean_test_auc) << " -> "
            << ev_out << "\n";
        return 0;
    }

    if (*imp_cmd) {
        TrainedModel model;
        if (!im_model_file.empty()) {
            require_file(im_model_file);
            model = load_model(im_model_file);
        } else if (!im_dataset.empty()) {
            require_file(im_dataset);
            const Dataset ds = read_dataset_csv(im_dataset);
            model = train_model(ds, im_model.resolve(overlay.resolve_seed(im_seed, seed)));
        } else {
            throw UsageError("importance: pass --dataset or --model-file");
        }
        write_importance_csv(im_out, feature_importance(model));
        out << "importance: " << model.kind() << " ranking -> " << im_out << "\n";
        return 0;
    }

    if (*pipe_cmd) {
        const uint64_t s = overlay.resolve_seed(pl_seed, seed);
        ensure_dir(pl_out);

        std::vector<RawNote> notes;
        std::vector<TransactionRecord> txns;
        VixSeries vix;
        std::map<std::string, int> labels;
        if (!pl_synth.empty()) {
            if (pl_synth != "default")
                throw UsageError("pipeline: unknown synth profile '" + pl_synth + "'");
            ScenarioSpec spec;
            spec.seed = s;
            Scenario scenario = gen_scenario(spec);
            write_scenario(pl_out + "/synth", scenario, spec);
            notes = std::move(scenario.notes);
            txns = std::move(scenario.transactions);
            vix = std::move(scenario.vix);
            labels = std::move(scenario.labels);
        } else {
            if (pl_notes.empty() || pl_txns.empty() || pl_vix.empty() || pl_labels.empty())
                throw UsageError(
                    "pipeline: pass --synth default or all of --notes/--transactions/--vix/--labels");
            require_file(pl_notes);
            require_file(pl_txns);
            require_file(pl_vix);
            require_file(pl_labels);
            notes = read_notes_jsonl(pl_notes);
            txns = read_transactions_csv(pl_txns);
            vix = read_vix_csv(pl_vix);
            labels = read_labels_csv(pl_labels);
        }

        // preprocess + stats
        const auto pp = preprocess(notes, pl_pp.resolve());
        ensure_dir(pl_out + "/preprocess");
        write_corpus_jsonl(pl_out + "/preprocess/corpus.jsonl", pp.docs);
        write_vocab_csv(pl_out + "/preprocess/vocab.csv", pp.vocab);
        write_stats(pl_out + "/stats", corpus_stats(notes));

        // topic model
        pl_lda.config.seed = mix_seed(s, "lda");
        run_lda_fit(pp.docs, pp.vocab, pl_lda.config, pl_top_n, "", pl_out + "/lda", out);

        // embeddings
        pl_embed.config.seed = mix_seed(s, "embedding");
        const auto embedding = train_embedding(pp.docs, pl_embed.config);
        ensure_dir(pl_out + "/embedding");
        save_embedding(embedding, pl_out + "/embedding/vectors.txt");

        // tagging
        std::vector<LexiconSpec> specs;
        if (pl_lexicons.empty()) {
            specs = default_lexicons();
        } else {
            require_file(pl_lexicons);
            specs = read_lexicon_specs(pl_lexicons);
        }
        std::vector<TopicLexicon> lexicons;
        for (const auto& spec : specs) lexicons.push_back(expand_lexicon(embedding, spec));
        std::unordered_map<std::string, RawNote> meta;
        for (const auto& n : notes) meta[n.note_id] = n;
        const auto events = tag_corpus(pp.docs, meta, lexicons);
        ensure_dir(pl_out + "/tags");
        write_events_csv(pl_out + "/tags/events.csv", events);

        // features
        const Date as_of = max_input_date(notes, txns, vix);
        const Dataset ds = run_featurize(notes, events, txns, vix, labels, as_of,
                                         TxnFeatureConfig{}, NoteFeatureConfig{});
        ensure_dir(pl_out + "/features");
        write_dataset_csv(pl_out + "/features/dataset.csv", ds);

        // models
        ModelArgs logistic_args = pl_model;
        logistic_args.model = "logistic";
        ModelArgs gbt_args = pl_model;
        gbt_args.model = "gbt";
        const CvReport cv_log =
            cross_validate(ds, logistic_args.resolve(mix_seed(s, "logistic")), pl_folds,
                           mix_seed(s, "folds"));
        write_cv_report(pl_out + "/eval/logistic", "logistic", cv_log);
        const CvReport cv_gbt = cross_validate(ds, gbt_args.resolve(mix_seed(s, "gbt")), pl_folds,
                                               mix_seed(s, "folds"));
        write_cv_report(pl_out + "/eval/gbt", "gbt", cv_gbt);

        const TrainedModel full_logistic =
            train_model(ds, logistic_args.resolve(mix_seed(s, "importance")));
        write_importance_csv(pl_out + "/eval/importance.csv", feature_importance(full_logistic));

        out << "pipeline: logistic test AUC " << fmt_double(cv_log.mean_test_auc)
            << ", gbt test AUC " << fmt_double(cv_gbt.mean_test_auc) << " -> " << pl_out << "\n";
        return 0;
    }

    throw UsageError("no command given");
}

}  // namespace

}  // namespace notesforge
