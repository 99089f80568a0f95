#include "notesforge/topic_model.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "notesforge/csv.hpp"
#include "notesforge/errors.hpp"
#include "notesforge/numfmt.hpp"
#include "notesforge/rng.hpp"

#include "json.hpp"

namespace notesforge {

namespace {

struct IndexedCorpus {
    std::vector<std::vector<int>> docs;  // token indices, input order
    std::vector<std::string> note_ids;
    long long total_tokens = 0;
};

IndexedCorpus index_corpus(const std::vector<TokenDoc>& corpus, const Vocabulary& vocab) {
    IndexedCorpus out;
    out.docs.reserve(corpus.size());
    out.note_ids.reserve(corpus.size());
    for (const auto& doc : corpus) {
        std::vector<int> ids;
        ids.reserve(doc.tokens.size());
        for (const auto& tok : doc.tokens) {
            const int w = vocab.index_of(tok);
            if (w < 0)
                throw std::invalid_argument("token '" + tok + "' in note '" + doc.note_id +
                                            "' is not in the vocabulary");
            ids.push_back(w);
        }
        out.total_tokens += static_cast<long long>(ids.size());
        out.docs.push_back(std::move(ids));
        out.note_ids.push_back(doc.note_id);
    }
    return out;
}

void check_counts(const LdaModel& m) {
    for (int t = 0; t < m.k; ++t) {
        long long word_sum = 0;
        for (int w = 0; w < m.V; ++w) word_sum += m.topic_word[t][w];
        long long doc_sum = 0;
        for (int d = 0; d < m.D; ++d) doc_sum += m.doc_topic[d][t];
        if (word_sum != m.topic_total[t] || doc_sum != m.topic_total[t])
            throw std::logic_error("LDA count conservation violated for topic " +
                                   std::to_string(t));
    }
}

}  // namespace

LdaModel fit_lda(const std::vector<TokenDoc>& corpus, const Vocabulary& vocab,
                 const LdaConfig& config) {
    if (corpus.empty()) throw std::invalid_argument("fit_lda: empty corpus");
    if (config.k < 1) throw std::invalid_argument("fit_lda: k must be >= 1");
    if (config.iterations < 1) throw std::invalid_argument("fit_lda: iterations must be >= 1");
    if (config.burn_in < 0 || config.burn_in >= config.iterations)
        throw std::invalid_argument("fit_lda: burn_in must be in [0, iterations)");
    if (config.thin < 1) throw std::invalid_argument("fit_lda: thin must be >= 1");
    if (vocab.size() == 0) throw std::invalid_argument("fit_lda: empty vocabulary");

    const IndexedCorpus ic = index_corpus(corpus, vocab);
    if (ic.total_tokens == 0) throw std::invalid_argument("fit_lda: corpus has no tokens");

    LdaModel m;
    m.config = config;
    m.k = config.k;
    m.V = vocab.size();
    m.D = static_cast<int>(ic.docs.size());
    m.alpha_used = config.alpha > 0 ? config.alpha : 50.0 / m.k;
    m.tokens = vocab.tokens();
    m.vocab_hash = vocab.hash();
    m.note_ids = ic.note_ids;

    const int k = m.k;
    const int V = m.V;
    const int D = m.D;
    const double alpha = m.alpha_used;
    const double beta = config.beta;
    const double v_beta = static_cast<double>(V) * beta;

    m.topic_word.assign(static_cast<size_t>(k), std::vector<int>(static_cast<size_t>(V), 0));
    m.topic_total.assign(static_cast<size_t>(k), 0);
    m.doc_topic.assign(static_cast<size_t>(D), std::vector<int>(static_cast<size_t>(k), 0));
    m.assignments.resize(static_cast<size_t>(D));

    // Sweeps visit documents in note_id order with per-document RNG streams,
    // so permuting the input only permutes the output rows.
    std::vector<int> order(static_cast<size_t>(D));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return ic.note_ids[static_cast<size_t>(a)] <
                                         ic.note_ids[static_cast<size_t>(b)]; });
    for (size_t i = 1; i < order.size(); ++i)
        if (ic.note_ids[static_cast<size_t>(order[i - 1])] ==
            ic.note_ids[static_cast<size_t>(order[i])])
            throw std::invalid_argument("fit_lda: duplicate note_id '" +
                                        ic.note_ids[static_cast<size_t>(order[i])] + "'");

    std::vector<Rng> streams;
    streams.reserve(static_cast<size_t>(D));
    for (int d = 0; d < D; ++d)
        streams.emplace_back(mix_seed(config.seed, ic.note_ids[static_cast<size_t>(d)]));

    // random init from each doc's stream
    for (int di = 0; di < D; ++di) {
        const int d = order[static_cast<size_t>(di)];
        const auto& words = ic.docs[static_cast<size_t>(d)];
        auto& assign = m.assignments[static_cast<size_t>(d)];
        assign.resize(words.size());
        auto& rng = streams[static_cast<size_t>(d)];
        for (size_t i = 0; i < words.size(); ++i) {
            const int t = static_cast<int>(rng.below(static_cast<uint64_t>(k)));
            assign[i] = t;
            ++m.topic_word[static_cast<size_t>(t)][static_cast<size_t>(words[i])];
            ++m.topic_total[static_cast<size_t>(t)];
            ++m.doc_topic[static_cast<size_t>(d)][static_cast<size_t>(t)];
        }
    }

    std::vector<double> weights(static_cast<size_t>(k), 0.0);
    std::vector<std::vector<double>> acc_topic_word(
        static_cast<size_t>(k), std::vector<double>(static_cast<size_t>(V), 0.0));
    std::vector<std::vector<double>> acc_doc_topic(
        static_cast<size_t>(D), std::vector<double>(static_cast<size_t>(k), 0.0));
    long long samples = 0;

    for (int sweep = 1; sweep <= config.iterations; ++sweep) {
        for (int di = 0; di < D; ++di) {
            const int d = order[static_cast<size_t>(di)];
            const auto& words = ic.docs[static_cast<size_t>(d)];
            auto& assign = m.assignments[static_cast<size_t>(d)];
            auto& n_d = m.doc_topic[static_cast<size_t>(d)];
            auto& rng = streams[static_cast<size_t>(d)];
            for (size_t i = 0; i < words.size(); ++i) {
                const int w = words[i];
                const int old_t = assign[i];
                --m.topic_word[static_cast<size_t>(old_t)][static_cast<size_t>(w)];
                --m.topic_total[static_cast<size_t>(old_t)];
                --n_d[static_cast<size_t>(old_t)];

                double total = 0.0;
                for (int t = 0; t < k; ++t) {
                    const double wgt =
                        (static_cast<double>(n_d[static_cast<size_t>(t)]) + alpha) *
                        (static_cast<double>(
                             m.topic_word[static_cast<size_t>(t)][static_cast<size_t>(w)]) +
                         beta) /
                        (static_cast<double>(m.topic_total[static_cast<size_t>(t)]) + v_beta);
                    if (!(wgt >= 0.0))
                        throw std::logic_error("fit_lda: negative sampling weight");
                    weights[static_cast<size_t>(t)] = wgt;
                    total += wgt;
                }
                if (!(total > 0.0)) throw std::logic_error("fit_lda: degenerate conditional");
                double norm_check = 0.0;
                for (int t = 0; t < k; ++t) norm_check += weights[static_cast<size_t>(t)] / total;
                if (std::abs(norm_check - 1.0) > 1e-12)
                    throw std::logic_error("fit_lda: conditional not normalized");

                const double u = rng.uniform() * total;
                int new_t = k - 1;
                double cum = 0.0;
                for (int t = 0; t < k; ++t) {
                    cum += weights[static_cast<size_t>(t)];
                    if (u < cum) {
                        new_t = t;
                        break;
                    }
                }
                assign[i] = new_t;
                ++m.topic_word[static_cast<size_t>(new_t)][static_cast<size_t>(w)];
                ++m.topic_total[static_cast<size_t>(new_t)];
                ++n_d[static_cast<size_t>(new_t)];
            }
        }
        check_counts(m);
        if (sweep > config.burn_in && (sweep - config.burn_in - 1) % config.thin == 0) {
            ++samples;
            for (int t = 0; t < k; ++t)
                for (int w = 0; w < V; ++w)
                    acc_topic_word[static_cast<size_t>(t)][static_cast<size_t>(w)] +=
                        static_cast<double>(
                            m.topic_word[static_cast<size_t>(t)][static_cast<size_t>(w)]);
            for (int d = 0; d < D; ++d)
                for (int t = 0; t < k; ++t)
                    acc_doc_topic[static_cast<size_t>(d)][static_cast<size_t>(t)] +=
                        static_cast<double>(
                            m.doc_topic[static_cast<size_t>(d)][static_cast<size_t>(t)]);
        }
    }

    m.phi.assign(static_cast<size_t>(k), std::vector<double>(static_cast<size_t>(V), 0.0));
    m.theta.assign(static_cast<size_t>(D), std::vector<double>(static_cast<size_t>(k), 0.0));
    for (int t = 0; t < k; ++t) {
        double avg_total = 0.0;
        for (int w = 0; w < V; ++w)
            avg_total += acc_topic_word[static_cast<size_t>(t)][static_cast<size_t>(w)];
        avg_total /= static_cast<double>(samples);
        for (int w = 0; w < V; ++w)
            m.phi[static_cast<size_t>(t)][static_cast<size_t>(w)] =
                (acc_topic_word[static_cast<size_t>(t)][static_cast<size_t>(w)] /
                     static_cast<double>(samples) +
                 beta) /
                (avg_total + v_beta);
    }
    for (int d = 0; d < D; ++d) {
        const double len = static_cast<double>(ic.docs[static_cast<size_t>(d)].size());
        for (int t = 0; t < k; ++t)
            m.theta[static_cast<size_t>(d)][static_cast<size_t>(t)] =
                (acc_doc_topic[static_cast<size_t>(d)][static_cast<size_t>(t)] /
                     static_cast<double>(samples) +
                 alpha) /
                (len + alpha * static_cast<double>(k));
    }
    return m;
}

std::vector<std::string> LdaModel::top_words(int topic, int n) const {
    if (topic < 0 || topic >= k) throw std::invalid_argument("top_words: topic out of range");
    if (n < 0) throw std::invalid_argument("top_words: n must be >= 0");
    std::vector<int> idx(static_cast<size_t>(V));
    std::iota(idx.begin(), idx.end(), 0);
    const auto& row = phi[static_cast<size_t>(topic)];
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (row[static_cast<size_t>(a)] != row[static_cast<size_t>(b)])
            return row[static_cast<size_t>(a)] > row[static_cast<size_t>(b)];
        return tokens[static_cast<size_t>(a)] < tokens[static_cast<size_t>(b)];
    });
    const int take = std::min(n, V);
    std::vector<std::string> out;
    out.reserve(static_cast<size_t>(take));
    for (int i = 0; i < take; ++i) out.push_back(tokens[static_cast<size_t>(idx[static_cast<size_t>(i)])]);
    return out;
}

std::pair<int, double> LdaModel::dominant_topic(int doc) const {
    if (doc < 0 || doc >= D) throw std::invalid_argument("dominant_topic: doc out of range");
    const auto& row = theta[static_cast<size_t>(doc)];
    int best = 0;
    for (int t = 1; t < k; ++t)
        if (row[static_cast<size_t>(t)] > row[static_cast<size_t>(best)]) best = t;
    return {best, row[static_cast<size_t>(best)]};
}

InferredTopics infer_doc(const LdaModel& model, const TokenDoc& doc, int sweeps, uint64_t seed) {
    if (sweeps < 1) throw std::invalid_argument("infer_doc: sweeps must be >= 1");
    std::unordered_map<std::string, int> index;
    for (int w = 0; w < model.V; ++w) index[model.tokens[static_cast<size_t>(w)]] = w;

    std::vector<int> words;
    words.reserve(doc.tokens.size());
    for (const auto& tok : doc.tokens) {
        auto it = index.find(tok);
        if (it != index.end()) words.push_back(it->second);
    }

    InferredTopics out;
    out.theta.assign(static_cast<size_t>(model.k), 1.0 / static_cast<double>(model.k));
    if (words.empty()) {
        out.all_oov = !doc.tokens.empty();
        return out;
    }

    const int k = model.k;
    const double alpha = model.alpha_used;
    Rng rng(mix_seed(seed, doc.note_id));
    std::vector<int> assign(words.size());
    std::vector<long long> n_t(static_cast<size_t>(k), 0);
    for (size_t i = 0; i < words.size(); ++i) {
        const int t = static_cast<int>(rng.below(static_cast<uint64_t>(k)));
        assign[i] = t;
        ++n_t[static_cast<size_t>(t)];
    }

    std::vector<double> weights(static_cast<size_t>(k));
    std::vector<double> acc(static_cast<size_t>(k), 0.0);
    const int keep_from = sweeps / 2;  // average the second half
    long long samples = 0;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (size_t i = 0; i < words.size(); ++i) {
            const int w = words[i];
            --n_t[static_cast<size_t>(assign[i])];
            double total = 0.0;
            for (int t = 0; t < k; ++t) {
                weights[static_cast<size_t>(t)] =
                    (static_cast<double>(n_t[static_cast<size_t>(t)]) + alpha) *
                    model.phi[static_cast<size_t>(t)][static_cast<size_t>(w)];
                total += weights[static_cast<size_t>(t)];
            }
            const double u = rng.uniform() * total;
            int new_t = k - 1;
            double cum = 0.0;
            for (int t = 0; t < k; ++t) {
                cum += weights[static_cast<size_t>(t)];
                if (u < cum) {
                    new_t = t;
                    break;
                }
            }
            assign[i] = new_t;
            ++n_t[static_cast<size_t>(new_t)];
        }
        if (sweep >= keep_from) {
            ++samples;
            for (int t = 0; t < k; ++t) acc[static_cast<size_t>(t)] +=
                static_cast<double>(n_t[static_cast<size_t>(t)]);
        }
    }
    const double len = static_cast<double>(words.size());
    for (int t = 0; t < k; ++t)
        out.theta[static_cast<size_t>(t)] =
            (acc[static_cast<size_t>(t)] / static_cast<double>(samples) + alpha) /
            (len + alpha * static_cast<double>(k));
    return out;
}

// ---------------------------------------------------------------------------
// persistence
// ---------------------------------------------------------------------------

namespace {

std::string matrix_csv(const std::vector<std::vector<double>>& m) {
    std::string out;
    for (const auto& row : m) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += fmt_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::vector<std::vector<double>> parse_matrix_csv(const std::string& path, size_t rows,
                                                  size_t cols) {
    const auto lines = read_lines(path);
    if (lines.size() != rows)
        throw SchemaError(path + ": expected " + std::to_string(rows) + " rows, got " +
                          std::to_string(lines.size()));
    std::vector<std::vector<double>> m(rows);
    for (size_t r = 0; r < rows; ++r) {
        const auto fields = split_csv_line(lines[r]);
        if (fields.size() != cols)
            throw SchemaError(path + ": row " + std::to_string(r) + " has " +
                              std::to_string(fields.size()) + " columns, expected " +
                              std::to_string(cols));
        m[r].reserve(cols);
        for (const auto& f : fields) m[r].push_back(parse_double(f));
    }
    return m;
}

}  // namespace

void save_lda(const LdaModel& model, const std::string& dir) {
    std::filesystem::create_directories(dir);
    nlohmann::ordered_json header;
    header["format_version"] = 1;
    header["config"] = {{"k", model.config.k},           {"alpha", model.config.alpha},
                        {"beta", model.config.beta},     {"iterations", model.config.iterations},
                        {"burn_in", model.config.burn_in}, {"thin", model.config.thin},
                        {"seed", model.config.seed}};
    header["alpha_used"] = model.alpha_used;
    header["k"] = model.k;
    header["V"] = model.V;
    header["D"] = model.D;
    header["vocab_hash"] = model.vocab_hash;
    header["tokens"] = model.tokens;
    header["note_ids"] = model.note_ids;
    write_text_file(dir + "/model.json", header.dump(2) + "\n");
    write_text_file(dir + "/phi.csv", matrix_csv(model.phi));
    write_text_file(dir + "/theta.csv", matrix_csv(model.theta));
}

LdaModel load_lda(const std::string& dir) {
    std::ifstream in(dir + "/model.json");
    if (!in) throw InputError("cannot open '" + dir + "/model.json'");
    nlohmann::json header;
    try {
        in >> header;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("bad model.json: " + std::string(e.what()));
    }
    LdaModel m;
    try {
        if (header.at("format_version").get<int>() != 1)
            throw SchemaError("unsupported model format version");
        const auto& cfg = header.at("config");
        m.config.k = cfg.at("k").get<int>();
        m.config.alpha = cfg.at("alpha").get<double>();
        m.config.beta = cfg.at("beta").get<double>();
        m.config.iterations = cfg.at("iterations").get<int>();
        m.config.burn_in = cfg.at("burn_in").get<int>();
        m.config.thin = cfg.at("thin").get<int>();
        m.config.seed = cfg.at("seed").get<uint64_t>();
        m.alpha_used = header.at("alpha_used").get<double>();
        m.k = header.at("k").get<int>();
        m.V = header.at("V").get<int>();
        m.D = header.at("D").get<int>();
        m.vocab_hash = header.at("vocab_hash").get<uint64_t>();
        m.tokens = header.at("tokens").get<std::vector<std::string>>();
        m.note_ids = header.at("note_ids").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("bad model.json: " + std::string(e.what()));
    }
    if (static_cast<int>(m.tokens.size()) != m.V)
        throw SchemaError("model.json: token list does not match V");
    m.phi = parse_matrix_csv(dir + "/phi.csv", static_cast<size_t>(m.k),
                             static_cast<size_t>(m.V));
    m.theta = parse_matrix_csv(dir + "/theta.csv", static_cast<size_t>(m.D),
                               static_cast<size_t>(m.k));
    return m;
}

}  // namespace notesforge
