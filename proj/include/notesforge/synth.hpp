#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "notesforge/corpus.hpp"
#include "notesforge/features.hpp"

namespace notesforge {

struct TopicCorpusSpec {
    int n_topics = 5;
    int vocab_per_topic = 40;
    int shared_vocab = 0;
    int n_docs = 500;
    int doc_len_min = 30;
    int doc_len_max = 80;
    double concentration = 0.1;  // symmetric Dirichlet; 0 -> one topic per doc
    uint64_t seed = 0;
};

struct TopicCorpusTruth {
    std::vector<std::vector<double>> doc_mixture;      // per-doc topic distribution
    std::vector<int> dominant;                         // argmax of the mixture
    std::vector<std::vector<std::string>> topic_vocab; // planted vocabulary per topic
};

struct TopicCorpus {
    std::vector<RawNote> notes;
    TopicCorpusTruth truth;
};

// LDA generative process with planted per-topic vocabularies. Tokens are
// chosen to pass the preprocessing pipeline unchanged.
TopicCorpus gen_topic_corpus(const TopicCorpusSpec& spec);

// Synthetic notes are space-joined tokens; this is the exact inverse.
std::vector<TokenDoc> notes_to_token_docs(const std::vector<RawNote>& notes);

struct ScenarioSpec {
    int n_clients = 1500;
    Date start = Date{18267};  // 2020-01-06, a Monday
    int weeks = 26;
    double base_rate = 0.05;
    double beta_signal = 2.0;
    int notes_min = 6;
    int notes_max = 12;
    int note_len_min = 24;
    int note_len_max = 40;
    int trades_min = 3;
    int trades_max = 10;
    int calm_block_weeks = 4;
    int volatile_block_weeks = 4;
    // Scales every anxiety-trade coupling: volatile-week trade timing and
    // panic-sell amount inflation. 0 leaves transactions independent of anxiety.
    double trade_clustering = 1.0;
    double panic_sell_amp = 1.5;    // volatile-week sell log-amount slope on the trade channel
    double misspell_rate = 0.05;    // fraction of "volatility" draws misspelled
    // per-token injection gains in volatile-week notes
    double vol_gain = 0.28;    // volatility-topic rate slope on the note channel
    double peace_gain = 0.16;  // peace-of-mind rate slope on overall anxiety
    uint64_t seed = 0;
};

// Anxiety combines a note-expressed and a trade-expressed distress channel,
// a = qmap(min(u, v) + 0.5 (u + v)) with qmap the rank-to-normal transform, so
// the marginal stays exactly N(0,1) while the label needs both channels.
struct ScenarioTruth {
    std::vector<std::string> client_ids;
    std::vector<double> anxiety;        // a
    std::vector<double> note_channel;   // u, expressed in note language
    std::vector<double> trade_channel;  // v, expressed in trading behavior
    std::vector<double> p_label;
    double intercept = 0.0;
    std::vector<int> volatile_week_index;  // week offsets flagged volatile
};

struct Scenario {
    std::vector<RawNote> notes;
    std::vector<TransactionRecord> transactions;
    VixSeries vix;
    std::map<std::string, int> labels;
    ScenarioTruth truth;
    Date end;  // last day of the window
};

// Planted cash-out scenario: latent anxiety drives volatility-topic language
// in volatile weeks, optional trade clustering, and the label's log-odds.
Scenario gen_scenario(const ScenarioSpec& spec);

// Intercept c with E_{a~N(0,1)}[sigmoid(c + beta*a)] = base_rate.
double calibrate_intercept(double base_rate, double beta);

// Token pools the scenario injects; exposed for oracle checks in tests.
const std::vector<std::string>& scenario_volatility_vocab();
const std::vector<std::string>& scenario_misspellings();
const std::vector<std::string>& scenario_peace_vocab();

}  // namespace notesforge
