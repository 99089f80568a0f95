#include "notesforge/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "notesforge/errors.hpp"
#include "notesforge/rng.hpp"

namespace notesforge {

namespace {

std::string zero_pad(const char* prefix, int value, int width) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%s%0*d", prefix, width, value);
    return buf;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

// ---------------------------------------------------------------------------
// topic corpus
// ---------------------------------------------------------------------------

TopicCorpus gen_topic_corpus(const TopicCorpusSpec& spec) {
    if (spec.n_topics < 1 || spec.vocab_per_topic < 1 || spec.n_docs < 1 ||
        spec.doc_len_min < 1 || spec.doc_len_max < spec.doc_len_min || spec.shared_vocab < 0 ||
        spec.concentration < 0.0)
        throw std::invalid_argument("gen_topic_corpus: invalid spec");

    std::vector<std::string> shared;
    for (int j = 0; j < spec.shared_vocab; ++j) shared.push_back("sh" + std::to_string(j));

    TopicCorpus out;
    out.truth.topic_vocab.resize(static_cast<size_t>(spec.n_topics));
    std::vector<std::vector<std::string>> topic_words(static_cast<size_t>(spec.n_topics));
    for (int t = 0; t < spec.n_topics; ++t) {
        auto& own = out.truth.topic_vocab[static_cast<size_t>(t)];
        for (int j = 0; j < spec.vocab_per_topic; ++j)
            own.push_back("t" + std::to_string(t) + "w" + std::to_string(j));
        auto& pool = topic_words[static_cast<size_t>(t)];
        pool = own;
        pool.insert(pool.end(), shared.begin(), shared.end());
    }

    Rng rng(mix_seed(spec.seed, "topic-corpus"));
    const Date base = parse_date("2019-03-01");
    for (int d = 0; d < spec.n_docs; ++d) {
        std::vector<double> theta;
        if (spec.concentration == 0.0) {
            theta.assign(static_cast<size_t>(spec.n_topics), 0.0);
            theta[rng.below(static_cast<uint64_t>(spec.n_topics))] = 1.0;
        } else {
            theta = rng.dirichlet(spec.concentration, spec.n_topics);
        }

        const int len = static_cast<int>(rng.uniform_int(spec.doc_len_min, spec.doc_len_max));
        std::string text;
        for (int i = 0; i < len; ++i) {
            double u = rng.uniform();
            int z = spec.n_topics - 1;
            double cum = 0.0;
            for (int t = 0; t < spec.n_topics; ++t) {
                cum += theta[static_cast<size_t>(t)];
                if (u < cum) {
                    z = t;
                    break;
                }
            }
            const auto& pool = topic_words[static_cast<size_t>(z)];
            if (i) text += ' ';
            text += pool[rng.below(pool.size())];
        }

        RawNote note;
        note.note_id = zero_pad("doc", d, 6);
        note.advisor_id = zero_pad("adv", d % 7, 3);
        note.client_id = zero_pad("tc", d, 6);
        note.date = add_days(base, d % 28);
        note.text = std::move(text);
        out.notes.push_back(std::move(note));

        int dom = 0;
        for (int t = 1; t < spec.n_topics; ++t)
            if (theta[static_cast<size_t>(t)] > theta[static_cast<size_t>(dom)]) dom = t;
        out.truth.dominant.push_back(dom);
        out.truth.doc_mixture.push_back(std::move(theta));
    }
    return out;
}

std::vector<TokenDoc> notes_to_token_docs(const std::vector<RawNote>& notes) {
    std::vector<TokenDoc> docs;
    docs.reserve(notes.size());
    for (const auto& note : notes) {
        TokenDoc doc;
        doc.note_id = note.note_id;
        std::string cur;
        for (char c : note.text) {
            if (c == ' ') {
                if (!cur.empty()) doc.tokens.push_back(std::move(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) doc.tokens.push_back(std::move(cur));
        docs.push_back(std::move(doc));
    }
    return docs;
}

// ---------------------------------------------------------------------------
// scenario
// ---------------------------------------------------------------------------

double calibrate_intercept(double base_rate, double beta) {
    if (!(base_rate > 0.0 && base_rate < 1.0))
        throw std::invalid_argument("calibrate_intercept: base_rate must be in (0,1)");
    // E[sigmoid(c + beta*a)] over a ~ N(0,1) via Simpson quadrature on [-8, 8]
    const auto mean_rate = [&](double c) {
        const int n = 2000;  // even
        const double lo = -8.0, hi = 8.0;
        const double h = (hi - lo) / n;
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double a = lo + h * i;
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            acc += w * sigmoid(c + beta * a) * std::exp(-0.5 * a * a);
        }
        return acc * h / 3.0 / std::sqrt(2.0 * M_PI);
    };
    double lo = -50.0, hi = 10.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mean_rate(mid) < base_rate ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

const std::vector<std::string>& scenario_volatility_vocab() {
    static const std::vector<std::string> v = {
        "market", "volatility", "downturn", "turbulence", "correction", "up-down", "volatile",
    };
    return v;
}

const std::vector<std::string>& scenario_misspellings() {
    static const std::vector<std::string> v = {"volatilty", "volatiltiy", "volitility",
                                               "volatiliy"};
    return v;
}

const std::vector<std::string>& scenario_peace_vocab() {
    static const std::vector<std::string> v = {
        "sensitive", "concern", "panic", "nervous", "anxious", "worry", "fear", "stress",
    };
    return v;
}

namespace {

const std::vector<std::string>& background_vocab() {
    static const std::vector<std::string> v = {
        "plan",        "account",      "fund",        "review",       "goal",
        "rate",        "fee",          "tax",         "bond",         "stock",
        "cash",        "income",       "budget",      "retire",       "balance",
        "portfolio",   "advisor",      "client",      "call",         "email",
        "schedule",    "appointment",  "question",    "update",       "strategy",
        "service",     "transfer",     "rollover",    "pension",      "estate",
        "trust",       "insurance",    "premium",     "deposit",      "withdraw",
        "allocation",  "target",       "quarterly",   "annual",       "monthly",
        "check",       "follow",       "contribution", "distribution", "conversion",
        "taxable",     "bracket",      "deadline",    "paperwork",    "form",
        "signature",   "beneficiary",  "spouse",      "family",       "daughter",
        "son",         "travel",       "trip",        "hobby",        "garden",
        "golf",        "weather",      "holiday",     "birthday",     "college",
        "tuition",     "mortgage",     "home",        "house",        "property",
        "vehicle",     "purchase",     "expense",     "nest",         "reserve",
        "emergency",   "payment",      "invoice",     "bill",         "statement",
        "summary",     "detail",       "profile",     "preference",   "risk",
        "tolerance",   "horizon",      "timeline",    "objective",    "milestone",
        "performance", "return",       "yield",       "dividend",     "interest",
        "principal",   "equity",       "asset",       "liability",    "debt",
        "loan",        "credit",       "score",       "benchmark",    "sector",
        "energy",      "technology",   "healthcare",  "utility",      "consumer",
        "industrial",  "global",       "domestic",    "international", "frontier",
        "growth",      "value",        "blend",       "momentum",     "quality",
        "minimum",     "maximum",      "average",     "median",       "percent",
        "ratio",       "margin",       "buffer",      "cushion",      "ladder",
        "bucket",      "tier",         "phase",       "stage",        "step",
        "agenda",      "memo",         "letter",      "document",     "voicemail",
        "message",     "reminder",     "confirm",     "verify",       "submit",
        "approve",     "decline",      "defer",       "delay",        "extend",
        "renew",       "enroll",       "register",    "activate",     "upgrade",
        "downgrade",   "simplify",     "consolidate", "rebalance",    "diversify",
        "hedge",       "protect",      "preserve",    "legacy",       "charity",
        "donation",    "gift",         "inheritance", "probate",      "attorney",
        "accountant",  "lawyer",       "doctor",      "hospital",     "medicare",
        "social",      "security",     "benefit",     "salary",       "commission",
        "career",      "office",       "branch",      "online",       "mobile",
        "paper",       "mail",         "phone",       "text",
    };
    return v;
}

int draw_weighted(Rng& rng, const std::vector<double>& cumulative) {
    const double u = rng.uniform();
    for (size_t i = 0; i < cumulative.size(); ++i)
        if (u < cumulative[i]) return static_cast<int>(i);
    return static_cast<int>(cumulative.size()) - 1;
}

}  // namespace

Scenario gen_scenario(const ScenarioSpec& spec) {
    if (spec.n_clients < 1) throw std::invalid_argument("gen_scenario: n_clients must be >= 1");
    if (spec.weeks < 8) throw std::invalid_argument("gen_scenario: window must be >= 8 weeks");
    if (!(spec.base_rate > 0.0 && spec.base_rate < 1.0))
        throw std::invalid_argument("gen_scenario: base_rate must be in (0,1)");
    if (spec.notes_min < 1 || spec.notes_max < spec.notes_min || spec.trades_min < 0 ||
        spec.trades_max < spec.trades_min || spec.note_len_min < 4 ||
        spec.note_len_max < spec.note_len_min)
        throw std::invalid_argument("gen_scenario: invalid count ranges");
    if (spec.calm_block_weeks < 1 || spec.volatile_block_weeks < 1)
        throw std::invalid_argument("gen_scenario: block lengths must be >= 1");

    Scenario out;
    const int n_days = spec.weeks * 7;
    out.end = add_days(spec.start, n_days - 1);

    // regime per week offset: repeating calm-then-volatile blocks
    std::vector<bool> week_volatile(static_cast<size_t>(spec.weeks), false);
    const int cycle = spec.calm_block_weeks + spec.volatile_block_weeks;
    for (int w = 0; w < spec.weeks; ++w) {
        if (w % cycle >= spec.calm_block_weeks) {
            week_volatile[static_cast<size_t>(w)] = true;
            out.truth.volatile_week_index.push_back(w);
        }
    }
    const auto day_week = [&](int day_offset) { return day_offset / 7; };
    std::vector<int> volatile_days, calm_days;
    for (int d = 0; d < n_days; ++d)
        (week_volatile[static_cast<size_t>(day_week(d))] ? volatile_days : calm_days).push_back(d);
    const double volatile_share =
        static_cast<double>(volatile_days.size()) / static_cast<double>(n_days);

    // daily VIX on weekdays
    Rng vix_rng(mix_seed(spec.seed, "vix"));
    for (int d = 0; d < n_days; ++d) {
        const Date date = add_days(spec.start, d);
        if (weekday(date) > 5) continue;
        const bool vol = week_volatile[static_cast<size_t>(day_week(d))];
        const double close = vol ? vix_rng.normal(33.0, 2.5) : vix_rng.normal(15.0, 1.2);
        out.vix.dates.push_back(date);
        out.vix.closes.push_back(std::max(5.0, close));
    }

    const double intercept = calibrate_intercept(spec.base_rate, spec.beta_signal);
    out.truth.intercept = intercept;

    const auto& background = background_vocab();
    const auto& vol_vocab = scenario_volatility_vocab();
    const auto& missp = scenario_misspellings();
    const auto& peace_vocab = scenario_peace_vocab();
    const std::vector<double> vol_cum = {0.28, 0.56, 0.70, 0.78, 0.86, 0.93, 1.0};
    const std::vector<double> peace_cum = {0.10, 0.40, 0.48, 0.60, 0.70, 0.90, 0.95, 1.0};

    // Channel draws first: anxiety is the rank-normalized blend
    // min(u, v) + 0.5 (u + v), exactly N(0,1) marginally.
    const int n = spec.n_clients;
    std::vector<double> chan_u(static_cast<size_t>(n)), chan_v(static_cast<size_t>(n));
    std::vector<double> blend(static_cast<size_t>(n));
    for (int ci = 0; ci < n; ++ci) {
        Rng rng(mix_seed(spec.seed, "channels-" + zero_pad("c", ci, 6)));
        chan_u[static_cast<size_t>(ci)] = rng.normal();
        chan_v[static_cast<size_t>(ci)] = rng.normal();
        blend[static_cast<size_t>(ci)] =
            std::min(chan_u[static_cast<size_t>(ci)], chan_v[static_cast<size_t>(ci)]) +
            0.5 * (chan_u[static_cast<size_t>(ci)] + chan_v[static_cast<size_t>(ci)]);
    }
    std::vector<int> rank_order(static_cast<size_t>(n));
    std::iota(rank_order.begin(), rank_order.end(), 0);
    std::sort(rank_order.begin(), rank_order.end(),
              [&](int x, int y) { return blend[static_cast<size_t>(x)] <
                                         blend[static_cast<size_t>(y)]; });
    std::vector<double> anxiety_of(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r)
        anxiety_of[static_cast<size_t>(rank_order[static_cast<size_t>(r)])] =
            normal_quantile((static_cast<double>(r) + 1.0) / (static_cast<double>(n) + 1.0));

    const int n_advisors = std::max(5, spec.n_clients / 150);
    int note_serial = 0;
    for (int ci = 0; ci < spec.n_clients; ++ci) {
        const std::string client_id = zero_pad("c", ci, 6);
        Rng rng(mix_seed(spec.seed, "client-" + client_id));
        const double anxiety = anxiety_of[static_cast<size_t>(ci)];
        const double note_chan = chan_u[static_cast<size_t>(ci)];
        const double trade_chan = chan_v[static_cast<size_t>(ci)];
        const double p_label = sigmoid(intercept + spec.beta_signal * anxiety);
        const int label = rng.bernoulli(p_label) ? 1 : 0;
        out.truth.client_ids.push_back(client_id);
        out.truth.anxiety.push_back(anxiety);
        out.truth.note_channel.push_back(note_chan);
        out.truth.trade_channel.push_back(trade_chan);
        out.truth.p_label.push_back(p_label);
        out.labels[client_id] = label;

        // In volatile weeks volatility language rises with the note channel
        // while peace-of-mind language tracks overall anxiety. Calm weeks
        // carry flat noise.
        const double p_vol_volatile =
            std::min(0.9, 0.005 + spec.vol_gain * std::max(0.0, note_chan));
        const double p_peace_volatile =
            std::min(0.7, 0.003 + spec.peace_gain * std::max(0.0, anxiety));
        const double p_vol_calm = 0.004;
        const double p_peace_calm = 0.003;

        const int n_notes = static_cast<int>(rng.uniform_int(spec.notes_min, spec.notes_max));
        for (int ni = 0; ni < n_notes; ++ni) {
            const int day = static_cast<int>(rng.below(static_cast<uint64_t>(n_days)));
            const bool vol_week = week_volatile[static_cast<size_t>(day_week(day))];
            const double p_vol = vol_week ? p_vol_volatile : p_vol_calm;
            const double p_peace = vol_week ? p_peace_volatile : p_peace_calm;
            const int len = static_cast<int>(rng.uniform_int(spec.note_len_min, spec.note_len_max));
            std::string text;
            for (int t = 0; t < len; ++t) {
                if (t) text += ' ';
                const double u = rng.uniform();
                if (u < p_vol) {
                    std::string tok = vol_vocab[static_cast<size_t>(draw_weighted(rng, vol_cum))];
                    if (tok == "volatility" && rng.uniform() < spec.misspell_rate)
                        tok = missp[rng.below(missp.size())];
                    text += tok;
                } else if (u < p_vol + p_peace) {
                    text += peace_vocab[static_cast<size_t>(draw_weighted(rng, peace_cum))];
                } else {
                    text += background[rng.below(background.size())];
                }
            }
            RawNote note;
            note.note_id = zero_pad("n", note_serial++, 8);
            note.advisor_id = zero_pad("adv", ci % n_advisors, 3);
            note.client_id = client_id;
            note.date = add_days(spec.start, day);
            note.text = std::move(text);
            out.notes.push_back(std::move(note));
        }

        // Distressed traders concentrate trades (and sell larger) in volatile
        // weeks; trade_clustering scales both couplings.
        const double distressed = trade_chan > 0.0 ? 1.0 : 0.0;
        const double p_vol_day = std::clamp(
            volatile_share + 0.40 * spec.trade_clustering * distressed, 0.05, 0.95);
        const int n_accounts = static_cast<int>(rng.uniform_int(1, 3));
        const int n_trades = static_cast<int>(rng.uniform_int(spec.trades_min, spec.trades_max));
        for (int ti = 0; ti < n_trades; ++ti) {
            TransactionRecord rec;
            rec.client_id = client_id;
            const bool on_volatile = !volatile_days.empty() && rng.uniform() < p_vol_day;
            const auto& pool = on_volatile ? volatile_days : calm_days;
            rec.date = add_days(spec.start, pool[rng.below(pool.size())]);
            rec.account_id = client_id + "-a" + std::to_string(rng.uniform_int(1, n_accounts));
            rec.instrument = zero_pad("INS", static_cast<int>(rng.below(40)), 2);
            const double u = rng.uniform();
            rec.txn_type = u < 0.45   ? TxnType::buy
                           : u < 0.80 ? TxnType::sell
                           : u < 0.92 ? TxnType::exchange
                                      : TxnType::other;
            double log_amount = rng.normal(5.0, 1.0);
            if (on_volatile && rec.txn_type == TxnType::sell)
                log_amount += spec.panic_sell_amp * spec.trade_clustering *
                              std::max(0.0, trade_chan);
            rec.amount = std::round(std::exp(log_amount) * 100.0) / 100.0;
            out.transactions.push_back(std::move(rec));
        }
    }

    std::sort(out.transactions.begin(), out.transactions.end(),
              [](const TransactionRecord& a, const TransactionRecord& b) {
                  if (a.client_id != b.client_id) return a.client_id < b.client_id;
                  if (a.date != b.date) return a.date < b.date;
                  return a.instrument < b.instrument;
              });
    return out;
}

}  // namespace notesforge
