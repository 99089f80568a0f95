#include "notesforge/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <unordered_map>

#include "notesforge/errors.hpp"

namespace notesforge {

TxnType parse_txn_type(const std::string& s) {
    std::string lower;
    lower.reserve(s.size());
    for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "buy") return TxnType::buy;
    if (lower == "sell") return TxnType::sell;
    if (lower == "exchange") return TxnType::exchange;
    return TxnType::other;
}

std::string txn_type_name(TxnType t) {
    switch (t) {
        case TxnType::buy: return "buy";
        case TxnType::sell: return "sell";
        case TxnType::exchange: return "exchange";
        case TxnType::other: return "other";
    }
    return "other";
}

void VixSeries::validate() const {
    if (dates.size() != closes.size()) throw SchemaError("vix series: dates/closes length mismatch");
    for (size_t i = 0; i < dates.size(); ++i) {
        if (i > 0 && !(dates[i - 1] < dates[i]))
            throw SchemaError("vix series: dates not strictly increasing at row " +
                              std::to_string(i));
        if (!(closes[i] > 0.0))
            throw SchemaError("vix series: nonpositive close at " + format_date(dates[i]));
    }
}

std::vector<std::pair<IsoWeek, double>> weekly_vix(const VixSeries& series) {
    if (series.dates.empty()) throw std::invalid_argument("weekly_vix: empty series");
    series.validate();
    std::map<IsoWeek, std::pair<double, long long>> sums;
    for (size_t i = 0; i < series.dates.size(); ++i) {
        auto& slot = sums[iso_week(series.dates[i])];
        slot.first += series.closes[i];
        ++slot.second;
    }
    std::vector<std::pair<IsoWeek, double>> out;
    out.reserve(sums.size());
    for (const auto& [week, slot] : sums)
        out.emplace_back(week, slot.first / static_cast<double>(slot.second));
    return out;
}

double volatility(const std::vector<double>& prices) {
    if (prices.size() < 2) throw std::invalid_argument("volatility: need at least 2 prices");
    for (double p : prices)
        if (!(p > 0.0)) throw std::invalid_argument("volatility: nonpositive price");
    std::vector<double> returns;
    returns.reserve(prices.size() - 1);
    for (size_t i = 1; i < prices.size(); ++i) returns.push_back(std::log(prices[i] / prices[i - 1]));
    double mean = 0.0;
    for (double r : returns) mean += r;
    mean /= static_cast<double>(returns.size());
    if (returns.size() == 1) return 0.0;
    double ss = 0.0;
    for (double r : returns) ss += (r - mean) * (r - mean);
    return std::sqrt(ss / static_cast<double>(returns.size() - 1));
}

// ---------------------------------------------------------------------------
// transaction features
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string>& txn_feature_names() {
    static const std::vector<std::string> names = {
        "txn.recency_days",       "txn.trades_7d",
        "txn.trades_30d",         "txn.gap_std_days",
        "txn.count_buy",          "txn.count_sell",
        "txn.count_exchange",     "txn.count_other",
        "txn.count_total",        "txn.account_count",
        "txn.max_account_trades", "txn.repeat_instrument_trades",
        "txn.trading_days",       "txn.amount_buy",
        "txn.amount_sell",        "txn.amount_exchange",
        "txn.amount_other",       "txn.amount_total",
        "txn.max_account_amount", "txn.repeat_instrument_amount",
        "txn.vix_weighted_weekly_freq",
    };
    return names;
}

double sample_std(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

FeatureGroup txn_features(const std::vector<TransactionRecord>& records,
                          const std::vector<std::pair<IsoWeek, double>>& vix_weekly, Date as_of,
                          const TxnFeatureConfig& config,
                          const std::vector<std::string>& clients) {
    for (const auto& r : records) {
        if (r.date > as_of)
            throw SchemaError("txn_features: record for client '" + r.client_id + "' dated " +
                              format_date(r.date) + " is after as_of " + format_date(as_of));
        if (r.amount < 0.0)
            throw SchemaError("txn_features: negative amount for client '" + r.client_id + "'");
    }

    const Date window_start = add_days(as_of, -config.lookback_days);
    std::map<std::string, std::vector<const TransactionRecord*>> by_client;
    for (const auto& c : clients) by_client[c];  // ensure every client has a slot
    for (const auto& r : records) {
        if (r.date < window_start) continue;
        auto it = by_client.find(r.client_id);
        if (it != by_client.end()) it->second.push_back(&r);
    }

    // VIX weeks intersecting the lookback window, used by the weighted
    // frequency. When VIX is constant this reduces to the plain mean weekly
    // trade count over those weeks.
    const IsoWeek week_lo = iso_week(window_start);
    const IsoWeek week_hi = iso_week(as_of);
    std::map<IsoWeek, double> vix_in_window;
    double vix_mass = 0.0;
    for (const auto& [week, mean_close] : vix_weekly) {
        if (week < week_lo || week_hi < week) continue;
        vix_in_window[week] = mean_close;
        vix_mass += mean_close;
    }

    FeatureGroup group;
    group.names = txn_feature_names();
    for (const auto& [client, recs] : by_client) {
        std::vector<double> f(group.names.size(), 0.0);
        if (recs.empty()) {
            f[0] = static_cast<double>(config.lookback_days);  // recency sentinel
            group.rows[client] = std::move(f);
            continue;
        }
        Date last = recs.front()->date;
        std::set<int32_t> trade_days;
        std::map<std::string, std::pair<long long, double>> per_account;
        std::map<std::string, std::pair<long long, double>> per_instrument;
        std::map<IsoWeek, long long> per_week;
        long long trades_7d = 0, trades_30d = 0;
        double amount_total = 0.0;
        for (const auto* r : recs) {
            last = std::max(last, r->date);
            trade_days.insert(r->date.days);
            const int age = as_of.days - r->date.days;
            if (age < 7) ++trades_7d;
            if (age < 30) ++trades_30d;
            const size_t type_idx = static_cast<size_t>(r->txn_type);
            f[4 + type_idx] += 1.0;                // count_
            f[13 + type_idx] += r->amount;          // amount_
            amount_total += r->amount;
            auto& acct = per_account[r->account_id];
            ++acct.first;
            acct.second += r->amount;
            auto& inst = per_instrument[r->instrument];
            ++inst.first;
            inst.second += r->amount;
            ++per_week[iso_week(r->date)];
        }
        f[0] = static_cast<double>(as_of.days - last.days);
        f[1] = static_cast<double>(trades_7d);
        f[2] = static_cast<double>(trades_30d);
        std::vector<double> gaps;
        for (auto it = trade_days.begin(); it != trade_days.end(); ++it) {
            auto next = std::next(it);
            if (next != trade_days.end()) gaps.push_back(static_cast<double>(*next - *it));
        }
        f[3] = sample_std(gaps);
        f[8] = static_cast<double>(recs.size());
        f[9] = static_cast<double>(per_account.size());
        for (const auto& [acct, stat] : per_account) {
            f[10] = std::max(f[10], static_cast<double>(stat.first));
            f[18] = std::max(f[18], stat.second);
        }
        for (const auto& [inst, stat] : per_instrument) {
            if (stat.first >= 2) {
                f[11] += static_cast<double>(stat.first);
                f[19] += stat.second;
            }
        }
        f[12] = static_cast<double>(trade_days.size());
        f[17] = amount_total;
        if (vix_mass > 0.0) {
            double weighted = 0.0;
            for (const auto& [week, vix] : vix_in_window) {
                auto it = per_week.find(week);
                if (it != per_week.end()) weighted += static_cast<double>(it->second) * vix;
            }
            f[20] = weighted / vix_mass;
        }
        group.rows[client] = std::move(f);
    }
    return group;
}

// ---------------------------------------------------------------------------
// note features
// ---------------------------------------------------------------------------

FeatureGroup note_features(const std::vector<TagEvent>& events,
                           const std::map<std::string, long long>& note_counts, Date as_of,
                           const NoteFeatureConfig& config,
                           const std::vector<std::string>& clients,
                           const std::vector<std::string>& topics) {
    for (const auto& ev : events)
        if (ev.date > as_of)
            throw SchemaError("note_features: tag event in note '" + ev.note_id + "' dated " +
                              format_date(ev.date) + " is after as_of " + format_date(as_of));

    std::vector<std::string> sorted_topics = topics;
    std::sort(sorted_topics.begin(), sorted_topics.end());
    std::map<std::string, size_t> topic_index;
    for (size_t i = 0; i < sorted_topics.size(); ++i) topic_index[sorted_topics[i]] = i;

    constexpr size_t kPerTopic = 6;
    FeatureGroup group;
    for (const auto& topic : sorted_topics) {
        group.names.push_back("note." + topic + ".count");
        group.names.push_back("note." + topic + ".rate");
        group.names.push_back("note." + topic + ".recency_weighted");
        group.names.push_back("note." + topic + ".mean_sim");
        group.names.push_back("note." + topic + ".max_sim");
        group.names.push_back("note." + topic + ".days_since");
    }

    struct Accum {
        long long count = 0;
        double weighted = 0.0;
        double sim_sum = 0.0;
        double sim_max = 0.0;
        int32_t last_day = INT32_MIN;
    };
    std::map<std::string, std::vector<Accum>> acc;
    for (const auto& c : clients) acc[c].resize(sorted_topics.size());
    for (const auto& ev : events) {
        auto it = acc.find(ev.client_id);
        if (it == acc.end()) continue;
        auto ti = topic_index.find(ev.topic_name);
        if (ti == topic_index.end()) continue;
        Accum& a = it->second[ti->second];
        ++a.count;
        const double age = static_cast<double>(as_of.days - ev.date.days);
        a.weighted += std::exp2(-age / config.half_life_days);
        a.sim_sum += ev.similarity;
        a.sim_max = std::max(a.sim_max, ev.similarity);
        a.last_day = std::max(a.last_day, ev.date.days);
    }

    for (const auto& client : clients) {
        const auto& topics_acc = acc.at(client);
        std::vector<double> f(group.names.size(), 0.0);
        long long notes = 0;
        if (auto it = note_counts.find(client); it != note_counts.end()) notes = it->second;
        for (size_t t = 0; t < topics_acc.size(); ++t) {
            const Accum& a = topics_acc[t];
            const size_t base = t * kPerTopic;
            f[base + 0] = static_cast<double>(a.count);
            f[base + 1] = static_cast<double>(a.count) / static_cast<double>(std::max<long long>(1, notes));
            f[base + 2] = a.weighted;
            f[base + 3] = a.count > 0 ? a.sim_sum / static_cast<double>(a.count) : 0.0;
            f[base + 4] = a.sim_max;
            f[base + 5] = a.count > 0 ? static_cast<double>(as_of.days - a.last_day)
                                      : config.missing_recency_sentinel;
        }
        group.rows[client] = std::move(f);
    }
    return group;
}

// ---------------------------------------------------------------------------
// dataset assembly
// ---------------------------------------------------------------------------

void Dataset::validate() const {
    if (static_cast<int>(labels.size()) != rows() || static_cast<int>(X.size()) != rows())
        throw SchemaError("dataset: inconsistent row counts");
    std::set<std::string> seen(feature_names.begin(), feature_names.end());
    if (seen.size() != feature_names.size()) throw SchemaError("dataset: duplicate feature names");
    for (int i = 0; i < rows(); ++i) {
        if (labels[static_cast<size_t>(i)] != 0 && labels[static_cast<size_t>(i)] != 1)
            throw SchemaError("dataset: label not in {0,1} for client '" +
                              client_ids[static_cast<size_t>(i)] + "'");
        if (static_cast<int>(X[static_cast<size_t>(i)].size()) != cols())
            throw SchemaError("dataset: ragged feature row");
        for (double v : X[static_cast<size_t>(i)])
            if (!std::isfinite(v))
                throw SchemaError("dataset: non-finite feature for client '" +
                                  client_ids[static_cast<size_t>(i)] + "'");
    }
}

Dataset build_dataset(const FeatureGroup& note_group, const FeatureGroup& txn_group,
                      const std::map<std::string, int>& labels) {
    std::set<std::string> unlabeled;
    for (const auto& [client, row] : note_group.rows)
        if (!labels.count(client)) unlabeled.insert(client);
    for (const auto& [client, row] : txn_group.rows)
        if (!labels.count(client)) unlabeled.insert(client);
    if (!unlabeled.empty()) {
        std::string msg = "build_dataset: label missing for client(s):";
        for (const auto& c : unlabeled) msg += ' ' + c;
        throw SchemaError(msg);
    }

    Dataset ds;
    ds.feature_names = note_group.names;
    ds.feature_names.insert(ds.feature_names.end(), txn_group.names.begin(),
                            txn_group.names.end());
    for (const auto& [client, label] : labels) {
        ds.client_ids.push_back(client);
        ds.labels.push_back(label);
        std::vector<double> row;
        row.reserve(ds.feature_names.size());
        if (auto it = note_group.rows.find(client); it != note_group.rows.end())
            row.insert(row.end(), it->second.begin(), it->second.end());
        else
            row.insert(row.end(), note_group.names.size(), 0.0);
        if (auto it = txn_group.rows.find(client); it != txn_group.rows.end())
            row.insert(row.end(), it->second.begin(), it->second.end());
        else
            row.insert(row.end(), txn_group.names.size(), 0.0);
        ds.X.push_back(std::move(row));
    }
    ds.validate();
    return ds;
}

}  // namespace notesforge
