#pragma once

#include <map>
#include <string>
#include <vector>

#include "notesforge/dates.hpp"
#include "notesforge/tagging.hpp"

namespace notesforge {

enum class TxnType { buy, sell, exchange, other };

TxnType parse_txn_type(const std::string& s);  // case-insensitive; unknown -> other
std::string txn_type_name(TxnType t);

struct TransactionRecord {
    std::string client_id;
    Date date;
    std::string account_id;
    std::string instrument;
    TxnType txn_type = TxnType::other;
    double amount = 0.0;  // nonnegative
};

struct VixSeries {
    std::vector<Date> dates;    // strictly increasing
    std::vector<double> closes;  // > 0
    void validate() const;       // throws SchemaError
};

// ISO-week grouping, arithmetic mean per week; result ordered by week.
std::vector<std::pair<IsoWeek, double>> weekly_vix(const VixSeries& series);

// Sample standard deviation of log returns.
double volatility(const std::vector<double>& prices);

struct TxnFeatureConfig {
    int lookback_days = 182;
};

struct NoteFeatureConfig {
    double half_life_days = 30.0;
    // days_since_last_tag for clients with notes but no tags
    double missing_recency_sentinel = 365.0;
};

// A named feature block over a set of clients; every row has the same width.
struct FeatureGroup {
    std::vector<std::string> names;
    std::map<std::string, std::vector<double>> rows;  // client_id -> values
};

// Recency / frequency / monetary / VIX-weighted aggregates per client over
// [as_of - lookback, as_of]. Clients without records get zeros with
// recency_days = lookback. Records dated after as_of are rejected.
FeatureGroup txn_features(const std::vector<TransactionRecord>& records,
                          const std::vector<std::pair<IsoWeek, double>>& vix_weekly, Date as_of,
                          const TxnFeatureConfig& config, const std::vector<std::string>& clients);

// Per client x topic: count, per-note rate, half-life-weighted recency count,
// mean/max similarity, days since last tag. Events after as_of are rejected.
FeatureGroup note_features(const std::vector<TagEvent>& events,
                           const std::map<std::string, long long>& note_counts, Date as_of,
                           const NoteFeatureConfig& config, const std::vector<std::string>& clients,
                           const std::vector<std::string>& topics);

struct Dataset {
    std::vector<std::string> client_ids;
    std::vector<int> labels;  // 0/1
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> X;

    int rows() const { return static_cast<int>(client_ids.size()); }
    int cols() const { return static_cast<int>(feature_names.size()); }
    void validate() const;  // finiteness, label domain, unique names
};

// Rows are the labeled clients (sorted); note features first, then txn
// features; a client missing from a group gets zeros for that group.
Dataset build_dataset(const FeatureGroup& note_group, const FeatureGroup& txn_group,
                      const std::map<std::string, int>& labels);

}  // namespace notesforge
