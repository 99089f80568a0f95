#include "notesforge/io.hpp"

#include <filesystem>
#include <fstream>

#include "notesforge/csv.hpp"
#include "notesforge/errors.hpp"
#include "notesforge/numfmt.hpp"

#include "json.hpp"

namespace notesforge {

namespace {

using njson = nlohmann::json;
using ojson = nlohmann::ordered_json;

njson parse_json_line(const std::string& line, const std::string& path, size_t lineno) {
    try {
        return njson::parse(line);
    } catch (const njson::exception& e) {
        throw SchemaError(path + ":" + std::to_string(lineno) + ": bad JSON: " + e.what());
    }
}

std::string require_string(const njson& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_string())
        throw SchemaError(where + ": missing string field '" + key + "'");
    return j[key].get<std::string>();
}

void expect_columns(const std::vector<std::string>& fields, size_t n, const std::string& path,
                    size_t lineno) {
    if (fields.size() != n)
        throw SchemaError(path + ":" + std::to_string(lineno) + ": expected " +
                          std::to_string(n) + " columns, got " + std::to_string(fields.size()));
}

}  // namespace

// ---------------------------------------------------------------------------
// notes / corpus / vocabulary
// ---------------------------------------------------------------------------

std::vector<RawNote> read_notes_jsonl(const std::string& path) {
    const auto lines = read_lines(path);
    std::vector<RawNote> notes;
    notes.reserve(lines.size());
    for (size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const njson j = parse_json_line(lines[i], path, i + 1);
        const std::string where = path + ":" + std::to_string(i + 1);
        RawNote note;
        note.note_id = require_string(j, "note_id", where);
        note.advisor_id = require_string(j, "advisor_id", where);
        note.client_id = require_string(j, "client_id", where);
        note.date = parse_date(require_string(j, "date", where));
        note.text = require_string(j, "text", where);
        notes.push_back(std::move(note));
    }
    return notes;
}

void write_notes_jsonl(const std::string& path, const std::vector<RawNote>& notes) {
    std::string out;
    for (const auto& n : notes) {
        ojson j;
        j["note_id"] = n.note_id;
        j["advisor_id"] = n.advisor_id;
        j["client_id"] = n.client_id;
        j["date"] = format_date(n.date);
        j["text"] = n.text;
        out += j.dump();
        out += '\n';
    }
    write_text_file(path, out);
}

std::vector<TokenDoc> read_corpus_jsonl(const std::string& path) {
    const auto lines = read_lines(path);
    std::vector<TokenDoc> docs;
    docs.reserve(lines.size());
    for (size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const njson j = parse_json_line(lines[i], path, i + 1);
        const std::string where = path + ":" + std::to_string(i + 1);
        TokenDoc doc;
        doc.note_id = require_string(j, "note_id", where);
        if (!j.contains("tokens") || !j["tokens"].is_array())
            throw SchemaError(where + ": missing 'tokens' array");
        for (const auto& t : j["tokens"]) {
            if (!t.is_string()) throw SchemaError(where + ": non-string token");
            doc.tokens.push_back(t.get<std::string>());
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

void write_corpus_jsonl(const std::string& path, const std::vector<TokenDoc>& docs) {
    std::string out;
    for (const auto& d : docs) {
        ojson j;
        j["note_id"] = d.note_id;
        j["tokens"] = d.tokens;
        out += j.dump();
        out += '\n';
    }
    write_text_file(path, out);
}

Vocabulary read_vocab_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "token,index,count")
        throw SchemaError(path + ": expected header 'token,index,count'");
    std::vector<std::pair<std::string, long long>> entries;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv_line(lines[i]);
        expect_columns(fields, 3, path, i + 1);
        const long long index = parse_ll(fields[1]);
        if (index != static_cast<long long>(entries.size()))
            throw SchemaError(path + ":" + std::to_string(i + 1) + ": non-contiguous index");
        entries.emplace_back(fields[0], parse_ll(fields[2]));
    }
    // from_entries sorts lexicographically; the file is written in that order
    return Vocabulary::from_entries(std::move(entries));
}

void write_vocab_csv(const std::string& path, const Vocabulary& vocab) {
    std::string out = "token,index,count\n";
    for (int i = 0; i < vocab.size(); ++i) {
        out += csv_escape(vocab.token_of(i));
        out += ',';
        out += std::to_string(i);
        out += ',';
        out += std::to_string(vocab.counts()[static_cast<size_t>(i)]);
        out += '\n';
    }
    write_text_file(path, out);
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

namespace {

std::string hist_csv(const std::vector<HistBin>& bins) {
    std::string out = "bin_lo,bin_hi,count\n";
    for (const auto& b : bins) {
        out += std::to_string(b.lo);
        out += ',';
        out += std::to_string(b.hi);
        out += ',';
        out += std::to_string(b.count);
        out += '\n';
    }
    return out;
}

}  // namespace

void write_stats(const std::string& dir, const StatsReport& report) {
    std::filesystem::create_directories(dir);
    std::string monthly = "month,notes,advisors,notes_per_advisor\n";
    for (const auto& row : report.monthly) {
        monthly += row.month;
        monthly += ',';
        monthly += std::to_string(row.notes);
        monthly += ',';
        monthly += std::to_string(row.advisors);
        monthly += ',';
        monthly += fmt_double(row.notes_per_advisor);
        monthly += '\n';
    }
    write_text_file(dir + "/monthly_counts.csv", monthly);
    write_text_file(dir + "/note_length_hist.csv", hist_csv(report.note_length_hist));
    write_text_file(dir + "/advisor_avg_length_hist.csv",
                    hist_csv(report.advisor_avg_length_hist));
}

// ---------------------------------------------------------------------------
// transactions / vix / labels
// ---------------------------------------------------------------------------

std::vector<TransactionRecord> read_transactions_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "client_id,date,account_id,instrument,txn_type,amount")
        throw SchemaError(path +
                          ": expected header 'client_id,date,account_id,instrument,txn_type,amount'");
    std::vector<TransactionRecord> records;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv_line(lines[i]);
        expect_columns(fields, 6, path, i + 1);
        TransactionRecord rec;
        rec.client_id = fields[0];
        rec.date = parse_date(fields[1]);
        rec.account_id = fields[2];
        rec.instrument = fields[3];
        rec.txn_type = parse_txn_type(fields[4]);
        rec.amount = parse_double(fields[5]);
        if (rec.amount < 0.0)
            throw SchemaError(path + ":" + std::to_string(i + 1) + ": negative amount");
        records.push_back(std::move(rec));
    }
    return records;
}

void write_transactions_csv(const std::string& path,
                            const std::vector<TransactionRecord>& records) {
    std::string out = "client_id,date,account_id,instrument,txn_type,amount\n";
    for (const auto& r : records) {
        out += csv_escape(r.client_id);
        out += ',';
        out += format_date(r.date);
        out += ',';
        out += csv_escape(r.account_id);
        out += ',';
        out += csv_escape(r.instrument);
        out += ',';
        out += txn_type_name(r.txn_type);
        out += ',';
        out += fmt_double(r.amount);
        out += '\n';
    }
    write_text_file(path, out);
}

VixSeries read_vix_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "date,close")
        throw SchemaError(path + ": expected header 'date,close'");
    VixSeries series;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv_line(lines[i]);
        expect_columns(fields, 2, path, i + 1);
        series.dates.push_back(parse_date(fields[0]));
        series.closes.push_back(parse_double(fields[1]));
    }
    series.validate();
    return series;
}

void write_vix_csv(const std::string& path, const VixSeries& series) {
    std::string out = "date,close\n";
    for (size_t i = 0; i < series.dates.size(); ++i) {
        out += format_date(series.dates[i]);
        out += ',';
        out += fmt_double(series.closes[i]);
        out += '\n';
    }
    write_text_file(path, out);
}

std::map<std::string, int> read_labels_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "client_id,label")
        throw SchemaError(path + ": expected header 'client_id,label'");
    std::map<std::string, int> labels;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv_line(lines[i]);
        expect_columns(fields, 2, path, i + 1);
        const long long v = parse_ll(fields[1]);
        if (v != 0 && v != 1)
            throw SchemaError(path + ":" + std::to_string(i + 1) + ": label must be 0 or 1");
        if (!labels.emplace(fields[0], static_cast<int>(v)).second)
            throw SchemaError(path + ":" + std::to_string(i + 1) + ": duplicate client '" +
                              fields[0] + "'");
    }
    return labels;
}

void write_labels_csv(const std::string& path, const std::map<std::string, int>& labels) {
    std::string out = "client_id,label\n";
    for (const auto& [client, label] : labels) {
        out += csv_escape(client);
        out += ',';
        out += std::to_string(label);
        out += '\n';
    }
    write_text_file(path, out);
}

// ---------------------------------------------------------------------------
// tag events / dataset
// ---------------------------------------------------------------------------

std::vector<TagEvent> read_events_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "note_id,client_id,date,topic,token,similarity,position")
        throw SchemaError(
            path + ": expected header 'note_id,client_id,date,topic,token,similarity,position'");
    std::vector<TagEvent> events;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv_line(lines[i]);
        expect_columns(fields, 7, path, i + 1);
        TagEvent ev;
        ev.note_id = fields[0];
        ev.client_id = fields[1];
        ev.date = parse_date(fields[2]);
        ev.topic_name = fields[3];
        ev.matched_token = fields[4];
        ev.similarity = parse_double(fields[5]);
        ev.position = static_cast<int>(parse_ll(fields[6]));
        if (ev.position < 0)
            throw SchemaError(path + ":" + std::to_string(i + 1) + ": negative position");
        events.push_back(std::move(ev));
    }
    return events;
}

void write_events_csv(const std::string& path, const std::vector<TagEvent>& events) {
    std::string out = "note_id,client_id,date,topic,token,similarity,position\n";
    for (const auto& ev : events) {
        out += csv_escape(ev.note_id);
        out += ',';
        out += csv_escape(ev.client_id);
        out += ',';
        out += format_date(ev.date);
        out += ',';
        out += csv_escape(ev.topic_name);
        out += ',';
        out += csv_escape(ev.matched_token);
        out += ',';
        out += fmt_double(ev.similarity);
        out += ',';
        out += std::to_string(ev.position);
        out += '\n';
    }
    write_text_file(path, out);
}

Dataset read_dataset_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw SchemaError(path + ": empty dataset file");
    const auto header = split_csv_line(lines[0]);
    if (header.size() < 2 || header[0] != "client_id" || header[1] != "label")
        throw SchemaError(path + ": dataset header must start 'client_id,label'");
    Dataset ds;
    ds.feature_names.assign(header.begin() + 2, header.end());
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv_line(lines[i]);
        expect_columns(fields, header.size(), path, i + 1);
        ds.client_ids.push_back(fields[0]);
        const long long label = parse_ll(fields[1]);
        if (label != 0 && label != 1)
            throw SchemaError(path + ":" + std::to_string(i + 1) + ": label must be 0 or 1");
        ds.labels.push_back(static_cast<int>(label));
        std::vector<double> row;
        row.reserve(ds.feature_names.size());
        for (size_t j = 2; j < fields.size(); ++j) row.push_back(parse_double(fields[j]));
        ds.X.push_back(std::move(row));
    }
    ds.validate();
    return ds;
}

void write_dataset_csv(const std::string& path, const Dataset& ds) {
    std::string out = "client_id,label";
    for (const auto& name : ds.feature_names) {
        out += ',';
        out += csv_escape(name);
    }
    out += '\n';
    for (int i = 0; i < ds.rows(); ++i) {
        out += csv_escape(ds.client_ids[static_cast<size_t>(i)]);
        out += ',';
        out += std::to_string(ds.labels[static_cast<size_t>(i)]);
        for (double v : ds.X[static_cast<size_t>(i)]) {
            out += ',';
            out += fmt_double(v);
        }
        out += '\n';
    }
    write_text_file(path, out);
}

// ---------------------------------------------------------------------------
// lexicons / word lists / maps
// ---------------------------------------------------------------------------

std::vector<LexiconSpec> read_lexicon_specs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    njson j;
    try {
        in >> j;
    } catch (const njson::exception& e) {
        throw SchemaError(path + ": bad JSON: " + e.what());
    }
    if (j.is_object()) j = njson::array({j});
    if (!j.is_array()) throw SchemaError(path + ": expected a lexicon object or array");
    std::vector<LexiconSpec> specs;
    for (const auto& item : j) {
        LexiconSpec spec;
        spec.topic = require_string(item, "topic", path);
        if (!item.contains("seeds") || !item["seeds"].is_array() || item["seeds"].empty())
            throw SchemaError(path + ": lexicon '" + spec.topic + "' needs a 'seeds' array");
        for (const auto& s : item["seeds"]) {
            if (!s.is_string()) throw SchemaError(path + ": non-string seed");
            spec.seeds.push_back(s.get<std::string>());
        }
        if (item.contains("threshold")) {
            if (!item["threshold"].is_number())
                throw SchemaError(path + ": threshold must be numeric");
            spec.threshold = item["threshold"].get<double>();
        }
        specs.push_back(std::move(spec));
    }
    if (specs.empty()) throw SchemaError(path + ": no lexicons defined");
    return specs;
}

void write_lexicon_specs(const std::string& path, const std::vector<LexiconSpec>& specs) {
    ojson arr = ojson::array();
    for (const auto& spec : specs) {
        ojson j;
        j["topic"] = spec.topic;
        j["seeds"] = spec.seeds;
        j["threshold"] = spec.threshold;
        arr.push_back(std::move(j));
    }
    write_text_file(path, arr.dump(2) + "\n");
}

std::vector<std::string> read_word_list(const std::string& path) {
    const auto lines = read_lines(path);
    std::vector<std::string> words;
    for (auto line : lines) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        size_t start = 0;
        while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start])))
            ++start;
        line = line.substr(start);
        if (!line.empty()) words.push_back(line);
    }
    return words;
}

std::map<std::string, std::string> read_lemma_exceptions_csv(const std::string& path) {
    const auto lines = read_lines(path);
    std::map<std::string, std::string> map;
    for (size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty() || lines[i][0] == '#') continue;
        const auto fields = split_csv_line(lines[i]);
        expect_columns(fields, 2, path, i + 1);
        map[fields[0]] = fields[1];
    }
    return map;
}

std::map<int, std::string> read_theme_map_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "topic,theme")
        throw SchemaError(path + ": expected header 'topic,theme'");
    std::map<int, std::string> map;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv_line(lines[i]);
        expect_columns(fields, 2, path, i + 1);
        map[static_cast<int>(parse_ll(fields[0]))] = fields[1];
    }
    return map;
}

}  // namespace notesforge
