#pragma once

#include <map>
#include <string>
#include <vector>

#include "notesforge/classify.hpp"
#include "notesforge/corpus.hpp"
#include "notesforge/features.hpp"
#include "notesforge/synth.hpp"
#include "notesforge/tagging.hpp"

namespace notesforge {

// notes: JSON Lines {"note_id","advisor_id","client_id","date","text"}
std::vector<RawNote> read_notes_jsonl(const std::string& path);
void write_notes_jsonl(const std::string& path, const std::vector<RawNote>& notes);

// corpus: JSON Lines {"note_id","tokens":[...]}
std::vector<TokenDoc> read_corpus_jsonl(const std::string& path);
void write_corpus_jsonl(const std::string& path, const std::vector<TokenDoc>& docs);

// vocabulary: CSV token,index,count (indices contiguous from 0)
Vocabulary read_vocab_csv(const std::string& path);
void write_vocab_csv(const std::string& path, const Vocabulary& vocab);

// stats: monthly_counts.csv, note_length_hist.csv, advisor_avg_length_hist.csv
void write_stats(const std::string& dir, const StatsReport& report);

// transactions: CSV client_id,date,account_id,instrument,txn_type,amount
std::vector<TransactionRecord> read_transactions_csv(const std::string& path);
void write_transactions_csv(const std::string& path,
                            const std::vector<TransactionRecord>& records);

// vix: CSV date,close
VixSeries read_vix_csv(const std::string& path);
void write_vix_csv(const std::string& path, const VixSeries& series);

// labels: CSV client_id,label
std::map<std::string, int> read_labels_csv(const std::string& path);
void write_labels_csv(const std::string& path, const std::map<std::string, int>& labels);

// tag events: CSV note_id,client_id,date,topic,token,similarity,position
std::vector<TagEvent> read_events_csv(const std::string& path);
void write_events_csv(const std::string& path, const std::vector<TagEvent>& events);

// dataset: CSV client_id,label,<feature columns>
Dataset read_dataset_csv(const std::string& path);
void write_dataset_csv(const std::string& path, const Dataset& ds);

// lexicons: JSON array of {"topic","seeds","threshold"}
std::vector<LexiconSpec> read_lexicon_specs(const std::string& path);
void write_lexicon_specs(const std::string& path, const std::vector<LexiconSpec>& specs);

// word list, one token per line; '#' comments allowed
std::vector<std::string> read_word_list(const std::string& path);

std::map<std::string, std::string> read_lemma_exceptions_csv(const std::string& path);

// topic->theme map: CSV topic,theme
std::map<int, std::string> read_theme_map_csv(const std::string& path);

}  // namespace notesforge
