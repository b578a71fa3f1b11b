#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "complaintminer/corpus.hpp"

namespace cmine {

/// Frequency table of length-n token sequences. Keys are space-joined
/// words (tokens never contain spaces, so joining is lossless).
struct NGramTable {
  int n = 1;
  std::unordered_map<std::string, std::int64_t> counts;
  std::int64_t total = 0;
};

/// Named multi-word phrases to count, e.g. competitor mentions.
struct PhraseQuery {
  std::vector<std::pair<std::string, std::vector<std::string>>> phrases;
};

inline std::vector<std::string> split_ngram_key(const std::string& key) {
  std::vector<std::string> out;
  std::istringstream in(key);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

/// Counts every length-n window inside each document. Windows never span
/// document boundaries; docs shorter than n contribute nothing.
inline NGramTable extract_ngrams(const Corpus& corpus, int n) {
  if (n < 1) throw std::invalid_argument("ngram size must be >= 1");
  NGramTable table;
  table.n = n;
  std::string key;
  for (const auto& doc : corpus.docs) {
    if (static_cast<int>(doc.size()) < n) continue;
    for (size_t i = 0; i + n <= doc.size(); ++i) {
      key.clear();
      for (int j = 0; j < n; ++j) {
        if (j) key.push_back(' ');
        key += corpus.words[doc[i + j]];
      }
      ++table.counts[key];
      ++table.total;
    }
  }
  return table;
}

/// The k highest-count entries, count descending, ties broken by key
/// ascending. k larger than the table returns everything.
inline std::vector<std::pair<std::string, std::int64_t>> top_ngrams(
    const NGramTable& table, int k) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  std::vector<std::pair<std::string, std::int64_t>> entries(
      table.counts.begin(), table.counts.end());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (static_cast<size_t>(k) < entries.size()) entries.resize(k);
  return entries;
}

/// Counts (possibly overlapping) occurrences of each query phrase across
/// all documents. A phrase containing an out-of-vocabulary word counts 0.
inline std::unordered_map<std::string, std::int64_t> phrase_frequency(
    const Corpus& corpus, const PhraseQuery& query) {
  std::unordered_map<std::string, std::int64_t> result;
  for (const auto& [name, tokens] : query.phrases) {
    if (tokens.empty())
      throw std::invalid_argument("empty phrase for '" + name + "'");
    std::vector<int> encoded;
    encoded.reserve(tokens.size());
    bool in_vocab = true;
    for (const std::string& w : tokens) {
      int id = corpus.word_id(w);
      if (id < 0) {
        in_vocab = false;
        break;
      }
      encoded.push_back(id);
    }
    std::int64_t count = 0;
    if (in_vocab) {
      for (const auto& doc : corpus.docs) {
        if (doc.size() < encoded.size()) continue;
        for (size_t i = 0; i + encoded.size() <= doc.size(); ++i)
          if (std::equal(encoded.begin(), encoded.end(), doc.begin() + i))
            ++count;
      }
    }
    result[name] = count;
  }
  return result;
}

/// Default insurer watch list. "state farm" and "liberty mutual" match as
/// two-token sequences after tokenization.
inline PhraseQuery default_competitors() {
  PhraseQuery q;
  q.phrases = {
      {"progressive", {"progressive"}},
      {"allstate", {"allstate"}},
      {"state farm", {"state", "farm"}},
      {"esurance", {"esurance"}},
      {"farmers", {"farmers"}},
      {"liberty mutual", {"liberty", "mutual"}},
      {"nationwide", {"nationwide"}},
      {"usaa", {"usaa"}},
  };
  return q;
}

}  // namespace cmine
