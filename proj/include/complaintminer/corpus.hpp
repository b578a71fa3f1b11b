#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "complaintminer/review.hpp"
#include "complaintminer/tokenize.hpp"

namespace cmine {

struct PruneConfig {
  // Words occurring fewer than min_df times corpus-wide are dropped.
  // 0 disables pruning.
  int min_df = 2;
};

/// Integer-encoded document collection with a bidirectional vocabulary.
/// Immutable after construction.
struct Corpus {
  std::vector<std::string> words;           // word id -> surface form
  std::unordered_map<std::string, int> ids; // surface form -> word id
  std::vector<std::vector<int>> docs;       // one id sequence per document
  std::vector<std::string> doc_ids;         // parallel review ids
  std::vector<std::string> dropped_ids;     // reviews empty after filtering

  int vocab_size() const { return static_cast<int>(words.size()); }

  std::int64_t token_count() const {
    std::int64_t n = 0;
    for (const auto& d : docs) n += static_cast<std::int64_t>(d.size());
    return n;
  }

  int word_id(const std::string& w) const {
    auto it = ids.find(w);
    return it == ids.end() ? -1 : it->second;
  }
};

/// Tokenizes every review, prunes rare words, and integer-encodes the
/// survivors. Word ids are assigned in first-appearance order. Documents
/// that end up empty are dropped and recorded in dropped_ids.
inline Corpus build_corpus(const ReviewSet& rs, const TokenizerConfig& cfg,
                           const PruneConfig& prune = {}) {
  if (rs.reviews.empty()) throw std::invalid_argument("empty review set");

  std::vector<std::vector<std::string>> tokenized;
  tokenized.reserve(rs.reviews.size());
  std::unordered_map<std::string, int> tf;
  for (const Review& r : rs.reviews) {
    tokenized.push_back(tokenize(r.text, cfg));
    for (const std::string& w : tokenized.back()) ++tf[w];
  }

  Corpus corpus;
  for (size_t i = 0; i < rs.reviews.size(); ++i) {
    std::vector<int> doc;
    for (const std::string& w : tokenized[i]) {
      if (prune.min_df > 0 && tf[w] < prune.min_df) continue;
      auto [it, inserted] = corpus.ids.try_emplace(
          w, static_cast<int>(corpus.words.size()));
      if (inserted) corpus.words.push_back(w);
      doc.push_back(it->second);
    }
    if (doc.empty()) {
      corpus.dropped_ids.push_back(rs.reviews[i].id);
    } else {
      corpus.docs.push_back(std::move(doc));
      corpus.doc_ids.push_back(rs.reviews[i].id);
    }
  }

  if (corpus.docs.empty())
    throw std::runtime_error("empty corpus: no documents survive tokenization");
  return corpus;
}

}  // namespace cmine
