#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "complaintminer/stopwords.hpp"

namespace cmine {

struct TokenizerConfig {
  bool lowercase = true;
  int min_token_len = 3;
  std::unordered_set<std::string> stopwords = default_stopwords();
};

/// Lowercases, splits on any non-alphabetic byte, keeps [a-z]+ tokens of
/// length >= min_token_len that are not stopwords. Source order preserved.
inline std::vector<std::string> tokenize(std::string_view text,
                                         const TokenizerConfig& cfg) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (static_cast<int>(cur.size()) >= cfg.min_token_len &&
        !cfg.stopwords.count(cur))
      tokens.push_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (c >= 'a' && c <= 'z') {
      cur.push_back(c);
    } else if (cfg.lowercase && c >= 'A' && c <= 'Z') {
      cur.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

}  // namespace cmine
