#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "complaintminer/lda.hpp"

namespace cmine {

struct TopicSummary {
  int topic_id = 0;
  std::vector<std::pair<std::string, double>> top_words;  // prob descending
  std::string label;     // empty = unlabeled
  std::string category;  // empty = uncategorized
};

struct LabelRow {
  int topic_id;
  std::string label;
  std::string category;
};

struct LabelFile {
  std::vector<LabelRow> rows;
};

inline const std::set<std::string>& default_categories() {
  static const std::set<std::string> cats = {"C1", "C2", "C3", "C4"};
  return cats;
}

/// Per-topic n most probable words under phi, ties broken by word ascending.
inline std::vector<TopicSummary> top_words(const TrainedModel& model, int n) {
  const int v = static_cast<int>(model.vocab.size());
  if (n < 1 || n > v) throw std::invalid_argument("top-word count out of range");
  std::vector<TopicSummary> summaries;
  summaries.reserve(model.phi.size());
  std::vector<int> order(v);
  for (size_t k = 0; k < model.phi.size(); ++k) {
    const auto& row = model.phi[k];
    for (int w = 0; w < v; ++w) order[w] = w;
    std::partial_sort(order.begin(), order.begin() + n, order.end(),
                      [&](int a, int b) {
                        if (row[a] != row[b]) return row[a] > row[b];
                        return model.vocab[a] < model.vocab[b];
                      });
    TopicSummary s;
    s.topic_id = static_cast<int>(k);
    for (int r = 0; r < n; ++r)
      s.top_words.emplace_back(model.vocab[order[r]], row[order[r]]);
    summaries.push_back(std::move(s));
  }
  return summaries;
}

/// TSV `topic_id<TAB>label<TAB>category`, '#' comments and blank lines
/// ignored. Categories are validated against the given set.
inline LabelFile load_labels(const std::string& path,
                             const std::set<std::string>& categories =
                                 default_categories()) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open label file " + path);
  LabelFile lf;
  std::set<int> seen;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string id_field, label, category;
    if (!std::getline(ls, id_field, '\t') || !std::getline(ls, label, '\t') ||
        !std::getline(ls, category))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected topic_id<TAB>label<TAB>category");
    int topic_id;
    try {
      size_t pos;
      topic_id = std::stoi(id_field, &pos);
      if (pos != id_field.size()) throw std::invalid_argument(id_field);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": bad topic id '" + id_field + "'");
    }
    if (!seen.insert(topic_id).second)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": duplicate topic id " +
                               std::to_string(topic_id));
    if (!categories.count(category))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown category '" + category + "'");
    lf.rows.push_back({topic_id, label, category});
  }
  return lf;
}

/// Attaches labels and categories to matching topics. Unlabeled topics are
/// left untouched; order and word lists never change.
inline std::vector<TopicSummary> apply_labels(std::vector<TopicSummary> summaries,
                                              const LabelFile& labels) {
  const int k_count = static_cast<int>(summaries.size());
  for (const LabelRow& row : labels.rows) {
    if (row.topic_id < 0 || row.topic_id >= k_count)
      throw std::runtime_error("label row for topic " +
                               std::to_string(row.topic_id) +
                               " is out of range (model has " +
                               std::to_string(k_count) + " topics)");
    for (TopicSummary& s : summaries) {
      if (s.topic_id == row.topic_id) {
        s.label = row.label;
        s.category = row.category;
        break;
      }
    }
  }
  return summaries;
}

struct CategorySummary {
  std::map<std::string, int> counts;        // per category
  std::map<std::string, double> fractions;  // counts / categorized total
  int categorized_total = 0;
  int subset_count = 0;
  double subset_fraction = 0.0;
};

/// Rolls categorized topics up per category and reports the combined
/// fraction of the queried category subset. Counts are exact integers;
/// fractions are derived from them.
inline CategorySummary category_summary(const std::vector<TopicSummary>& summaries,
                                        const std::set<std::string>& subset) {
  CategorySummary cs;
  for (const TopicSummary& s : summaries) {
    if (s.category.empty()) continue;
    ++cs.counts[s.category];
    ++cs.categorized_total;
    if (subset.count(s.category)) ++cs.subset_count;
  }
  if (cs.categorized_total == 0)
    throw std::runtime_error("no categorized topics");
  for (const auto& [cat, count] : cs.counts)
    cs.fractions[cat] = static_cast<double>(count) / cs.categorized_total;
  cs.subset_fraction =
      static_cast<double>(cs.subset_count) / cs.categorized_total;
  return cs;
}

enum class ReportFormat { Tsv, Json };

inline ReportFormat parse_report_format(const std::string& name) {
  if (name == "tsv") return ReportFormat::Tsv;
  if (name == "json") return ReportFormat::Json;
  throw std::invalid_argument("unknown report format: " + name);
}

inline void write_report(std::ostream& out,
                         const std::vector<TopicSummary>& summaries,
                         ReportFormat format) {
  if (format == ReportFormat::Tsv) {
    out << "topic\tlabel\tcategory\twords\n";
    char buf[32];
    for (const TopicSummary& s : summaries) {
      out << s.topic_id << '\t' << s.label << '\t' << s.category << '\t';
      for (size_t i = 0; i < s.top_words.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.4f", s.top_words[i].second);
        out << (i ? " " : "") << s.top_words[i].first << ':' << buf;
      }
      out << '\n';
    }
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const TopicSummary& s : summaries) {
      nlohmann::json words = nlohmann::json::array();
      char buf[32];
      for (const auto& [word, prob] : s.top_words) {
        std::snprintf(buf, sizeof buf, "%.4f", prob);
        words.push_back({{"word", word}, {"prob", std::stod(buf)}});
      }
      arr.push_back({{"topic", s.topic_id},
                     {"label", s.label},
                     {"category", s.category},
                     {"words", std::move(words)}});
    }
    out << arr.dump(2) << '\n';
  }
}

inline void export_report(const std::vector<TopicSummary>& summaries,
                          const std::string& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_report(out, summaries, format);
  if (!out) throw std::runtime_error("write failed: " + path);
}

/// Reads back a report written by write_report (probabilities carry the
/// 4-decimal formatting).
inline std::vector<TopicSummary> parse_report(std::istream& in,
                                              ReportFormat format) {
  std::vector<TopicSummary> summaries;
  if (format == ReportFormat::Tsv) {
    std::string line;
    if (!std::getline(in, line))
      throw std::runtime_error("report: missing header");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string id_field, label, category, words;
      std::getline(ls, id_field, '\t');
      std::getline(ls, label, '\t');
      std::getline(ls, category, '\t');
      std::getline(ls, words);
      TopicSummary s;
      s.topic_id = std::stoi(id_field);
      s.label = label;
      s.category = category;
      std::istringstream ws(words);
      std::string pair;
      while (ws >> pair) {
        auto colon = pair.rfind(':');
        if (colon == std::string::npos)
          throw std::runtime_error("report: bad word:prob entry '" + pair + "'");
        s.top_words.emplace_back(pair.substr(0, colon),
                                 std::stod(pair.substr(colon + 1)));
      }
      summaries.push_back(std::move(s));
    }
  } else {
    nlohmann::json arr = nlohmann::json::parse(in);
    for (const auto& item : arr) {
      TopicSummary s;
      s.topic_id = item.at("topic").get<int>();
      s.label = item.at("label").get<std::string>();
      s.category = item.at("category").get<std::string>();
      for (const auto& w : item.at("words"))
        s.top_words.emplace_back(w.at("word").get<std::string>(),
                                 w.at("prob").get<double>());
      summaries.push_back(std::move(s));
    }
  }
  return summaries;
}

}  // namespace cmine
