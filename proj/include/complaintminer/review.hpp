#pragma once

#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "complaintminer/csv.hpp"

namespace cmine {

/// One rated consumer review.
struct Review {
  std::string id;
  int rating = 0;  // stars, 1..5
  std::string text;
};

struct ReviewSet {
  std::vector<Review> reviews;
  std::string source;  // file path the set was loaded from
};

enum class InputFormat { Csv, Jsonl };

inline InputFormat parse_input_format(const std::string& name) {
  if (name == "csv") return InputFormat::Csv;
  if (name == "jsonl") return InputFormat::Jsonl;
  throw std::invalid_argument("unknown input format: " + name);
}

namespace detail {

inline bool parse_rating(const std::string& s, int& out) {
  if (s.empty()) return false;
  size_t pos = 0;
  long v;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    return false;
  }
  if (pos != s.size()) return false;
  out = static_cast<int>(v);
  return true;
}

inline void add_review(ReviewSet& rs, Review r, size_t row, std::ostream* warn) {
  if (r.rating < 1 || r.rating > 5) {
    if (warn)
      *warn << "warning: row " << row << ": rating " << r.rating
            << " outside 1..5, skipped\n";
    return;
  }
  rs.reviews.push_back(std::move(r));
}

inline ReviewSet load_csv(std::istream& in, const std::string& source,
                          std::ostream* warn) {
  ReviewSet rs;
  rs.source = source;
  csv::Reader reader(in);
  std::vector<std::string> fields;
  if (!reader.next(fields)) return rs;  // empty file
  if (fields.size() < 3 || fields[0] != "id" || fields[1] != "rating" ||
      fields[2] != "text")
    throw std::runtime_error(source + ": expected header 'id,rating,text'");
  size_t row = 1;
  while (reader.next(fields)) {
    ++row;
    if (fields.size() == 1 && fields[0].empty()) continue;  // trailing newline
    if (fields.size() != 3)
      throw std::runtime_error(source + ": row " + std::to_string(row) +
                               ": expected 3 fields, got " +
                               std::to_string(fields.size()));
    Review r;
    r.id = fields[0];
    if (!detail::parse_rating(fields[1], r.rating))
      throw std::runtime_error(source + ": row " + std::to_string(row) +
                               ": unparseable rating '" + fields[1] + "'");
    r.text = fields[2];
    add_review(rs, std::move(r), row, warn);
  }
  return rs;
}

inline ReviewSet load_jsonl(std::istream& in, const std::string& source,
                            std::ostream* warn) {
  ReviewSet rs;
  rs.source = source;
  std::string line;
  size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error(source + ": row " + std::to_string(row) + ": " +
                               e.what());
    }
    if (!j.contains("id") || !j.contains("rating") || !j.contains("text"))
      throw std::runtime_error(source + ": row " + std::to_string(row) +
                               ": missing id/rating/text key");
    Review r;
    r.id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
    if (!j["rating"].is_number_integer())
      throw std::runtime_error(source + ": row " + std::to_string(row) +
                               ": rating is not an integer");
    r.rating = j["rating"].get<int>();
    r.text = j["text"].get<std::string>();
    add_review(rs, std::move(r), row, warn);
  }
  return rs;
}

}  // namespace detail

/// Loads reviews from a CSV (header id,rating,text) or JSONL file.
/// Rows with ratings outside 1..5 are skipped with a warning; structurally
/// malformed rows are hard errors naming the row.
inline ReviewSet load_reviews(const std::string& path, InputFormat format,
                              std::ostream* warn = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return format == InputFormat::Csv ? detail::load_csv(in, path, warn)
                                    : detail::load_jsonl(in, path, warn);
}

/// Keeps reviews whose rating lies in [min_stars, max_stars], order preserved.
inline ReviewSet filter_by_rating(const ReviewSet& rs, int min_stars,
                                  int max_stars) {
  if (min_stars < 1 || max_stars > 5 || min_stars > max_stars)
    throw std::invalid_argument("inverted rating bounds");
  ReviewSet out;
  out.source = rs.source;
  for (const Review& r : rs.reviews)
    if (r.rating >= min_stars && r.rating <= max_stars) out.reviews.push_back(r);
  return out;
}

}  // namespace cmine
