#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmine::csv {

// RFC 4180 reader: quoted fields, doubled-quote escapes, CRLF or LF rows.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Reads one record. Returns false on clean EOF.
  bool next(std::vector<std::string>& fields) {
    fields.clear();
    int c = in_.get();
    if (c == EOF) return false;
    std::string field;
    bool quoted = false;
    while (true) {
      if (c == EOF) {
        fields.push_back(std::move(field));
        return true;
      }
      if (quoted) {
        if (c == '"') {
          int peek = in_.peek();
          if (peek == '"') {
            in_.get();
            field.push_back('"');
          } else {
            quoted = false;
          }
        } else {
          field.push_back(static_cast<char>(c));
        }
      } else if (c == '"' && field.empty()) {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else if (c == '\n') {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        fields.push_back(std::move(field));
        return true;
      } else {
        field.push_back(static_cast<char>(c));
      }
      c = in_.get();
    }
  }

 private:
  std::istream& in_;
};

inline std::string quote(const std::string& field) {
  bool needs = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace cmine::csv
