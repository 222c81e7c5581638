#pragma once

// Shaded link diagrams in X1/X2 product form.
//
// A crossing lists its four edge-ends in rotational order, so that
// (a,b)+(c,d) and (a,d)+(b,c) are the two planar smoothings and (a,c)+(b,d)
// is the virtual transition. The kind (X1 shaded, X2 white) is input data.

#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vse {

enum class CrossingKind : std::uint8_t { X1, X2 };

inline std::string_view to_string(CrossingKind k) { return k == CrossingKind::X1 ? "X1" : "X2"; }

struct Crossing {
  CrossingKind kind = CrossingKind::X1;
  std::array<std::string, 4> ends;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

struct LinkDiagram {
  std::vector<Crossing> crossings;
  std::size_t free_loops = 0;

  std::size_t crossing_count() const { return crossings.size(); }
  friend bool operator==(const LinkDiagram&, const LinkDiagram&) = default;
};

class DiagramParseError : public std::runtime_error {
 public:
  DiagramParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

class InvalidDiagram : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_label_token(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

/// Parses the line-oriented link format: `X1 a b c d`, `X2 a b c d`, `loop`, `# ...`.
inline LinkDiagram parse_link(std::string_view text) {
  LinkDiagram d;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    struct Token {
      std::string_view text;
      std::size_t column;
    };
    std::vector<Token> tokens;
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      tokens.push_back({line.substr(i, j - i), i + 1});
      i = j;
    }
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }

    const auto& head = tokens.front();
    if (head.text == "loop") {
      if (tokens.size() != 1)
        throw DiagramParseError("'loop' takes no arguments", line_no, tokens[1].column);
      ++d.free_loops;
    } else if (head.text == "X1" || head.text == "X2") {
      if (tokens.size() != 5)
        throw DiagramParseError("a crossing needs exactly 4 labels", line_no,
                                tokens.size() > 5 ? tokens[5].column : line.size() + 1);
      Crossing c;
      c.kind = head.text == "X1" ? CrossingKind::X1 : CrossingKind::X2;
      for (std::size_t i = 0; i < 4; ++i) {
        const auto& tok = tokens[i + 1];
        if (!is_label_token(tok.text))
          throw DiagramParseError("invalid label '" + std::string(tok.text) + "'", line_no,
                                  tok.column);
        c.ends[i] = std::string(tok.text);
      }
      d.crossings.push_back(std::move(c));
    } else {
      throw DiagramParseError("unknown record '" + std::string(head.text) + "'", line_no,
                              head.column);
    }
    if (end == text.size()) break;
  }
  return d;
}

inline LinkDiagram load_link(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open link file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_link(buf.str());
}

inline std::string format_link(const LinkDiagram& d) {
  std::string out;
  for (const auto& c : d.crossings) {
    out += to_string(c.kind);
    for (const auto& e : c.ends) out += " " + e;
    out += "\n";
  }
  for (std::size_t i = 0; i < d.free_loops; ++i) out += "loop\n";
  return out;
}

struct LabelIssue {
  std::string label;
  std::size_t occurrences = 0;
};

struct ValidationReport {
  std::vector<LabelIssue> issues;
  bool empty_link = false;

  bool ok() const { return issues.empty() && !empty_link; }

  std::string describe() const {
    if (ok()) return "ok";
    std::string s;
    if (empty_link) s = "diagram has no crossings and no loops";
    for (const auto& i : issues) {
      if (!s.empty()) s += "; ";
      s += "label '" + i.label + "' occurs " + std::to_string(i.occurrences) + " time(s)";
    }
    return s;
  }
};

/// Every edge label must occur exactly twice across all crossing slots.
inline ValidationReport validate(const LinkDiagram& d) {
  std::map<std::string, std::size_t> counts;
  for (const auto& c : d.crossings)
    for (const auto& e : c.ends) ++counts[e];
  ValidationReport report;
  for (const auto& [label, n] : counts)
    if (n != 2) report.issues.push_back({label, n});
  report.empty_link = d.crossings.empty() && d.free_loops == 0;
  return report;
}

inline void require_valid(const LinkDiagram& d) {
  auto report = validate(d);
  if (!report.ok()) throw InvalidDiagram("invalid diagram: " + report.describe());
}

/// Labels replaced by dense indices; `ends[i][j]` indexes into `labels`.
struct IndexedDiagram {
  std::vector<CrossingKind> kinds;
  std::vector<std::array<std::uint32_t, 4>> ends;
  std::vector<std::string> labels;
  std::size_t free_loops = 0;
};

inline IndexedDiagram index_labels(const LinkDiagram& d) {
  IndexedDiagram out;
  std::unordered_map<std::string, std::uint32_t> ids;
  auto id_of = [&](const std::string& label) {
    auto [it, inserted] = ids.try_emplace(label, static_cast<std::uint32_t>(out.labels.size()));
    if (inserted) out.labels.push_back(label);
    return it->second;
  };
  for (const auto& c : d.crossings) {
    out.kinds.push_back(c.kind);
    out.ends.push_back({id_of(c.ends[0]), id_of(c.ends[1]), id_of(c.ends[2]), id_of(c.ends[3])});
  }
  out.free_loops = d.free_loops;
  return out;
}

}  // namespace vse
