#pragma once

// Named polynomial lists, one `name: expression` per line.
//
// Used for transcribed reference data. Lines that fail to parse are kept with
// their error instead of aborting the load, so a defective entry can be
// reported by name.

#include <vse/poly.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vse {

struct NamedPolynomial {
  std::string name;
  std::string text;
  std::optional<Polynomial> value;
  std::string error;
  std::size_t line = 0;
};

struct NamedPolynomialList {
  std::vector<NamedPolynomial> entries;

  std::vector<Polynomial> parsed() const {
    std::vector<Polynomial> out;
    for (const auto& e : entries)
      if (e.value) out.push_back(*e.value);
    return out;
  }
  std::vector<std::string> parsed_names() const {
    std::vector<std::string> out;
    for (const auto& e : entries)
      if (e.value) out.push_back(e.name);
    return out;
  }
  std::vector<const NamedPolynomial*> failures() const {
    std::vector<const NamedPolynomial*> out;
    for (const auto& e : entries)
      if (!e.value) out.push_back(&e);
    return out;
  }
  const NamedPolynomial* find(std::string_view name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
};

inline NamedPolynomialList parse_named_polynomials(std::string_view text) {
  NamedPolynomialList out;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 'name: polynomial'");
    NamedPolynomial e;
    e.name = std::string(line.substr(0, colon));
    e.text = std::string(line.substr(colon + 1));
    e.line = line_no;
    try {
      e.value = parse(e.text);
    } catch (const ParseError& err) {
      e.error = err.what();
    }
    out.entries.push_back(std::move(e));
    if (end == text.size()) break;
  }
  return out;
}

inline NamedPolynomialList load_named_polynomials(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_named_polynomials(buf.str());
}

}  // namespace vse
