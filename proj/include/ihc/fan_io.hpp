#pragma once

// Fan files: a JSON object {"name", "n", "rays", "max_cones"} holding integers
// only. Ray coordinates are read at arbitrary precision.

#include "ihc/catalog.hpp"
#include "ihc/errors.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"

namespace ihc {

namespace detail {

struct NumberToken {
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

inline std::string position(std::size_t line, std::size_t column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

/// Numeric tokens outside strings, in document order.
inline std::vector<NumberToken> scan_numbers(const std::string& text) {
  std::vector<NumberToken> out;
  std::size_t line = 1, col = 1;
  bool in_string = false, escaped = false;
  for (std::size_t i = 0; i < text.size();) {
    char c = text[i];
    if (in_string) {
      if (escaped)
        escaped = false;
      else if (c == '\\')
        escaped = true;
      else if (c == '"')
        in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      NumberToken tok{"", line, col};
      while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '-' ||
                                 text[i] == '+' || text[i] == '.' || text[i] == 'e' || text[i] == 'E')) {
        tok.text += text[i++];
        ++col;
      }
      out.push_back(std::move(tok));
      continue;
    }
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }
  return out;
}

using Json = nlohmann::ordered_json;

inline void index_numbers(const Json& j, std::map<const Json*, std::size_t>& index, std::size_t& next) {
  if (j.is_number()) {
    index[&j] = next++;
  } else if (j.is_array() || j.is_object()) {
    for (const auto& child : j) index_numbers(child, index, next);
  }
}

class FanReader {
 public:
  explicit FanReader(const std::string& text) : tokens_(scan_numbers(text)) {
    try {
      doc_ = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      auto [line, col] = line_column(text, e.byte);
      std::string what = e.what();
      auto cut = what.find("syntax error");
      throw ParseError(position(line, col) + ": " + (cut == std::string::npos ? what : what.substr(cut)));
    }
    std::size_t next = 0;
    index_numbers(doc_, index_, next);
    if (next != tokens_.size()) throw ParseError("could not match numeric tokens to the document");
  }

  FanSpec read() const {
    if (!doc_.is_object()) throw ParseError("fan file must be a JSON object");
    for (auto it = doc_.begin(); it != doc_.end(); ++it)
      if (it.key() != "name" && it.key() != "n" && it.key() != "rays" && it.key() != "max_cones")
        throw ParseError("unknown field '" + it.key() + "'");
    FanSpec s;
    if (doc_.contains("name")) {
      if (!doc_["name"].is_string()) throw ParseError("field 'name' must be a string");
      s.name = doc_["name"].get<std::string>();
    }
    s.n = static_cast<int>(small_integer(field("n"), 1, 64, "n"));
    const auto& rays = field("rays");
    if (!rays.is_array()) throw ParseError("field 'rays' must be a list of integer vectors");
    for (const auto& r : rays) {
      if (!r.is_array()) throw ParseError("each ray must be a list of integers");
      IntVector v;
      for (const auto& x : r) v.push_back(integer(x, "ray coordinate"));
      s.rays.push_back(std::move(v));
    }
    const auto& cones = field("max_cones");
    if (!cones.is_array()) throw ParseError("field 'max_cones' must be a list of ray-index lists");
    for (const auto& c : cones) {
      if (!c.is_array()) throw ParseError("each cone must be a list of ray indices");
      RaySet rs;
      for (const auto& x : c) rs.push_back(static_cast<std::size_t>(small_integer(x, 0, 1L << 30, "ray index")));
      s.max_cones.push_back(std::move(rs));
    }
    return s;
  }

 private:
  static std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  const Json& field(const char* key) const {
    if (!doc_.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return doc_[key];
  }

  const NumberToken* token(const Json& j) const {
    auto it = index_.find(&j);
    return it == index_.end() ? nullptr : &tokens_[it->second];
  }

  Integer integer(const Json& j, const char* what) const {
    const auto* tok = token(j);
    if (!tok) throw ParseError(std::string(what) + " must be an integer");
    if (tok->text.find_first_of(".eE+") != std::string::npos)
      throw ParseError(position(tok->line, tok->column) + ": " + what + " '" + tok->text +
                       "' is not an integer; fan files hold integers only");
    return Integer(tok->text);
  }

  long small_integer(const Json& j, long lo, long hi, const char* what) const {
    Integer v = integer(j, what);
    if (v < lo || v > hi) {
      const auto* tok = token(j);
      throw ParseError(position(tok->line, tok->column) + ": " + what + " " + v.get_str() + " out of range");
    }
    return v.get_si();
  }

  std::vector<NumberToken> tokens_;
  Json doc_;
  std::map<const Json*, std::size_t> index_;
};

}  // namespace detail

inline FanSpec parse_fan_spec(const std::string& text) { return detail::FanReader(text).read(); }

/// Deterministic layout: one ray and one cone per line.
inline std::string emit_fan(const FanSpec& s) {
  std::ostringstream os;
  os << "{\n";
  if (!s.name.empty()) os << "  \"name\": " << nlohmann::json(s.name).dump() << ",\n";
  os << "  \"n\": " << s.n << ",\n  \"rays\": [\n";
  for (std::size_t i = 0; i < s.rays.size(); ++i)
    os << "    [" << join(s.rays[i]) << "]" << (i + 1 < s.rays.size() ? "," : "") << "\n";
  os << "  ],\n  \"max_cones\": [\n";
  for (std::size_t i = 0; i < s.max_cones.size(); ++i)
    os << "    [" << join(s.max_cones[i]) << "]" << (i + 1 < s.max_cones.size() ? "," : "") << "\n";
  os << "  ]\n}\n";
  return os.str();
}

inline FanSpec spec_of(const Fan& f) { return {f.name(), f.dim(), f.rays(), f.maximal_ray_sets()}; }

}  // namespace ihc
