#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "wedgemax/multivector.hpp"

namespace wedgemax {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits, so every double round-trips bit for bit.
inline std::string format_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("format_double: non-finite value");
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

namespace detail {

inline void write_json(const Json& j, std::ostream& os, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* newline = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{" << newline;
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << "," << newline;
        first = false;
        os << pad << Json(key).dump() << (indent > 0 ? ": " : ":");
        write_json(value, os, indent, depth + 1);
      }
      os << newline << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[" << newline;
      bool first = true;
      for (const auto& value : j) {
        if (!first) os << "," << newline;
        first = false;
        os << pad;
        write_json(value, os, indent, depth + 1);
      }
      os << newline << close_pad << "]";
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace detail

/// Deterministic rendering: insertion-ordered keys and fixed 17-digit floats.
inline void write_json(const Json& j, std::ostream& os, int indent = 2) {
  detail::write_json(j, os, indent, 0);
}

inline std::string to_json_string(const Json& j, int indent = 2) {
  std::ostringstream os;
  write_json(j, os, indent);
  return os.str();
}

inline Json to_json(const RealMultivector& x) {
  Json terms = Json::array();
  for (const auto& [index, coeff] : x.terms()) {
    Json indices = Json::array();
    for (int i : index) indices.push_back(i);
    terms.push_back(Json{{"indices", std::move(indices)}, {"coeff", coeff}});
  }
  return Json{{"n", x.n()}, {"degree", x.degree()}, {"terms", std::move(terms)}};
}

inline RealMultivector multivector_from_json(const Json& j) {
  auto fail = [](const std::string& where, const std::string& what) -> ParseError {
    return ParseError("multivector " + where + ": " + what);
  };
  if (!j.is_object()) throw fail("root", "expected an object");
  for (const char* key : {"n", "degree", "terms"}) {
    if (!j.contains(key)) throw fail("root", std::string("missing \"") + key + "\"");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long>() < 0) {
    throw fail("n", "expected a non-negative integer");
  }
  if (!j["degree"].is_number_integer() || j["degree"].get<long>() < 0) {
    throw fail("degree", "expected a non-negative integer");
  }
  if (!j["terms"].is_array()) throw fail("terms", "expected an array");
  const int n = j["n"].get<int>();
  const int degree = j["degree"].get<int>();

  RealMultivector::Terms terms;
  for (std::size_t t = 0; t < j["terms"].size(); ++t) {
    const Json& term = j["terms"][t];
    const std::string where = "terms[" + std::to_string(t) + "]";
    if (!term.is_object() || !term.contains("indices") || !term.contains("coeff")) {
      throw fail(where, "expected {\"indices\": [...], \"coeff\": number}");
    }
    if (!term["indices"].is_array()) throw fail(where + ".indices", "expected an array");
    if (!term["coeff"].is_number()) throw fail(where + ".coeff", "expected a number");
    const Json& raw = term["indices"];
    if (static_cast<int>(raw.size()) != degree) {
      throw fail(where + ".indices", "has " + std::to_string(raw.size()) + " entries, degree is " +
                                         std::to_string(degree));
    }
    std::vector<int> indices;
    for (std::size_t p = 0; p < raw.size(); ++p) {
      const std::string at = where + ".indices[" + std::to_string(p) + "]";
      if (!raw[p].is_number_integer()) throw fail(at, "expected an integer");
      const long value = raw[p].get<long>();
      if (value < 1 || value > 2L * n) {
        throw fail(at, "index " + std::to_string(value) + " outside 1.." + std::to_string(2 * n));
      }
      if (!indices.empty() && indices.back() >= value) {
        throw fail(at, "indices must be strictly increasing");
      }
      indices.push_back(static_cast<int>(value));
    }
    MultiIndex index(std::move(indices));
    if (terms.contains(index)) throw fail(where, "duplicate indices " + index.to_string());
    terms.emplace(std::move(index), term["coeff"].get<double>());
  }
  return RealMultivector(n, degree, std::move(terms));
}

inline RealMultivector parse_multivector(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("multivector: malformed JSON: ") + e.what());
  }
  return multivector_from_json(j);
}

inline std::string serialize_multivector(const RealMultivector& x, int indent = 2) {
  return to_json_string(to_json(x), indent);
}

}  // namespace wedgemax
