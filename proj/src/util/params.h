#pragma once

// Parsing of "family:key=value,key=value" selector strings.

#include "osd/errors.h"

#include <cmath>
#include <map>
#include <string>
#include <utility>

namespace osd::detail {

struct Selector {
  std::string family;
  std::map<std::string, std::string> params;

  bool has(const std::string& key) const { return params.count(key) != 0; }

  double number(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw InputError("missing parameter '" + key + "' in '" + family + "'");
    return parse_number(it->second, key);
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  static double parse_number(const std::string& text, const std::string& key) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v)) {
      throw InputError("parameter '" + key + "' is not a finite number: '" + text + "'");
    }
    return v;
  }
};

inline Selector parse_selector(const std::string& text) {
  Selector s;
  const auto colon = text.find(':');
  s.family = text.substr(0, colon);
  if (s.family.empty()) throw InputError("empty selector");
  if (colon == std::string::npos) return s;
  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = rest.find(',', pos);
    const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw InputError("expected key=value in '" + text + "', got '" + item + "'");
      }
      s.params[item.substr(0, eq)] = item.substr(eq + 1);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return s;
}

}  // namespace osd::detail
