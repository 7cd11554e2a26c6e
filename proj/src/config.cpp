#include "deltaprop/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace deltaprop::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::runtime_error("config: malformed section header at line " +
                                 std::to_string(lineno));
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config: expected key = value at line " +
                               std::to_string(lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error("config: empty key at line " + std::to_string(lineno));
    }
    const std::string full = section.empty() ? key : section + "." + key;
    if (cfg.entries_.count(full)) {
      throw std::runtime_error("config: duplicate key " + full);
    }
    cfg.entries_[full] = value;
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string RunConfig::serialize() const {
  // Canonical form: sectionless keys first, then sections in sorted order.
  std::map<std::string, std::map<std::string, std::string>> by_section;
  for (const auto& [full, value] : entries_) {
    const auto dot = full.find('.');
    const std::string section = dot == std::string::npos ? "" : full.substr(0, dot);
    const std::string key = dot == std::string::npos ? full : full.substr(dot + 1);
    by_section[section][key] = value;
  }
  std::ostringstream out;
  bool first = true;
  for (const auto& [section, keys] : by_section) {
    if (!section.empty()) {
      if (!first) out << '\n';
      out << '[' << section << "]\n";
    }
    for (const auto& [key, value] : keys) out << key << " = " << value << '\n';
    first = false;
  }
  return out.str();
}

bool RunConfig::has(const std::string& key) const { return entries_.count(key) > 0; }

const std::string& RunConfig::str(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw std::runtime_error("config: missing key " + key);
  }
  return it->second;
}

double RunConfig::number(const std::string& key) const {
  const std::string& v = str(key);
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != v.size()) {
    throw std::runtime_error("config: key " + key + " is not a number: " + v);
  }
  return d;
}

int RunConfig::integer(const std::string& key) const {
  const double d = number(key);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d) {
    throw std::runtime_error("config: key " + key + " is not an integer");
  }
  return i;
}

double RunConfig::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

void RunConfig::validate_keys(const std::vector<std::string>& allowed) const {
  for (const auto& [key, value] : entries_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw std::runtime_error("config: unknown key " + key);
    }
  }
}

}  // namespace deltaprop::config
