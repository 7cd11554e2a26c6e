#ifndef DELTAPROP_CONFIG_HPP
#define DELTAPROP_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

namespace deltaprop::config {

/// Flat "key = value" run configuration with [section] headers.
/// Keys are stored as "section.key"; keys before any header have no
/// section prefix.  Ordering is canonical (sorted) so that
/// parse -> serialize -> parse is the identity.
class RunConfig {
 public:
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);
  std::string serialize() const;

  bool has(const std::string& key) const;
  const std::string& str(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;

  void set(const std::string& key, const std::string& value);

  /// Rejects any key not in `allowed`, naming the offender.
  void validate_keys(const std::vector<std::string>& allowed) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace deltaprop::config

#endif
