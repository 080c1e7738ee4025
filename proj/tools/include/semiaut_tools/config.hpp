#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "semiaut/circle.hpp"

namespace semiaut::tools {

enum class KnobType { integer, real, boolean, text, real_list, circle, circle_list };

/// A circle written as [x, y, r].
using CircleTriple = std::array<double, 3>;
using KnobValue = std::variant<std::int64_t, double, bool, std::string, std::vector<double>, CircleTriple,
                               std::vector<CircleTriple>>;

struct KnobSpec {
  std::string section;
  std::string key;
  KnobType type = KnobType::integer;
  KnobValue fallback;
  std::string doc;
  /// integer resolutions (grid sizes, node and probe counts) are halved by --quick, down to `floor`
  bool resolution = false;
  std::int64_t floor = 1;
};

/// All knobs of one subcommand section plus the shared `run` section.
const std::vector<KnobSpec>& knob_schema();
std::vector<std::string> schema_sections();
/// Human-readable table of every knob, its default and its meaning.
std::string describe_schema();

/// Validation failure; `line` is 1-based, 0 when no location applies.
class ConfigError : public std::exception {
 public:
  ConfigError(std::string file, int line, std::string msg);
  const char* what() const noexcept override { return text_.c_str(); }
  int line() const { return line_; }

 private:
  int line_;
  std::string text_;
};

/// Effective configuration: every schema knob holds its default or the value from the file.
class ExperimentConfig {
 public:
  ExperimentConfig();

  /// Parses YAML text in which every top-level key is a section of key/value pairs.
  /// Unknown sections or keys and type mismatches raise ConfigError with the offending line.
  static ExperimentConfig parse(const std::string& text, const std::string& source = "<config>");
  static ExperimentConfig load(const std::string& path);

  void set_quick(bool quick) { quick_ = quick; }
  bool quick() const { return quick_; }

  std::int64_t integer(const std::string& section, const std::string& key) const;
  double real(const std::string& section, const std::string& key) const;
  bool boolean(const std::string& section, const std::string& key) const;
  const std::string& text(const std::string& section, const std::string& key) const;
  const std::vector<double>& real_list(const std::string& section, const std::string& key) const;
  Circle circle(const std::string& section, const std::string& key) const;
  std::vector<Circle> circle_list(const std::string& section, const std::string& key) const;
  /// true when the value came from the file rather than the default
  bool is_set(const std::string& section, const std::string& key) const;

  /// "key = value" lines for every knob of the section, after --quick scaling.
  std::vector<std::string> effective(const std::string& section) const;

 private:
  const KnobValue& value(const std::string& section, const std::string& key, KnobType type) const;

  std::map<std::string, KnobValue> values_;
  std::map<std::string, bool> set_;
  bool quick_ = false;
};

std::string format_knob(const KnobValue& v);

}  // namespace semiaut::tools
