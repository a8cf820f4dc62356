#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csc/simulate.hpp"

namespace csc {

// Parse error with file:line diagnostics.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One parsed right-hand side: a number (optionally written with a `pi`
// suffix, e.g. `2pi`), a bare word, a boolean, or a bracketed list.
struct ConfigValue {
  enum class Kind { Number, Word, Boolean, List };
  Kind kind = Kind::Number;
  double number = 0.0;
  std::string word;
  bool boolean = false;
  std::vector<ConfigValue> list;
  int line = 0;
};

// Flat `key = value` file with `#` comments.
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_text(const std::string& text, const std::string& name);

  bool has(const std::string& key) const;
  const ConfigValue& at(const std::string& key) const;  // throws if missing

  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  long long integer(const std::string& key) const;
  long long integer_or(const std::string& key, long long fallback) const;
  bool boolean_or(const std::string& key, bool fallback) const;
  std::string word(const std::string& key) const;
  std::vector<double> number_list(const std::string& key) const;

  const std::string& name() const { return name_; }
  [[noreturn]] void fail(const std::string& key, const std::string& msg) const;

 private:
  std::string name_;
  std::map<std::string, ConfigValue> values_;
};

struct SweepSpec {
  enum class Parameter { Mu, Mu2, SampleCount };
  Parameter parameter = Parameter::Mu;
  std::vector<double> values;      // ascending
  RunConfig base;
  std::vector<std::uint64_t> seeds;

  void validate() const;
};

// Optional command-line overrides applied on top of a parsed config.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> mu;
  std::optional<double> mu2;
  std::optional<int> sample_count;
  std::optional<int> periods;
  bool warm_start = false;  // only switches the flag on
};

RunConfig load_run_config(const ConfigFile& file, const Overrides& overrides = {});
SweepSpec load_sweep_spec(const ConfigFile& file, const Overrides& overrides = {});

// Canonical `key = value` lines reproducing the resolved configuration;
// feeding them back through the parser yields the identical RunConfig.
std::vector<std::string> config_echo_lines(const RunConfig& cfg);

std::string controller_kind_name(ControllerKind kind);

}  // namespace csc
