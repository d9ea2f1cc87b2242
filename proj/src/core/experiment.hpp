#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gir {

struct ConfigError : std::runtime_error {
  int line;
  ConfigError(const std::string& msg, int line_no)
      : std::runtime_error(msg), line(line_no) {}
};

// Line-oriented `key = value` experiment description. `#` starts a comment
// and `[section]` prefixes subsequent keys with `section.`. Unknown keys are
// rejected with their line number; defaults are applied per experiment kind
// and echoed into the output provenance header.
class ExperimentConfig {
 public:
  static ExperimentConfig parse(const std::string& text);

  const std::string& kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }

  std::string get_string(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  double get_double(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<std::int64_t> get_int_list(const std::string& key) const;
  std::vector<std::string> get_string_list(const std::string& key) const;

  // Canonical emission: sorted `key = value` lines with defaults applied.
  // Reparsing the canonical form yields an equal config.
  std::string canonical_text() const;
  std::uint64_t hash() const;

  bool operator==(const ExperimentConfig& other) const {
    return values_ == other.values_;
  }

 private:
  std::string kind_;
  std::uint64_t seed_ = 0;
  std::map<std::string, std::string> values_;
};

// Runs the experiment and writes its CSV outputs; paths come from the config.
void run_experiment(const ExperimentConfig& config, int workers = 1);

int env_worker_count();

}  // namespace gir
