#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hermheat/errors.hpp"

namespace hermheat {

// Flat key = value configuration text ('#' comments). Unknown keys are
// rejected by each experiment against its declared key set.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_text(const std::string& text);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  // Accepts "inf" for L^infinity exponents.
  double get_exponent(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;

  void restrict_keys(const std::vector<std::string>& allowed) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

struct ExperimentResult {
  int exit_code = 0;  // 0 = all assertions passed, 1 = assertion failure
  nlohmann::ordered_json summary;
  std::vector<std::pair<std::string, std::string>> files;  // (name, contents)
  std::vector<std::string> log;
};

const std::vector<std::string>& experiment_names();

// Runs one named experiment. Invalid configuration throws ConfigError (the
// CLI maps it to exit code 2) before any output is produced.
ExperimentResult run_experiment(const std::string& name, const KeyValueConfig& cfg,
                                std::uint64_t seed);

// Writes result files plus <name>_summary.json into out_dir (created if
// needed).
void write_result_files(const ExperimentResult& result, const std::string& out_dir);

}  // namespace hermheat
