#pragma once

#include "ltmor/fem.hpp"
#include "ltmor/pod.hpp"
#include "ltmor/wavelet.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltmor {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Flat `section.key -> value` view of an INI-style file:
///
///   [mesh]
///   n = 32          # comments start with '#'
///
/// Any key may be overridden through the environment as
/// LTMOR_<SECTION>_<KEY> (upper case, '.' replaced by '_').
class RawConfig {
 public:
  static RawConfig parse(const std::string& text, const std::string& origin = "<string>");
  static RawConfig load(const std::filesystem::path& path);

  /// Applies LTMOR_* overrides for every known key and every key in the file.
  void apply_env_overrides(const std::vector<std::string>& known_keys,
                           const std::string& prefix = "LTMOR_");

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::string& require(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Parses a real number; accepts plain literals and products/quotients with
/// `pi`, e.g. "2*pi", "5pi/2", "pi".
double parse_real(const std::string& text);
/// Comma lists and inclusive ranges "start:stop[:step]", e.g. "2:24:2".
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

struct ExperimentConfig {
  int mesh_n = 32;

  bool coefficient_identity = true;
  std::vector<CoefficientField::Block> coefficient_blocks;

  SpatialSource source;
  RickerParams wavelet;

  std::optional<double> mu;   // empty -> default rule
  std::optional<double> eta;  // empty -> mu/2
  int M = 40;
  std::vector<int> study_M;   // defaults to {M}

  std::vector<int> R_values;
  GramChoice gram = GramChoice::stiffness;
  SvdMethod svd = SvdMethod::direct;

  double T = 10.0;
  int steps = 2000;
  double beta = 0.25;
  double gamma = 0.5;

  std::filesystem::path out_dir = "out";
  int stride = 1;
  std::vector<double> field_times;
  std::string matrix_format = "binary";

  std::uint64_t seed = 20240601;
  int workers = 1;

  double resolved_mu() const;
  double resolved_eta() const;
  CoefficientField coefficient() const;
  int max_R() const;

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

/// Every key the experiment understands.
const std::vector<std::string>& known_config_keys();

/// Keys without a default; missing ones raise ConfigError.
const std::vector<std::string>& required_config_keys();

ExperimentConfig parse_experiment_config(const RawConfig& raw);

/// Serializes the resolved configuration (used in run metadata).
std::string describe(const ExperimentConfig& cfg);

}  // namespace ltmor
