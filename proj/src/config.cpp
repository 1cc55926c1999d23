#include "ltmor/config.hpp"

#include "ltmor/io.hpp"
#include "ltmor/snapshots.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace ltmor {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string env_name(const std::string& prefix, const std::string& key) {
  std::string name = prefix;
  for (char c : key) {
    name += (c == '.') ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return name;
}

double parse_plain(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return v;
}

// factor := number | number "pi" | "pi"
double parse_factor(std::string text) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty number");
  if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
    const std::string coeff = trim(text.substr(0, text.size() - 2));
    return (coeff.empty() ? 1.0 : parse_plain(coeff)) * std::numbers::pi;
  }
  return parse_plain(text);
}

template <typename F>
auto with_key(const std::string& key, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(key, "invalid value for '" + key + "': " + e.what());
  }
}

}  // namespace

RawConfig RawConfig::parse(const std::string& text, const std::string& origin) {
  RawConfig cfg;
  std::stringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("", origin + ":" + std::to_string(lineno) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string full = section.empty() ? key : section + "." + key;
    cfg.values_[full] = trim(line.substr(eq + 1));
  }
  return cfg;
}

RawConfig RawConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

void RawConfig::apply_env_overrides(const std::vector<std::string>& known_keys,
                                    const std::string& prefix) {
  std::vector<std::string> keys = known_keys;
  for (const auto& [k, v] : values_) keys.push_back(k);
  for (const auto& key : keys) {
    if (const char* env = std::getenv(env_name(prefix, key).c_str())) {
      values_[key] = env;
    }
  }
}

const std::string& RawConfig::require(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(key, "missing required config key '" + key + "'");
  return it->second;
}

std::optional<std::string> RawConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double parse_real(const std::string& text) {
  // product/quotient chain of factors, left to right
  const std::string s = trim(text);
  double value = 1.0;
  char op = '*';
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    // '*' and '/' separate factors; skip exponent markers like 1e-3.
    if (i == s.size() || s[i] == '*' || s[i] == '/') {
      const double f = parse_factor(s.substr(start, i - start));
      value = (op == '*') ? value * f : value / f;
      if (i < s.size()) op = s[i];
      start = i + 1;
    }
  }
  return value;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) {
    if (item.find(':') != std::string::npos) {
      const auto parts = split(item, ':');
      if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("bad range '" + item + "'");
      const int a = static_cast<int>(parse_plain(parts[0]));
      const int b = static_cast<int>(parse_plain(parts[1]));
      const int step = parts.size() == 3 ? static_cast<int>(parse_plain(parts[2])) : 1;
      if (step <= 0) throw std::invalid_argument("range step must be positive");
      for (int v = a; v <= b; v += step) out.push_back(v);
    } else {
      const double v = parse_plain(item);
      if (v != static_cast<int>(v)) throw std::invalid_argument("not an integer: '" + item + "'");
      out.push_back(static_cast<int>(v));
    }
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_real(item));
  return out;
}

double ExperimentConfig::resolved_mu() const { return mu ? *mu : default_mu(wavelet.alpha); }

double ExperimentConfig::resolved_eta() const { return eta ? *eta : default_eta(resolved_mu()); }

CoefficientField ExperimentConfig::coefficient() const {
  if (coefficient_identity) return CoefficientField::identity();
  return CoefficientField::piecewise_constant(coefficient_blocks);
}

int ExperimentConfig::max_R() const {
  return R_values.empty() ? 0 : *std::max_element(R_values.begin(), R_values.end());
}

void ExperimentConfig::validate() const {
  if (mesh_n < 2) throw ConfigError("mesh.n", "mesh.n must be >= 2");
  if (!(source.zeta > 0.0)) throw ConfigError("source.zeta", "source.zeta must be positive");
  if (!(wavelet.alpha > 0.0)) throw ConfigError("wavelet.alpha", "wavelet.alpha must be positive");
  if (!(wavelet.t0 > 0.0)) throw ConfigError("wavelet.t0", "wavelet.t0 must be positive");
  if (!(resolved_mu() > 0.0)) throw ConfigError("sampling.mu", "sampling.mu must be positive");
  const double e = resolved_eta();
  if (!(e > 0.0) || !(e < resolved_mu())) {
    throw ConfigError("sampling.eta", "sampling.eta must satisfy 0 < eta < mu");
  }
  if (M < 1) throw ConfigError("sampling.M", "sampling.M must be >= 1");
  for (int m : study_M) {
    if (m < 1) throw ConfigError("study.M", "study.M entries must be >= 1");
  }
  if (R_values.empty()) throw ConfigError("rom.R", "rom.R must list at least one dimension");
  for (int r : R_values) {
    if (r < 1) throw ConfigError("rom.R", "rom.R entries must be >= 1");
    if (r > 2 * M + 1) throw ConfigError("rom.R", "rom.R entries must not exceed 2M+1");
    for (int m : study_M) {
      if (r > 2 * m + 1) throw ConfigError("rom.R", "rom.R entries must not exceed 2M+1 for study.M");
    }
  }
  if (!(T > 0.0)) throw ConfigError("time.T", "time.T must be positive");
  if (steps < 1) throw ConfigError("time.steps", "time.steps must be >= 1");
  if (!(beta > 0.0)) throw ConfigError("time.beta", "time.beta must be positive");
  if (!(gamma > 0.0)) throw ConfigError("time.gamma", "time.gamma must be positive");
  if (stride < 1) throw ConfigError("output.stride", "output.stride must be >= 1");
  if (workers < 1) throw ConfigError("run.workers", "run.workers must be >= 1");
}

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "mesh.n",         "coefficient.type", "coefficient.blocks", "source.x0",
      "source.zeta",    "wavelet.alpha",    "wavelet.t0",         "sampling.mu",
      "sampling.eta",   "sampling.M",       "study.M",            "rom.R",
      "rom.gram",       "rom.svd",          "time.T",             "time.steps",
      "time.beta",      "time.gamma",       "output.dir",         "output.stride",
      "output.field_times", "output.matrix_format", "run.seed",   "run.workers",
  };
  return keys;
}

const std::vector<std::string>& required_config_keys() {
  static const std::vector<std::string> keys = {
      "mesh.n",      "source.x0",  "source.zeta", "wavelet.alpha", "wavelet.t0",
      "sampling.M",  "rom.R",      "time.T",      "time.steps",
  };
  return keys;
}

ExperimentConfig parse_experiment_config(const RawConfig& raw) {
  for (const auto& key : required_config_keys()) raw.require(key);
  for (const auto& [key, value] : raw.values()) {
    const auto& known = known_config_keys();
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(key, "unknown config key '" + key + "'");
    }
  }

  ExperimentConfig cfg;
  auto real = [&](const std::string& key) { return with_key(key, [&] { return parse_real(raw.require(key)); }); };
  auto integer = [&](const std::string& key) {
    return with_key(key, [&] {
      const double v = parse_plain(raw.require(key));
      if (v != static_cast<double>(static_cast<long long>(v))) throw std::invalid_argument("not an integer");
      return static_cast<int>(v);
    });
  };
  auto optional_real = [&](const std::string& key) -> std::optional<double> {
    const auto v = raw.get(key);
    if (!v || *v == "auto") return std::nullopt;
    return real(key);
  };

  cfg.mesh_n = integer("mesh.n");

  const std::string ctype = raw.get("coefficient.type").value_or("identity");
  if (ctype == "identity") {
    cfg.coefficient_identity = true;
  } else if (ctype == "blocks") {
    cfg.coefficient_identity = false;
    const std::string spec = raw.require("coefficient.blocks");
    cfg.coefficient_blocks = with_key("coefficient.blocks", [&] {
      std::vector<CoefficientField::Block> blocks;
      for (const auto& entry : split(spec, '|')) {
        std::stringstream ss(entry);
        std::vector<double> v;
        std::string tok;
        while (ss >> tok) v.push_back(parse_real(tok));
        if (v.size() != 7) throw std::invalid_argument("block needs 'x0 x1 y0 y1 a11 a12 a22'");
        CoefficientField::Block b{v[0], v[1], v[2], v[3], Eigen::Matrix2d()};
        b.value << v[4], v[5], v[5], v[6];
        blocks.push_back(b);
      }
      // Validates positivity.
      (void)CoefficientField::piecewise_constant(blocks);
      return blocks;
    });
  } else {
    throw ConfigError("coefficient.type", "coefficient.type must be identity or blocks");
  }

  const auto x0 = with_key("source.x0", [&] { return parse_real_list(raw.require("source.x0")); });
  if (x0.size() != 2) throw ConfigError("source.x0", "source.x0 needs two coordinates");
  cfg.source.center = Point2(x0[0], x0[1]);
  cfg.source.zeta = real("source.zeta");

  cfg.wavelet.alpha = real("wavelet.alpha");
  cfg.wavelet.t0 = real("wavelet.t0");

  cfg.mu = optional_real("sampling.mu");
  cfg.eta = optional_real("sampling.eta");
  cfg.M = integer("sampling.M");
  if (raw.has("study.M")) {
    cfg.study_M = with_key("study.M", [&] { return parse_int_list(raw.require("study.M")); });
  }
  if (cfg.study_M.empty()) cfg.study_M = {cfg.M};

  cfg.R_values = with_key("rom.R", [&] { return parse_int_list(raw.require("rom.R")); });
  if (auto g = raw.get("rom.gram")) cfg.gram = with_key("rom.gram", [&] { return gram_choice_from_string(*g); });
  if (auto s = raw.get("rom.svd")) {
    if (*s == "direct") cfg.svd = SvdMethod::direct;
    else if (*s == "gram") cfg.svd = SvdMethod::gram;
    else throw ConfigError("rom.svd", "rom.svd must be direct or gram");
  }

  cfg.T = real("time.T");
  cfg.steps = integer("time.steps");
  if (raw.has("time.beta")) cfg.beta = real("time.beta");
  if (raw.has("time.gamma")) cfg.gamma = real("time.gamma");

  if (auto d = raw.get("output.dir")) cfg.out_dir = *d;
  if (raw.has("output.stride")) cfg.stride = integer("output.stride");
  if (raw.has("output.field_times")) {
    cfg.field_times = with_key("output.field_times", [&] { return parse_real_list(raw.require("output.field_times")); });
  }
  if (auto f = raw.get("output.matrix_format")) {
    with_key("output.matrix_format", [&] { return io::matrix_format_from_string(*f); });
    cfg.matrix_format = *f;
  }
  if (raw.has("run.seed")) {
    cfg.seed = with_key("run.seed", [&] { return std::stoull(raw.require("run.seed")); });
  }
  if (raw.has("run.workers")) cfg.workers = integer("run.workers");

  cfg.validate();
  return cfg;
}

std::string describe(const ExperimentConfig& cfg) {
  std::ostringstream out;
  auto list = [](const auto& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      if constexpr (std::is_floating_point_v<std::decay_t<decltype(v[i])>>) {
        s += io::format_double(v[i]);
      } else {
        s += std::to_string(v[i]);
      }
    }
    return s;
  };
  out << "mesh.n=" << cfg.mesh_n << '\n'
      << "coefficient.type=" << (cfg.coefficient_identity ? "identity" : "blocks") << '\n'
      << "source.x0=" << io::format_double(cfg.source.center.x()) << ','
      << io::format_double(cfg.source.center.y()) << '\n'
      << "source.zeta=" << io::format_double(cfg.source.zeta) << '\n'
      << "wavelet.alpha=" << io::format_double(cfg.wavelet.alpha) << '\n'
      << "wavelet.t0=" << io::format_double(cfg.wavelet.t0) << '\n'
      << "sampling.mu=" << io::format_double(cfg.resolved_mu()) << '\n'
      << "sampling.eta=" << io::format_double(cfg.resolved_eta()) << '\n'
      << "sampling.M=" << cfg.M << '\n'
      << "study.M=" << list(cfg.study_M) << '\n'
      << "rom.R=" << list(cfg.R_values) << '\n'
      << "rom.gram=" << to_string(cfg.gram) << '\n'
      << "rom.svd=" << (cfg.svd == SvdMethod::direct ? "direct" : "gram") << '\n'
      << "time.T=" << io::format_double(cfg.T) << '\n'
      << "time.steps=" << cfg.steps << '\n'
      << "time.beta=" << io::format_double(cfg.beta) << '\n'
      << "time.gamma=" << io::format_double(cfg.gamma) << '\n'
      << "output.stride=" << cfg.stride << '\n'
      << "output.field_times=" << list(cfg.field_times) << '\n'
      << "output.matrix_format=" << cfg.matrix_format << '\n'
      << "run.seed=" << cfg.seed << '\n';
  return out.str();
}

}  // namespace ltmor
