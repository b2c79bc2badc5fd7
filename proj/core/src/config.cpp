#include "bohmlab/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bohmlab/errors.hpp"
#include "bohmlab/scenario.hpp"

namespace bohmlab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing garbage");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + v);
  }
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing garbage");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value for '" + key + "': " + v);
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: malformed section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section != "experiment" && section != "sweep" && section != "grid" &&
          section != "time")
        throw ConfigError("config: unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected 'key = value' at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string qual = section + "." + key;

    if (qual == "experiment.scenario") {
      cfg.scenario = value;
    } else if (qual == "experiment.output") {
      cfg.output = value;
    } else if (qual == "experiment.analyses") {
      cfg.analyses = split_list(value);
    } else if (qual == "experiment.workers") {
      cfg.workers = static_cast<int>(parse_long(qual, value));
    } else if (qual == "experiment.seed") {
      cfg.seed = parse_long(qual, value);
    } else if (qual == "sweep.epsilon") {
      cfg.epsilon.clear();
      for (const std::string& tok : split_list(value))
        cfg.epsilon.push_back(parse_double(qual, tok));
    } else if (qual == "grid.n") {
      cfg.n = static_cast<int>(parse_long(qual, value));
    } else if (qual == "grid.x_min") {
      cfg.x_min = parse_double(qual, value);
    } else if (qual == "grid.x_max") {
      cfg.x_max = parse_double(qual, value);
    } else if (qual == "time.dt") {
      cfg.dt = parse_double(qual, value);
    } else if (qual == "time.t_final") {
      cfg.t_final = parse_double(qual, value);
    } else if (qual == "time.store_every") {
      cfg.store_every = static_cast<int>(parse_long(qual, value));
    } else if (qual == "time.n_steps") {
      cfg.n_steps = parse_long(qual, value);
    } else {
      throw ConfigError("config: unknown key '" + qual + "'");
    }
  }
  if (cfg.scenario.empty()) throw ConfigError("config: missing experiment.scenario");
  find_scenario(cfg.scenario);  // diagnose unknown scenarios at parse time
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream os;
  os << "[experiment]\n";
  os << "scenario = " << scenario << "\n";
  os << "output = " << output << "\n";
  if (!analyses.empty()) {
    os << "analyses =";
    for (const auto& a : analyses) os << " " << a;
    os << "\n";
  }
  os << "workers = " << workers << "\n";
  os << "seed = " << seed << "\n";
  if (!epsilon.empty()) {
    os << "\n[sweep]\nepsilon =";
    for (double e : epsilon) os << " " << fmt_double(e);
    os << "\n";
  }
  if (n || x_min || x_max) {
    os << "\n[grid]\n";
    if (n) os << "n = " << *n << "\n";
    if (x_min) os << "x_min = " << fmt_double(*x_min) << "\n";
    if (x_max) os << "x_max = " << fmt_double(*x_max) << "\n";
  }
  if (dt || t_final || store_every || n_steps) {
    os << "\n[time]\n";
    if (dt) os << "dt = " << fmt_double(*dt) << "\n";
    if (t_final) os << "t_final = " << fmt_double(*t_final) << "\n";
    if (store_every) os << "store_every = " << *store_every << "\n";
    if (n_steps) os << "n_steps = " << *n_steps << "\n";
  }
  return os.str();
}

void validate_config(const ExperimentConfig& cfg) {
  const Scenario& sc = find_scenario(cfg.scenario);  // throws on unknown id
  std::vector<double> eps = cfg.epsilon.empty() ? sc.default_epsilon : cfg.epsilon;
  if (eps.empty()) throw ConfigError("config: sweep.epsilon is empty");
  for (double e : eps)
    if (!(e > 0.0 && e <= 1.0))
      throw ConfigError("config: sweep.epsilon entries must lie in (0, 1]");
  for (std::size_t i = 1; i < eps.size(); ++i)
    if (!(eps[i] < eps[i - 1])) throw ConfigError("config: epsilon list must be decreasing");
  if (cfg.n && (*cfg.n < 16 || (*cfg.n & (*cfg.n - 1)) != 0))
    throw ConfigError("config: grid.n must be a power of two >= 16");
  if (cfg.x_min.has_value() != cfg.x_max.has_value())
    throw ConfigError("config: grid.x_min and grid.x_max must be given together");
  if (cfg.x_min && !(*cfg.x_min < *cfg.x_max))
    throw ConfigError("config: grid.x_min must be below grid.x_max");
  if (cfg.dt && !(*cfg.dt > 0.0)) throw ConfigError("config: time.dt must be positive");
  if (cfg.t_final && !(*cfg.t_final > 0.0))
    throw ConfigError("config: time.t_final must be positive");
  if (cfg.store_every && *cfg.store_every < 1)
    throw ConfigError("config: time.store_every must be >= 1");
  for (const std::string& a : cfg.analyses)
    if (!analysis_known(a)) throw ConfigError("config: unknown analysis '" + a + "'");

  // Nyquist check at the most oscillatory instance
  if (sc.oscillatory) {
    const double e_min = eps.back();
    const ScenarioInstanceSpec inst = sc.instance(e_min, cfg);
    const double k_max = std::numbers::pi * inst.grid.n(0) / inst.grid.length(0);
    const double k_need = sc.required_kmax(e_min);
    if (k_max < k_need)
      throw ConfigError("config: grid cannot resolve epsilon = " + std::to_string(e_min) +
                        " (need k_max >= " + std::to_string(k_need) + ", grid gives " +
                        std::to_string(k_max) + "; raise grid.n)");
  }
}

}  // namespace bohmlab
