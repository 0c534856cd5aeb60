#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "kbest/presets.hpp"

namespace kbest::cli {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_plain_double(const std::string& text, const std::string& key) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("bad numeric value for '" + key + "': " + text);
  }
  return v;
}

// "<num>", "<num>dB", "<num> dB", or (if allowed) "inf"
double parse_value(const std::string& raw, const std::string& key,
                   bool allow_db, bool allow_inf) {
  std::string text = trim(raw);
  if (allow_inf && (text == "inf" || text == "infinity")) {
    return kUnlimitedPower;
  }
  bool db = false;
  if (text.size() >= 2) {
    std::string tail = text.substr(text.size() - 2);
    std::transform(tail.begin(), tail.end(), tail.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (tail == "db") {
      db = true;
      text = trim(text.substr(0, text.size() - 2));
    }
  }
  if (db && !allow_db) {
    throw ConfigError("'" + key + "' does not accept dB values");
  }
  const double v = parse_plain_double(text, key);
  return db ? std::pow(10.0, v / 10.0) : v;
}

int parse_int(const std::string& raw, const std::string& key) {
  const std::string text = trim(raw);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(),
                                         text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("'" + key + "' must be an integer, got: " + raw);
  }
  return v;
}

std::uint64_t parse_u64(const std::string& raw, const std::string& key) {
  const std::string text = trim(raw);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(),
                                         text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("'" + key + "' must be a non-negative integer, got: " +
                      raw);
  }
  return v;
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> parts;
  std::string cur;
  std::stringstream ss(raw);
  while (std::getline(ss, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

bool field_allows_db(const std::string& field) {
  return field == "t_intf" || field == "p_s" || field == "p_m" ||
         field == "x0";
}

bool field_allows_inf(const std::string& field) { return field == "p_s"; }

bool is_integer_field(const std::string& field) {
  return field == "n_users" || field == "k_rank";
}

bool is_csi_field(const std::string& field) {
  return field == "rho" || field == "delta" || field == "gamma0" ||
         field == "eta_hat" || field == "beta_hat";
}

}  // namespace

bool is_sweepable_field(const std::string& field) {
  static const std::set<std::string> kFields = {
      "lambda", "beta",  "m",      "eta",     "p_m",      "t_intf", "p_s",
      "n_users", "k_rank", "rho",  "delta",   "gamma0",   "eta_hat",
      "beta_hat"};
  return kFields.count(field) > 0;
}

void apply_sweep_value(SystemParams& params, std::optional<CsiParams>& csi,
                       const std::string& field, double value) {
  if (is_integer_field(field)) {
    const double r = std::round(value);
    if (std::fabs(value - r) > 1e-9) {
      throw ConfigError("sweep grid for '" + field +
                        "' must hold integers");
    }
    if (field == "n_users") {
      params.n_users = static_cast<int>(r);
    } else {
      params.k_rank = static_cast<int>(r);
    }
    return;
  }
  if (is_csi_field(field)) {
    if (!csi) {
      throw ConfigError("sweep over '" + field +
                        "' needs the CSI block configured");
    }
    if (field == "rho") csi->rho = value;
    else if (field == "delta") csi->delta = value;
    else if (field == "gamma0") csi->gamma0 = value;
    else if (field == "eta_hat") csi->eta_hat = value;
    else csi->beta_hat = value;
    return;
  }
  if (field == "lambda") params.lambda = value;
  else if (field == "beta") params.beta = value;
  else if (field == "m") params.m = value;
  else if (field == "eta") params.eta = value;
  else if (field == "p_m") params.p_m = value;
  else if (field == "t_intf") params.t_intf = value;
  else if (field == "p_s") params.p_s = value;
  else throw ConfigError("unknown sweep field '" + field + "'");
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  cfg.params = presets::base();

  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": empty key or value");
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError("duplicate key '" + key + "'");
    }
  }

  auto take = [&kv](const char* key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  // plain network parameters
  if (auto v = take("lambda")) cfg.params.lambda = parse_value(*v, "lambda", false, false);
  if (auto v = take("beta")) cfg.params.beta = parse_value(*v, "beta", false, false);
  if (auto v = take("m")) cfg.params.m = parse_value(*v, "m", false, false);
  if (auto v = take("eta")) cfg.params.eta = parse_value(*v, "eta", false, false);
  if (auto v = take("p_m")) cfg.params.p_m = parse_value(*v, "p_m", true, false);
  if (auto v = take("t_intf")) cfg.params.t_intf = parse_value(*v, "t_intf", true, false);
  if (auto v = take("p_s")) cfg.params.p_s = parse_value(*v, "p_s", true, true);
  if (auto v = take("n_users")) cfg.params.n_users = parse_int(*v, "n_users");
  if (auto v = take("k_rank")) cfg.params.k_rank = parse_int(*v, "k_rank");

  // CSI block: any key present -> rho/gamma0/eta_hat/beta_hat all required
  const auto rho = take("rho");
  const auto delta = take("delta");
  const auto gamma0 = take("gamma0");
  const auto eta_hat = take("eta_hat");
  const auto beta_hat = take("beta_hat");
  if (rho || delta || gamma0 || eta_hat || beta_hat) {
    if (!rho || !gamma0 || !eta_hat || !beta_hat) {
      throw ConfigError(
          "CSI block needs rho, gamma0, eta_hat and beta_hat (delta is "
          "optional, default 1)");
    }
    CsiParams c;
    c.rho = parse_value(*rho, "rho", false, false);
    c.delta = delta ? parse_value(*delta, "delta", false, false) : 1.0;
    c.gamma0 = parse_value(*gamma0, "gamma0", false, false);
    c.eta_hat = parse_value(*eta_hat, "eta_hat", false, false);
    c.beta_hat = parse_value(*beta_hat, "beta_hat", false, false);
    cfg.csi = c;
  }

  // metric selection
  const std::string metric_name =
      take("metric").value_or("avg_throughput");
  const auto a_exp = take("a_exp");
  const auto ber_c = take("ber_c");
  const auto ber_v = take("ber_v");
  const auto x0 = take("x0");
  if (a_exp && metric_name != "eff_throughput") {
    throw ConfigError("a_exp only applies to metric eff_throughput");
  }
  if ((ber_c || ber_v) && metric_name != "avg_ber") {
    throw ConfigError("ber_c/ber_v only apply to metric avg_ber");
  }
  if (x0 && metric_name != "outage") {
    throw ConfigError("x0 only applies to metric outage");
  }
  if (metric_name == "avg_throughput") {
    cfg.metric = AvgThroughput{};
  } else if (metric_name == "eff_throughput") {
    const double a = a_exp ? parse_value(*a_exp, "a_exp", false, false) : 1.0;
    if (a < 0.0) throw ConfigError("a_exp must be >= 0");
    if (a == 0.0) {
      cfg.metric = AvgThroughput{};  // no delay constraint: plain average
    } else {
      cfg.metric = EffThroughput{a};
    }
  } else if (metric_name == "avg_ber") {
    cfg.metric = AvgBer{ber_c ? parse_value(*ber_c, "ber_c", false, false) : 0.5,
                        ber_v ? parse_value(*ber_v, "ber_v", false, false) : 0.5};
  } else if (metric_name == "outage") {
    if (!x0) throw ConfigError("metric outage needs x0");
    cfg.metric = Outage{parse_value(*x0, "x0", true, false)};
  } else {
    throw ConfigError("unknown metric '" + metric_name + "'");
  }

  // sweep
  const auto sweep = take("sweep");
  const auto grid = take("grid");
  if (sweep.has_value() != grid.has_value()) {
    throw ConfigError("sweep and grid must be given together");
  }
  if (sweep) {
    const std::string field = trim(*sweep);
    if (!is_sweepable_field(field)) {
      throw ConfigError("sweep field '" + field +
                        "' is not a numeric parameter");
    }
    const auto parts = split_list(*grid);
    if (parts.empty()) throw ConfigError("grid must not be empty");
    for (const auto& part : parts) {
      cfg.grid.push_back(parse_value(part, "grid", field_allows_db(field),
                                     field_allows_inf(field)));
    }
    for (std::size_t i = 1; i < cfg.grid.size(); ++i) {
      if (!(cfg.grid[i] > cfg.grid[i - 1])) {
        throw ConfigError("grid must be strictly increasing");
      }
    }
    // fail early on non-integral grids and missing CSI blocks
    SystemParams probe_p = cfg.params;
    std::optional<CsiParams> probe_c = cfg.csi;
    for (const double g : cfg.grid) {
      apply_sweep_value(probe_p, probe_c, field, g);
    }
    cfg.sweep_field = field;
  }

  if (auto v = take("trials")) cfg.n_trials = parse_u64(*v, "trials");
  if (auto v = take("seed")) cfg.seed = parse_u64(*v, "seed");
  if (auto v = take("out")) cfg.out = *v;

  if (!kv.empty()) {
    throw ConfigError("unknown key '" + kv.begin()->first + "'");
  }

  // base validation (per-row validation happens again after sweep writes)
  try {
    cfg.params.validate();
    if (cfg.csi) cfg.csi->validate();
    validate(cfg.metric);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace kbest::cli
