#include "coalsim/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace coalsim {

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::None: return "none";
    case SweepVariable::NumD2d: return "n_d2d";
    case SweepVariable::NumAccess: return "n_access";
    case SweepVariable::NumChannels: return "num_channels";
    case SweepVariable::SiMagnitude: return "si_magnitude";
    case SweepVariable::RMin: return "r_min";
  }
  return "none";
}

namespace {

SweepVariable parse_sweep_variable(const std::string& name) {
  if (name == "n_d2d") return SweepVariable::NumD2d;
  if (name == "n_access") return SweepVariable::NumAccess;
  if (name == "num_channels") return SweepVariable::NumChannels;
  if (name == "si_magnitude") return SweepVariable::SiMagnitude;
  if (name == "r_min") return SweepVariable::RMin;
  throw std::invalid_argument("unknown sweep variable: " + name);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& v, const std::string& key, int line) {
  size_t pos = 0;
  double x;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != v.size())
    throw std::invalid_argument("config line " + std::to_string(line) + ": " +
                                key + ": not a number: '" + v + "'");
  return x;
}

long parse_long(const std::string& v, const std::string& key, int line) {
  const double x = parse_double(v, key, line);
  if (x != std::floor(x))
    throw std::invalid_argument("config line " + std::to_string(line) + ": " +
                                key + ": not an integer: '" + v + "'");
  return static_cast<long>(x);
}

bool parse_bool(const std::string& v, const std::string& key, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config line " + std::to_string(line) + ": " +
                              key + ": not a boolean: '" + v + "'");
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string l = trim(raw);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line) +
                                  ": expected key = value");
    const std::string key = trim(l.substr(0, eq));
    const std::string val = trim(l.substr(eq + 1));

    auto d = [&] { return parse_double(val, key, line); };
    auto i = [&] { return parse_long(val, key, line); };
    auto b = [&] { return parse_bool(val, key, line); };

    if (key == "tx_power_dbm") cfg.params.tx_power = dbm_to_watts(d());
    else if (key == "eta") cfg.params.eta = d();
    else if (key == "path_loss_exp") cfg.params.path_loss_exp = d();
    else if (key == "bandwidth_mhz") cfg.params.bandwidth = d() * 1e6;
    else if (key == "noise_psd_dbm_per_mhz")
      cfg.params.noise_psd = dbm_to_watts(d()) / 1e6;
    else if (key == "mui_factor") cfg.params.mui_factor = d();
    else if (key == "carrier_freq_ghz") cfg.params.carrier_freq = d() * 1e9;
    else if (key == "beamwidth_deg") cfg.params.beamwidth = d();
    else if (key == "r_min_mbps") cfg.params.r_min = d() * 1e6;
    else if (key == "si_low") cfg.params.si_low = d();
    else if (key == "si_high") cfg.params.si_high = d();
    else if (key == "si_magnitude") cfg.params.si_magnitude = static_cast<int>(i());
    else if (key == "area_side_m") cfg.params.area_side = d();
    else if (key == "d2d_max_dist_m") cfg.params.d2d_max_dist = d();
    else if (key == "alpha") cfg.params.alpha = d();
    else if (key == "d2d_pair_prob") cfg.params.d2d_pair_prob = d();
    else if (key == "max_iterations") cfg.game.max_iterations = i();
    else if (key == "stability_scan_interval") cfg.game.stability_scan_interval = i();
    else if (key == "trials") cfg.trials = static_cast<int>(i());
    else if (key == "seed") cfg.master_seed = static_cast<std::uint64_t>(i());
    else if (key == "n_bs") cfg.n_bs = static_cast<int>(i());
    else if (key == "n_access") cfg.n_access = static_cast<int>(i());
    else if (key == "n_d2d") cfg.n_d2d = static_cast<int>(i());
    else if (key == "num_channels") cfg.num_channels = static_cast<int>(i());
    else if (key == "workers") cfg.workers = static_cast<int>(i());
    else if (key == "verify_stability") cfg.verify_stability = b();
    else if (key == "timing") cfg.timing = b();
    else if (key == "optimal_enforce_rmin") cfg.optimal_enforce_rmin = b();
    else if (key == "optimal_work_bound")
      cfg.optimal_work_bound = static_cast<std::uint64_t>(i());
    else if (key == "output") cfg.output_path = val;
    else if (key == "format") {
      if (val == "csv") cfg.format = OutputFormat::Csv;
      else if (val == "json") cfg.format = OutputFormat::Json;
      else
        throw std::invalid_argument("config line " + std::to_string(line) +
                                    ": format must be csv or json");
    } else if (key == "schemes") {
      cfg.schemes.clear();
      for (const std::string& s : split(val, ','))
        if (!s.empty()) cfg.schemes.push_back(parse_scheme(s));
    } else if (key == "sweep") {
      const auto e2 = val.find('=');
      if (e2 == std::string::npos)
        throw std::invalid_argument("config line " + std::to_string(line) +
                                    ": sweep must be var=v1,v2,...");
      cfg.sweep_var = parse_sweep_variable(trim(val.substr(0, e2)));
      cfg.sweep_values.clear();
      for (const std::string& s : split(val.substr(e2 + 1), ','))
        if (!s.empty()) cfg.sweep_values.push_back(parse_double(s, key, line));
      if (cfg.sweep_values.empty())
        throw std::invalid_argument("config line " + std::to_string(line) +
                                    ": sweep needs at least one value");
    } else {
      throw std::invalid_argument("config line " + std::to_string(line) +
                                  ": unknown key '" + key + "'");
    }
  }
  check_params(cfg.params);
  if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (cfg.schemes.empty())
    throw std::invalid_argument("config: schemes must not be empty");
  if (cfg.workers < 1) throw std::invalid_argument("config: workers must be >= 1");
  cfg.game.r_min = cfg.params.r_min;
  return cfg;
}

namespace {

struct SweepPoint {
  double value = 0.0;
  RadioParams params;
  GameConfig game;
  int n_bs, n_access, n_d2d, num_channels;
};

SweepPoint make_point(const ExperimentConfig& cfg, double value) {
  SweepPoint p;
  p.value = value;
  p.params = cfg.params;
  p.game = cfg.game;
  p.n_bs = cfg.n_bs;
  p.n_access = cfg.n_access;
  p.n_d2d = cfg.n_d2d;
  p.num_channels = cfg.num_channels;
  switch (cfg.sweep_var) {
    case SweepVariable::None: break;
    case SweepVariable::NumD2d: p.n_d2d = static_cast<int>(value); break;
    case SweepVariable::NumAccess: p.n_access = static_cast<int>(value); break;
    case SweepVariable::NumChannels: p.num_channels = static_cast<int>(value); break;
    case SweepVariable::SiMagnitude: p.params.si_magnitude = static_cast<int>(value); break;
    case SweepVariable::RMin: p.params.r_min = value * 1e6; break;
  }
  p.game.r_min = p.params.r_min;
  return p;
}

// Runs all schemes of one trial on a shared scenario.
std::vector<TrialRecord> run_trial(const ExperimentConfig& cfg,
                                   const SweepPoint& pt, int trial) {
  const std::uint64_t child_seed = mix_seed(cfg.master_seed, static_cast<std::uint64_t>(trial));
  std::vector<TrialRecord> out;
  auto base_record = [&](SchemeId scheme) {
    TrialRecord r;
    r.scheme = scheme;
    r.sweep_var = cfg.sweep_var;
    r.sweep_value = pt.value;
    r.trial = trial;
    r.seed = child_seed;
    r.result.scheme = scheme;
    r.result.seed = child_seed;
    return r;
  };

  std::optional<Scenario> scenario;
  try {
    scenario = generate_scenario(pt.params, pt.n_bs, pt.n_access, pt.n_d2d,
                                 pt.num_channels, child_seed);
  } catch (const std::exception& e) {
    for (SchemeId s : cfg.schemes) {
      TrialRecord r = base_record(s);
      r.status = TrialStatus::Failed;
      r.message = std::string("scenario generation: ") + e.what();
      out.push_back(std::move(r));
    }
    return out;
  }

  // FD rate model shared by fd-coalition, random and optimal.
  std::optional<CoalitionGame> fd_game;
  auto fd = [&]() -> CoalitionGame& {
    if (!fd_game) {
      GameConfig g = pt.game;
      g.duplex = Duplex::FD;
      fd_game.emplace(*scenario, g);
    }
    return *fd_game;
  };

  int scheme_index = 0;
  for (SchemeId scheme : cfg.schemes) {
    const std::uint64_t scheme_seed =
        mix_seed(child_seed, 1000 + static_cast<std::uint64_t>(scheme_index++));
    TrialRecord r = base_record(scheme);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      Partition partition;
      switch (scheme) {
        case SchemeId::FdCoalition:
        case SchemeId::HdCoalition: {
          GameConfig g = pt.game;
          g.seed = scheme_seed;
          g.duplex = scheme == SchemeId::HdCoalition ? Duplex::HD : Duplex::FD;
          const CoalitionGame* game;
          std::optional<CoalitionGame> hd_game;
          if (scheme == SchemeId::HdCoalition) {
            hd_game.emplace(*scenario, g);
            game = &*hd_game;
          } else {
            GameConfig fg = g;
            fd_game.reset();
            fd_game.emplace(*scenario, fg);
            game = &*fd_game;
          }
          GameResult gr = game->run();
          if (cfg.verify_stability && gr.stable && !game->is_nash_stable(gr.partition))
            throw std::runtime_error("stability verification failed");
          partition = gr.partition;
          r.result.switch_count = static_cast<long>(gr.switches.size());
          r.result.stable = gr.stable;
          r.result.per_link_rates = game->per_link_rates(partition);
          break;
        }
        case SchemeId::Random:
          partition = random_allocation(*scenario, scheme_seed);
          r.result.per_link_rates = fd().per_link_rates(partition);
          break;
        case SchemeId::Optimal:
          try {
            partition = exhaustive_optimal(*scenario, pt.game,
                                           cfg.optimal_enforce_rmin,
                                           cfg.optimal_work_bound);
          } catch (const WorkBoundExceeded& e) {
            r.status = TrialStatus::Skipped;
            r.message = e.what();
          }
          if (r.status == TrialStatus::Ok)
            r.result.per_link_rates = fd().per_link_rates(partition);
          break;
      }
      if (r.status == TrialStatus::Ok) {
        r.result.throughput = system_throughput(r.result.per_link_rates);
        r.result.fairness = r.result.per_link_rates.empty()
                                ? 1.0
                                : jain_fairness(r.result.per_link_rates);
      }
    } catch (const std::exception& e) {
      r.status = TrialStatus::Failed;
      r.message = e.what();
    }
    if (cfg.timing) {
      r.result.runtime =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  if (cfg.schemes.empty())
    throw std::invalid_argument("run_experiment: no schemes configured");
  if (cfg.sweep_var != SweepVariable::None && cfg.sweep_values.empty())
    throw std::invalid_argument("run_experiment: sweep without values");
  check_params(cfg.params);

  ExperimentResult res;
  res.config = cfg;
  const std::vector<double> values =
      cfg.sweep_var == SweepVariable::None ? std::vector<double>{0.0} : cfg.sweep_values;

  for (double value : values) {
    const SweepPoint pt = make_point(cfg, value);
    std::vector<std::vector<TrialRecord>> slots(static_cast<size_t>(cfg.trials));
    if (cfg.workers <= 1) {
      for (int t = 0; t < cfg.trials; ++t) slots[static_cast<size_t>(t)] = run_trial(cfg, pt, t);
    } else {
      std::mutex m;
      int next = 0;
      auto worker = [&] {
        for (;;) {
          int t;
          {
            std::lock_guard<std::mutex> lock(m);
            if (next >= cfg.trials) return;
            t = next++;
          }
          slots[static_cast<size_t>(t)] = run_trial(cfg, pt, t);
        }
      };
      std::vector<std::thread> pool;
      const int n = std::min(cfg.workers, cfg.trials);
      pool.reserve(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    for (auto& slot : slots)
      for (auto& rec : slot) res.records.push_back(std::move(rec));

    // Per-scheme aggregates over the successful trials of this sweep point.
    for (SchemeId scheme : cfg.schemes) {
      std::vector<TrialResult> ok;
      for (const TrialRecord& r : res.records)
        if (r.sweep_value == value && r.scheme == scheme &&
            r.status == TrialStatus::Ok)
          ok.push_back(r.result);
      if (ok.empty()) continue;
      res.aggregates.push_back({scheme, value, aggregate(ok).at(scheme)});
    }
  }
  return res;
}

namespace {

void write_csv_row(std::ostream& out, const TrialRecord& r) {
  out << to_string(r.scheme) << ',' << to_string(r.sweep_var) << ','
      << fmt(r.sweep_value) << ',' << r.trial << ',' << r.seed << ',';
  switch (r.status) {
    case TrialStatus::Ok:
      out << fmt(r.result.throughput) << ',' << fmt(r.result.fairness) << ','
          << r.result.switch_count << ',' << (r.result.stable ? 1 : 0) << ','
          << fmt(r.result.runtime);
      break;
    case TrialStatus::Skipped:
      out << ",,,skipped,";
      break;
    case TrialStatus::Failed:
      out << ",,,failed,";
      break;
  }
  out << '\n';
}

}  // namespace

void write_csv(const ExperimentResult& r, std::ostream& out) {
  out << "scheme,sweep_variable,sweep_value,trial,seed,throughput_bps,"
         "jain_fairness,switch_count,stable,runtime_s\n";
  for (const TrialRecord& rec : r.records) write_csv_row(out, rec);
  for (const SweepPointAggregate& a : r.aggregates) {
    out << to_string(a.scheme) << ',' << to_string(r.config.sweep_var) << ','
        << fmt(a.sweep_value) << ",mean,," << fmt(a.stats.throughput.mean)
        << ',' << fmt(a.stats.fairness.mean) << ','
        << fmt(a.stats.switch_count.mean) << ',' << fmt(a.stats.stable_fraction)
        << ',' << fmt(a.stats.runtime.mean) << '\n';
    out << to_string(a.scheme) << ',' << to_string(r.config.sweep_var) << ','
        << fmt(a.sweep_value) << ",sd,," << fmt(a.stats.throughput.sd) << ','
        << fmt(a.stats.fairness.sd) << ',' << fmt(a.stats.switch_count.sd)
        << ",," << fmt(a.stats.runtime.sd) << '\n';
  }
}

void write_json(const ExperimentResult& r, std::ostream& out) {
  using nlohmann::json;
  json j;
  const ExperimentConfig& c = r.config;
  j["config"] = {
      {"tx_power_w", c.params.tx_power},
      {"eta", c.params.eta},
      {"path_loss_exp", c.params.path_loss_exp},
      {"bandwidth_hz", c.params.bandwidth},
      {"noise_psd_w_per_hz", c.params.noise_psd},
      {"mui_factor", c.params.mui_factor},
      {"carrier_freq_hz", c.params.carrier_freq},
      {"beamwidth_deg", c.params.beamwidth},
      {"r_min_bps", c.params.r_min},
      {"si_low", c.params.si_low},
      {"si_high", c.params.si_high},
      {"si_magnitude", c.params.si_magnitude},
      {"area_side_m", c.params.area_side},
      {"d2d_max_dist_m", c.params.d2d_max_dist},
      {"alpha", c.params.alpha},
      {"d2d_pair_prob", c.params.d2d_pair_prob},
      {"max_iterations", c.game.max_iterations},
      {"stability_scan_interval", c.game.stability_scan_interval},
      {"trials", c.trials},
      {"seed", c.master_seed},
      {"sweep_variable", to_string(c.sweep_var)},
      {"sweep_values", c.sweep_values},
      {"n_bs", c.n_bs},
      {"n_access", c.n_access},
      {"n_d2d", c.n_d2d},
      {"num_channels", c.num_channels},
      {"workers", c.workers},
      {"verify_stability", c.verify_stability},
      {"timing", c.timing},
      {"optimal_enforce_rmin", c.optimal_enforce_rmin},
      {"optimal_work_bound", c.optimal_work_bound},
  };
  json schemes = json::array();
  for (SchemeId s : c.schemes) schemes.push_back(to_string(s));
  j["config"]["schemes"] = schemes;

  json records = json::array();
  for (const TrialRecord& rec : r.records) {
    json jr = {
        {"scheme", to_string(rec.scheme)},
        {"sweep_variable", to_string(rec.sweep_var)},
        {"sweep_value", rec.sweep_value},
        {"trial", rec.trial},
        {"seed", rec.seed},
        {"status", rec.status == TrialStatus::Ok
                       ? "ok"
                       : rec.status == TrialStatus::Skipped ? "skipped" : "failed"},
    };
    if (rec.status == TrialStatus::Ok) {
      jr["throughput_bps"] = rec.result.throughput;
      jr["jain_fairness"] = rec.result.fairness;
      jr["switch_count"] = rec.result.switch_count;
      jr["stable"] = rec.result.stable;
      jr["runtime_s"] = rec.result.runtime;
    } else {
      jr["message"] = rec.message;
    }
    records.push_back(std::move(jr));
  }
  j["records"] = std::move(records);

  json aggs = json::array();
  for (const SweepPointAggregate& a : r.aggregates) {
    aggs.push_back({
        {"scheme", to_string(a.scheme)},
        {"sweep_value", a.sweep_value},
        {"trials", a.stats.trial_count},
        {"throughput_mean", a.stats.throughput.mean},
        {"throughput_sd", a.stats.throughput.sd},
        {"fairness_mean", a.stats.fairness.mean},
        {"fairness_sd", a.stats.fairness.sd},
        {"switch_count_mean", a.stats.switch_count.mean},
        {"stable_fraction", a.stats.stable_fraction},
        {"runtime_mean_s", a.stats.runtime.mean},
    });
  }
  j["aggregates"] = std::move(aggs);
  out << j.dump(2) << '\n';
}

void write_results(const ExperimentResult& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  if (r.config.format == OutputFormat::Json)
    write_json(r, out);
  else
    write_csv(r, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace coalsim
