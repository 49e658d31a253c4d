/*
 * Copyright 2026 The AERW Lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aerw/errors.hpp"
#include "aerw/exact.hpp"
#include "aerw/format.hpp"
#include "aerw/parallel.hpp"
#include "aerw/stats.hpp"

namespace aerw::cli {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ConfigError("config: '" + key + "' expects a non-negative integer, got '" +
                      v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("config: '" + key + "' expects true or false, got '" + v + "'");
}

std::vector<std::string> split(const std::string& v, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(v);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) {
      out.push_back(cur);
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

void set_key(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "p") c.p = parse_double(key, v);
  else if (key == "q") c.q = parse_double(key, v);
  else if (key == "beta") c.beta = parse_double(key, v);
  else if (key == "regime") c.regime = v;
  else if (key == "n") c.n = parse_u64(key, v);
  else if (key == "paths") c.paths = parse_u64(key, v);
  else if (key == "seed") c.seed = parse_u64(key, v);
  else if (key == "stream") c.stream = parse_u64(key, v);
  else if (key == "checkpoints") c.checkpoints = v;
  else if (key == "out") c.out = v;
  else if (key == "summary") c.summary = v;
  else if (key == "ledger") c.ledger = v;
  else if (key == "campaigns") c.campaigns = split(v, ',');
  else if (key == "threads") c.threads = static_cast<unsigned>(parse_u64(key, v));
  else if (key == "diagnostics") c.diagnostics = parse_bool(key, v);
  else if (key == "preset") c.preset = v;
  else throw ConfigError("config: unknown key '" + key + "'");
}

std::string json_scalar_text(const std::string& key, const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) {
    const auto i = v.get<std::int64_t>();
    if (i < 0) throw ConfigError("config: '" + key + "' must not be negative");
    return std::to_string(i);
  }
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_array() && key == "campaigns") {
    std::vector<std::string> parts;
    for (const auto& e : v) {
      if (!e.is_string()) throw ConfigError("config: campaigns must be strings");
      parts.push_back(e.get<std::string>());
    }
    return join(parts, ',');
  }
  throw ConfigError("config: unsupported value for '" + key + "'");
}

std::optional<Regime> regime_from_string(const std::string& name) {
  if (name.empty() || name == "auto") return std::nullopt;
  if (name == "diffusive") return Regime::Diffusive;
  if (name == "critical") return Regime::Critical;
  if (name == "superdiffusive") return Regime::Superdiffusive;
  throw ConfigError("unknown regime '" + name +
                    "' (diffusive, critical, superdiffusive or auto)");
}

json params_json(const ModelParams& params) {
  return {{"p", params.p()},
          {"q", params.q()},
          {"beta", params.beta()},
          {"a", params.a()},
          {"regime", std::string(to_string(params.regime()))}};
}

json optional_json(const std::optional<double>& v) {
  return v && std::isfinite(*v) ? json(*v) : json(nullptr);
}

}  // namespace

// ---------------------------------------------------------------------------
// RunConfig

ModelParams RunConfig::params() const {
  return ModelParams(p, q, beta, regime_from_string(regime));
}

unsigned RunConfig::thread_count() const {
  return threads > 0 ? threads : default_thread_count();
}

CheckpointSchedule RunConfig::schedule() const {
  return parse_checkpoints(checkpoints, n);
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    for (const auto& [key, value] : doc.items()) {
      set_key(c, key, json_scalar_text(key, value));
    }
    return c;
  }
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') {
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key=value");
    }
    set_key(c, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot read config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_key_value(const RunConfig& c) {
  std::ostringstream out;
  out << "p=" << format_double(c.p) << '\n'
      << "q=" << format_double(c.q) << '\n'
      << "beta=" << format_double(c.beta) << '\n'
      << "regime=" << c.regime << '\n'
      << "n=" << c.n << '\n'
      << "paths=" << c.paths << '\n'
      << "seed=" << c.seed << '\n'
      << "stream=" << c.stream << '\n'
      << "checkpoints=" << c.checkpoints << '\n'
      << "out=" << c.out << '\n'
      << "summary=" << c.summary << '\n'
      << "ledger=" << c.ledger << '\n'
      << "campaigns=" << join(c.campaigns, ',') << '\n'
      << "threads=" << c.threads << '\n'
      << "diagnostics=" << (c.diagnostics ? "true" : "false") << '\n'
      << "preset=" << c.preset << '\n';
  return out.str();
}

std::string to_json_text(const RunConfig& c) {
  const json doc = {{"p", c.p},
                    {"q", c.q},
                    {"beta", c.beta},
                    {"regime", c.regime},
                    {"n", c.n},
                    {"paths", c.paths},
                    {"seed", c.seed},
                    {"stream", c.stream},
                    {"checkpoints", c.checkpoints},
                    {"out", c.out},
                    {"summary", c.summary},
                    {"ledger", c.ledger},
                    {"campaigns", c.campaigns},
                    {"threads", c.threads},
                    {"diagnostics", c.diagnostics},
                    {"preset", c.preset}};
  return doc.dump(2) + "\n";
}

CheckpointSchedule parse_checkpoints(const std::string& spec,
                                     std::uint64_t n_max) {
  if (spec == "geometric") return CheckpointSchedule::geometric(n_max);
  if (spec == "final") return CheckpointSchedule::final_only(n_max);
  if (spec.rfind("every:", 0) == 0) {
    const auto stride = parse_u64("checkpoints", spec.substr(6));
    if (stride == 0) throw ConfigError("checkpoints: stride must be >= 1");
    return CheckpointSchedule::every(stride, n_max);
  }
  if (spec.rfind("list:", 0) == 0) {
    std::vector<std::uint64_t> times;
    for (const auto& t : split(spec.substr(5), ',')) {
      times.push_back(parse_u64("checkpoints", t));
    }
    return CheckpointSchedule::from_times(std::move(times), n_max);
  }
  throw ConfigError("checkpoints: expected geometric, final, every:K or "
                    "list:a,b,... but got '" + spec + "'");
}

const std::vector<std::string>& campaign_names() {
  static const std::vector<std::string> names = {
      "moments", "clt", "covariance", "qsl", "superdiffusive", "gof", "lil"};
  return names;
}

void write_output(const std::string& path, std::ostream& fallback,
                  const std::function<void(std::ostream&)>& fill) {
  if (path.empty() || path == "-") {
    fill(fallback);
    fallback.flush();
    return;
  }
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  try {
    {
      std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
      if (!file) {
        throw std::runtime_error("cannot open '" + tmp + "' for writing");
      }
      fill(file);
      file.flush();
      if (!file) {
        throw std::runtime_error("write to '" + tmp + "' failed");
      }
    }
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

// ---------------------------------------------------------------------------
// Commands

namespace {

int cmd_simulate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ModelParams params = c.params();
  if (c.n == 0) throw ConfigError("simulate: --n must be >= 1");
  const auto schedule = c.schedule();
  SequenceCache cache(params, c.n);
  RngStream rng(c.seed, c.stream);
  unsigned functionals = c.n >= 16 ? unsigned{kLilMax} : 0u;
  if (params.regime() == Regime::Diffusive) functionals |= kQslDiffusive;
  if (params.regime() == Regime::Critical) functionals |= kQslCritical;
  const RunOptions options{c.diagnostics, functionals};
  const Trajectory traj = run_path(params, c.n, schedule, options, rng, cache);

  write_output(c.out, out, [&](std::ostream& s) { write_trajectory_csv(s, traj); });

  json summary = {{"params", params_json(params)},
                  {"n", traj.n},
                  {"seed", c.seed},
                  {"stream", c.stream},
                  {"S", traj.position},
                  {"Y_scaled", traj.y_scaled},
                  {"checkpoints", traj.checkpoints.size()},
                  {"diagnostics", c.diagnostics}};
  if (params.regime() != Regime::Superdiffusive && c.n >= 3) {
    summary["qsl"] = qsl_functional(traj, params.regime());
  }
  if (c.n >= 16) {
    summary["lil_statistic"] = lil_statistic(traj);
    summary["lil_running_max"] = traj.sums.lil_max;
  }
  std::string summary_path = c.summary;
  if (summary_path.empty() && !c.out.empty() && c.out != "-") {
    summary_path = c.out + ".summary.json";
  }
  if (!summary_path.empty()) {
    write_output(summary_path, err,
                 [&](std::ostream& s) { s << summary.dump(2) << '\n'; });
  }
  return kExitOk;
}

const std::vector<double>& figure_betas() {
  static const std::vector<double> betas = {0, 1, 2, 3, 10, 100};
  return betas;
}

int cmd_pmf(const RunConfig& c, bool figure, std::ostream& out) {
  if (c.n == 0 || c.n > 1'000'000) {
    throw ConfigError("pmf: --n must be in [1, 1000000]");
  }
  if (!(c.beta >= 0.0) || !std::isfinite(c.beta)) {
    throw ParameterError("pmf: beta must be finite and >= 0");
  }
  const std::size_t n = c.n;
  const std::vector<double> betas =
      figure ? figure_betas() : std::vector<double>{c.beta};
  std::vector<SequenceCache> caches;
  for (const double b : betas) {
    caches.emplace_back(ModelParams(0.5, 0.5, b), n);
  }
  write_output(c.out, out, [&](std::ostream& s) {
    s << 'k';
    if (figure) {
      for (const double b : betas) s << ",beta_" << format_double(b);
    } else {
      s << ",probability";
    }
    s << '\n';
    for (std::size_t k = 1; k <= n; ++k) {
      s << k;
      for (const auto& cache : caches) {
        s << ',' << format_double(memory_pmf(cache, n, k));
      }
      s << '\n';
    }
  });
  return kExitOk;
}

int cmd_moments(const RunConfig& c, bool scaled, std::ostream& out) {
  const ModelParams params = c.params();
  if (c.n == 0) throw ConfigError("moments: --n must be >= 1");
  const auto schedule = c.schedule();
  const auto table = moment_recurrence(params, schedule.times());
  const Regime regime = params.regime();
  const double e = params.superdiffusive_exponent();
  write_output(c.out, out, [&](std::ostream& s) {
    if (!scaled) {
      write_moment_csv(s, table);
      return;
    }
    s << "n,m_S,var_S,m_Y,var_Y,cov_SY,var_S_scaled\n";
    for (const auto& row : table.rows) {
      const double nd = static_cast<double>(row.n);
      double norm = nd;
      if (regime == Regime::Critical) {
        norm = row.n >= 2 ? nd * std::log(nd) : std::nan("");
      } else if (regime == Regime::Superdiffusive) {
        norm = std::pow(nd, 2.0 * e);
      }
      s << row.n << ',' << format_double(row.m_s) << ','
        << format_double(row.var_s()) << ',' << format_double(row.m_y) << ','
        << format_double(row.var_y()) << ',' << format_double(row.cov_sy())
        << ',' << format_double(row.var_s() / norm) << '\n';
    }
  });
  return kExitOk;
}

int cmd_constants(const RunConfig& c, std::ostream& out) {
  const ModelParams params = c.params();
  const RegimeConstants k = regime_constants(params);
  json doc = params_json(params);
  doc["p_c"] = k.critical_p;
  doc["singular"] = params.singular();
  doc["sigma2"] = optional_json(k.sigma2);
  doc["critical_variance"] = k.critical_var;
  doc["EL"] = optional_json(k.el);
  doc["EL2"] = optional_json(k.el2);
  if (params.regime() == Regime::Superdiffusive) {
    doc["growth_exponent"] = params.superdiffusive_exponent();
  }
  write_output(c.out, out, [&](std::ostream& s) { s << doc.dump(2) << '\n'; });
  return kExitOk;
}

struct CampaignSize {
  std::uint64_t n;
  std::uint64_t paths;
};

// Per-campaign sizes for the presets, sized for one core.
CampaignSize preset_size(const std::string& preset, const std::string& campaign,
                         const RunConfig& c) {
  static const std::map<std::string, CampaignSize> quick = {
      {"moments", {5000, 10000}},       {"clt", {5000, 5000}},
      {"covariance", {5000, 20000}},    {"qsl", {200000, 20}},
      {"superdiffusive", {5000, 10000}}, {"gof", {50, 1000000}},
      {"lil", {200000, 1}}};
  static const std::map<std::string, CampaignSize> full = {
      {"moments", {10000, 100000}},     {"clt", {10000, 10000}},
      {"covariance", {10000, 100000}},  {"qsl", {1000000, 100}},
      {"superdiffusive", {10000, 100000}}, {"gof", {50, 1000000}},
      {"lil", {1000000, 1}}};
  if (preset == "quick") return quick.at(campaign);
  if (preset == "full") return full.at(campaign);
  return {c.n, c.paths};
}

std::optional<std::string> mismatch_reason(const std::string& campaign,
                                           const ModelParams& params) {
  const Regime r = params.regime();
  if ((campaign == "clt" || campaign == "qsl") && r == Regime::Superdiffusive) {
    return "no Gaussian limit or quadratic strong law in the superdiffusive regime";
  }
  if (campaign == "covariance") {
    if (r != Regime::Diffusive) return "limit covariance is defined only in the diffusive regime";
    if (params.singular()) return "limit covariance is undefined on the singular line a(beta+1) = beta";
  }
  if (campaign == "superdiffusive" && r != Regime::Superdiffusive) {
    return "superdiffusive moments apply only in the superdiffusive regime";
  }
  if (campaign == "lil" && r != Regime::Critical) {
    return "the LIL diagnostic is defined for the critical regime";
  }
  return std::nullopt;
}

std::vector<TestReport> run_campaign(const std::string& name,
                                     const ModelParams& params,
                                     const CampaignConfig& cfg) {
  if (name == "moments") return estimate_position_moments(params, cfg);
  if (name == "clt") return {clt_test(params, cfg)};
  if (name == "covariance") return {covariance_test(params, 0.5, 1.0, cfg)};
  if (name == "qsl") return qsl_campaign(params, cfg);
  if (name == "superdiffusive") return superdiffusive_campaign(params, cfg);
  if (name == "gof") {
    return {sampler_gof(cfg.n, params.beta(), cfg.paths, cfg.seed)};
  }
  if (name == "lil") return {lil_diagnostic(params, cfg)};
  throw ConfigError("unknown campaign '" + name + "'");
}

int cmd_verify(const RunConfig& c, bool n_given, bool paths_given,
               std::ostream& out, std::ostream& err) {
  const ModelParams params = c.params();
  std::vector<std::string> selected = c.campaigns;
  if (selected.empty()) selected = campaign_names();
  for (const auto& name : selected) {
    const auto& known = campaign_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw ConfigError("unknown campaign '" + name + "'");
    }
  }
  if (!c.preset.empty() && c.preset != "quick" && c.preset != "full") {
    throw ConfigError("preset must be quick or full");
  }
  std::vector<TestReport> reports;
  for (const auto& name : selected) {
    CampaignSize size = preset_size(c.preset, name, c);
    if (n_given) size.n = c.n;
    if (paths_given) size.paths = c.paths;
    if (const auto reason = mismatch_reason(name, params)) {
      TestReport r = skipped_report(name, params, *reason);
      r.n = size.n;
      r.paths = size.paths;
      r.seed = c.seed;
      reports.push_back(std::move(r));
      continue;
    }
    CampaignConfig cfg;
    cfg.n = size.n;
    cfg.paths = size.paths;
    cfg.seed = c.seed;
    cfg.threads = c.thread_count();
    for (auto& r : run_campaign(name, params, cfg)) {
      reports.push_back(std::move(r));
    }
  }

  std::size_t passed = 0, failed = 0, skipped = 0, info = 0;
  for (const auto& r : reports) {
    switch (r.status) {
      case ReportStatus::Pass: ++passed; break;
      case ReportStatus::Fail: ++failed; break;
      case ReportStatus::Skipped: ++skipped; break;
      case ReportStatus::Info: ++info; break;
    }
  }
  json doc = {{"params", params_json(params)},
              {"seed", c.seed},
              {"preset", c.preset},
              {"campaigns", selected},
              {"passed", failed == 0},
              {"counts",
               {{"pass", passed}, {"fail", failed}, {"skipped", skipped},
                {"info", info}}}};
  json list = json::array();
  for (const auto& r : reports) list.push_back(to_json(r));
  doc["reports"] = std::move(list);
  write_output(c.out, out, [&](std::ostream& s) { s << doc.dump(2) << '\n'; });
  if (!c.ledger.empty()) {
    append_ledger(c.ledger, reports);
  }
  std::ostream& log = (c.out.empty() || c.out == "-") ? err : out;
  for (const auto& r : reports) {
    log << to_string(r.status) << "  " << r.statistic << "  observed="
        << format_double(r.observed) << " target=" << format_double(r.target)
        << '\n';
  }
  return failed == 0 ? kExitOk : kExitVerifyFailed;
}

// Binds one CLI11 option to a scratch RunConfig field and records how to
// copy it over the file-loaded config when given.
struct Overrides {
  RunConfig scratch;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> list;

  template <class T>
  CLI::Option* bind(CLI::App& app, const std::string& flag, T RunConfig::*field,
                    const std::string& help) {
    CLI::Option* opt = app.add_option(flag, scratch.*field, help);
    list.emplace_back(opt, [this, field](RunConfig& c) { c.*field = scratch.*field; });
    return opt;
  }

  void apply(RunConfig& c) const {
    for (const auto& [opt, copy] : list) {
      if (opt->count() > 0) copy(c);
    }
  }
};

void add_params(CLI::App& app, Overrides& ov) {
  ov.bind(app, "--p", &RunConfig::p, "memory parameter p in [0, 1]");
  ov.bind(app, "--q", &RunConfig::q, "probability that the first step is +1");
  ov.bind(app, "--beta", &RunConfig::beta, "memory kernel exponent beta >= 0");
  ov.bind(app, "--regime", &RunConfig::regime,
          "force the regime: diffusive, critical, superdiffusive or auto");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Elephant random walk with a gradually increasing memory kernel"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "print help for every subcommand");

  std::string config_path;
  Overrides ov;
  bool diagnostics = false;
  bool figure = false;
  bool scaled = false;
  bool quick = false;
  bool full = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "key=value or JSON config file; flags override its values");
    ov.bind(*sub, "--out", &RunConfig::out, "output file ('-' for stdout)");
  };

  CLI::App* sim = app.add_subcommand("simulate", "simulate one trajectory to CSV");
  common(sim);
  add_params(*sim, ov);
  ov.bind(*sim, "--n", &RunConfig::n, "number of steps");
  ov.bind(*sim, "--seed", &RunConfig::seed, "master seed");
  ov.bind(*sim, "--stream", &RunConfig::stream, "stream id (path index)");
  ov.bind(*sim, "--checkpoints", &RunConfig::checkpoints,
          "geometric | final | every:K | list:a,b,...");
  ov.bind(*sim, "--summary", &RunConfig::summary,
          "summary JSON path (default <out>.summary.json)");
  ov.bind(*sim, "--threads", &RunConfig::threads, "worker threads (unused by a single path)");
  sim->add_flag("--diagnostics", diagnostics, "add martingale columns M and N");

  CLI::App* pmf = app.add_subcommand("pmf", "memory index mass function at time n+1");
  common(pmf);
  ov.bind(*pmf, "--n", &RunConfig::n, "support size n (at most 1000000)");
  ov.bind(*pmf, "--beta", &RunConfig::beta, "memory kernel exponent beta >= 0");
  pmf->add_flag("--figure", figure, "one column per beta in {0,1,2,3,10,100}");

  CLI::App* mom = app.add_subcommand("moments", "exact moment table");
  common(mom);
  add_params(*mom, ov);
  ov.bind(*mom, "--n", &RunConfig::n, "largest time");
  ov.bind(*mom, "--checkpoints", &RunConfig::checkpoints,
          "geometric | final | every:K | list:a,b,...");
  mom->add_flag("--scaled", scaled,
                "add Var(S_n) over n, n log n or n^(2(a(beta+1)-beta)) by regime");

  CLI::App* ver = app.add_subcommand("verify", "run verification campaigns");
  common(ver);
  add_params(*ver, ov);
  CLI::Option* n_opt = ov.bind(*ver, "--n", &RunConfig::n, "walk length for every campaign");
  CLI::Option* paths_opt =
      ov.bind(*ver, "--paths", &RunConfig::paths, "paths (or sampler draws) per campaign");
  ov.bind(*ver, "--seed", &RunConfig::seed, "master seed");
  ov.bind(*ver, "--threads", &RunConfig::threads, "worker threads (default AERW_THREADS)");
  ov.bind(*ver, "--ledger", &RunConfig::ledger, "append one CSV row per report");
  ov.bind(*ver, "--campaign", &RunConfig::campaigns,
          "moments, clt, covariance, qsl, superdiffusive, gof, lil (default all)")
      ->delimiter(',');
  CLI::Option* quick_opt = ver->add_flag("--quick", quick, "quick preset (minutes)");
  CLI::Option* full_opt = ver->add_flag("--full", full, "full preset (about an hour)");
  quick_opt->excludes(full_opt);

  CLI::App* con = app.add_subcommand("constants", "print regime constants as JSON");
  common(con);
  add_params(*con, ov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) {
      config = load_config(config_path);
    }
    ov.apply(config);
    if (diagnostics) config.diagnostics = true;
    if (quick) config.preset = "quick";
    if (full) config.preset = "full";

    if (sim->parsed()) return cmd_simulate(config, out, err);
    if (pmf->parsed()) return cmd_pmf(config, figure, out);
    if (mom->parsed()) return cmd_moments(config, scaled, out);
    if (con->parsed()) return cmd_constants(config, out);
    return cmd_verify(config, n_opt->count() > 0, paths_opt->count() > 0, out,
                      err);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace aerw::cli
