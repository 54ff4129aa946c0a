// Command-line front end: analytic solves, simulations, parameter sweeps and
// model-vs-simulation comparisons over JSON scenario files, with CSV output.
// All engine work goes through the C API in mpt.h.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mpt.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRunFailure = 1;  // point errors or tolerance failures
constexpr int kExitUsage = 2;       // bad flags, bad spec, bad base config

[[noreturn]] void die_usage(const std::string& msg) {
  std::cerr << "mptq: " << msg << "\n";
  std::exit(kExitUsage);
}

std::string fmt9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& p : split(text, ',')) {
    try {
      seeds.push_back(std::stoull(p));
    } catch (...) {
      die_usage("bad seed '" + p + "'");
    }
  }
  if (seeds.empty()) die_usage("empty seed list");
  return seeds;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  for (const auto& p : split(text, ',')) {
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(p, &pos));
      if (pos != p.size()) throw std::invalid_argument(p);
    } catch (...) {
      die_usage("bad value '" + p + "'");
    }
  }
  return values;
}

json load_scenario(const std::string& path, bool ideal_flag) {
  std::ifstream in(path);
  if (!in) die_usage("cannot open config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    die_usage("config is not valid JSON: " + std::string(e.what()));
  }
  if (ideal_flag) doc["ideal_channel"] = true;
  return doc;
}

// RAII wrappers over the C handles.
struct Config {
  mpt_config_t* h = nullptr;
  Config() = default;
  explicit Config(mpt_config_t* p) : h(p) {}
  Config(Config&& o) noexcept : h(o.h) { o.h = nullptr; }
  Config& operator=(Config&& o) noexcept {
    std::swap(h, o.h);
    return *this;
  }
  Config(const Config&) = delete;
  ~Config() { mpt_config_free(h); }
};

Config make_config(const json& doc, std::string* error) {
  mpt_config_t* h = nullptr;
  if (mpt_config_from_json(doc.dump().c_str(), &h) != MPT_OK) {
    *error = mpt_last_error();
    return Config{};
  }
  return Config{h};
}

double scenario_payload_bits(const json& doc) {
  if (!doc.contains("frame_lengths") || !doc["frame_lengths"].contains("l_d"))
    die_usage("config lacks frame_lengths.l_d");
  return doc["frame_lengths"]["l_d"].get<double>();
}

// Applies one sweep-axis value to a scenario document.
json apply_axis(json doc, const std::string& axis, double value) {
  auto as_uniform_scalar = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_array()) return;
    const auto& arr = doc[key];
    for (const auto& v : arr)
      if (v != arr.front())
        throw std::runtime_error(
            std::string("sweeping n_nodes needs a uniform '") + key + "' list");
    doc[key] = arr.front();
  };

  if (axis == "load") {
    doc["aggregate_rate"] = value / scenario_payload_bits(doc);
  } else if (axis == "n_nodes") {
    as_uniform_scalar("node_mean_snr");
    as_uniform_scalar("traffic_weights");
    doc["n_nodes"] = static_cast<int>(std::llround(value));
  } else if (axis == "buffer_size") {
    doc["buffer_size"] = static_cast<int>(std::llround(value));
  } else if (axis == "s_max") {
    doc["s_max"] = static_cast<int>(std::llround(value));
  } else if (axis == "packet_error_prob") {
    doc["packet_error_prob"] = value;
  } else {
    die_usage("unknown sweep axis '" + axis + "'");
  }
  return doc;
}

struct MetricSet {
  double v[MPT_METRIC_COUNT] = {0, 0, 0, 0, 0};
};

struct ResultRow {
  std::string mode;
  std::string axis = "none";
  double axis_value = 0.0;
  double load_mbps = 0.0;
  int n_nodes = 0, n_antennas = 0, buffer = 0, s_max = 0;
  double p_e = 0.0;
  bool ideal = false;
  int seeds = 0;
  double duration_s = 0.0, warmup_s = 0.0;
  bool has_analytic = false, has_sim = false;
  MetricSet analytic, sim_mean, sim_stderr;
  std::string status = "ok";
  bool failed = false;    // hard error at this point
  bool tol_fail = false;  // compare tolerance violated
  double runtime_s = 0.0; // not emitted: kept for the run summary
};

const char* kSweepHeader =
    "mode,axis,axis_value,load_mbps,n_nodes,n_antennas,buffer,s_max,p_e,"
    "ideal_channel,seeds,duration_s,warmup_s,"
    "p_b_analytic,throughput_bps_analytic,mean_queue_analytic,"
    "mean_delay_s_analytic,mean_batch_analytic,"
    "p_b_sim,p_b_sim_stderr,throughput_bps_sim,throughput_bps_sim_stderr,"
    "mean_queue_sim,mean_queue_sim_stderr,mean_delay_s_sim,"
    "mean_delay_s_sim_stderr,mean_batch_sim,mean_batch_sim_stderr,status";

void emit_sweep_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kSweepHeader << "\n";
  for (const auto& r : rows) {
    out << r.mode << ',' << r.axis << ',' << fmt9(r.axis_value) << ','
        << fmt9(r.load_mbps) << ',' << r.n_nodes << ',' << r.n_antennas << ','
        << r.buffer << ',' << r.s_max << ',' << fmt9(r.p_e) << ','
        << (r.ideal ? 1 : 0) << ',' << r.seeds << ',' << fmt9(r.duration_s)
        << ',' << fmt9(r.warmup_s);
    for (int i = 0; i < MPT_METRIC_COUNT; ++i)
      out << ',' << (r.has_analytic ? fmt9(r.analytic.v[i]) : std::string());
    for (int i = 0; i < MPT_METRIC_COUNT; ++i) {
      out << ',' << (r.has_sim ? fmt9(r.sim_mean.v[i]) : std::string());
      out << ',' << (r.has_sim ? fmt9(r.sim_stderr.v[i]) : std::string());
    }
    out << ',' << csv_quote(r.status) << "\n";
  }
}

void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  if (path.empty()) {
    emit_sweep_csv(rows, std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) die_usage("cannot open output file '" + path + "'");
  emit_sweep_csv(rows, out);
  if (!out.good()) die_usage("failed writing '" + path + "'");
}

void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)>& fn) {
  const int workers =
      std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  for (auto& t : pool) t.join();
}

struct RunOptions {
  std::vector<std::uint64_t> seeds{1};
  double duration = 100.0;
  double warmup = -1.0;  // negative: default to 5% of duration
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  double tol_se = 3.0;
};

double effective_warmup(const RunOptions& opt) {
  return opt.warmup >= 0.0 ? opt.warmup : 0.05 * opt.duration;
}

bool analytic_point(const json& doc, MetricSet* out, std::string* error) {
  Config cfg = make_config(doc, error);
  if (!cfg.h) return false;
  mpt_analysis_t* an = nullptr;
  if (mpt_analyze(cfg.h, &an) != MPT_OK) {
    *error = mpt_last_error();
    return false;
  }
  mpt_analysis_metrics(an, out->v);
  mpt_analysis_free(an);
  return true;
}

bool sim_point_one_seed(const json& doc, std::uint64_t seed, double duration,
                        double warmup, MetricSet* out, std::string* error) {
  Config cfg = make_config(doc, error);
  if (!cfg.h) return false;
  mpt_sim_t* sim = nullptr;
  if (mpt_simulate(cfg.h, seed, duration, warmup, &sim) != MPT_OK) {
    *error = mpt_last_error();
    return false;
  }
  const mpt_status st = mpt_sim_metrics(sim, out->v);
  if (st != MPT_OK) *error = mpt_last_error();
  mpt_sim_free(sim);
  return st == MPT_OK;
}

void aggregate_seeds(const std::vector<MetricSet>& per_seed, MetricSet* mean,
                     MetricSet* stderr_out) {
  const std::size_t n = per_seed.size();
  for (int i = 0; i < MPT_METRIC_COUNT; ++i) {
    double m = 0.0;
    for (const auto& s : per_seed) m += s.v[i];
    m /= static_cast<double>(n);
    mean->v[i] = m;
    double var = 0.0;
    for (const auto& s : per_seed) var += (s.v[i] - m) * (s.v[i] - m);
    stderr_out->v[i] =
        n > 1 ? std::sqrt(var / static_cast<double>(n - 1) /
                          static_cast<double>(n))
              : 0.0;
  }
}

// Fills the scenario-derived columns; returns false if the config is bad.
bool describe_point(const json& doc, ResultRow* row, std::string* error) {
  Config cfg = make_config(doc, error);
  if (!cfg.h) return false;
  row->n_nodes = mpt_config_n_nodes(cfg.h);
  row->n_antennas = mpt_config_n_antennas(cfg.h);
  row->buffer = mpt_config_buffer_size(cfg.h);
  row->s_max = mpt_config_s_max(cfg.h);
  row->p_e = mpt_config_packet_error_prob(cfg.h);
  row->ideal = mpt_config_ideal_channel(cfg.h) != 0;
  row->load_mbps = mpt_config_aggregate_rate(cfg.h) *
                   mpt_config_payload_bits(cfg.h) / 1e6;
  return true;
}

double compare_tolerance(double analytic, double se, double tol_se) {
  return tol_se * se + 1e-6 * std::max(1.0, std::abs(analytic));
}

const char* kMetricNames[MPT_METRIC_COUNT] = {
    "blocking_probability", "throughput_bps", "mean_queue_pkts",
    "mean_delay_s", "mean_batch_pkts"};

// Runs one sweep point (analytic and/or simulation, all seeds). Sim seeds are
// parallelized by the caller across (point, seed) tasks, so this only
// assembles the row.
ResultRow assemble_row(const json& doc, const std::string& mode,
                       const std::string& axis, double axis_value,
                       const RunOptions& opt, bool has_analytic,
                       const MetricSet& analytic,
                       const std::vector<MetricSet>& per_seed,
                       std::vector<std::string> errors) {
  ResultRow row;
  row.mode = mode;
  row.axis = axis;
  row.axis_value = axis_value;
  row.seeds = static_cast<int>(opt.seeds.size());
  row.duration_s = opt.duration;
  row.warmup_s = effective_warmup(opt);

  std::string derr;
  if (!describe_point(doc, &row, &derr)) {
    row.status = derr;
    row.failed = true;
    return row;
  }
  errors.erase(std::remove(errors.begin(), errors.end(), std::string()),
               errors.end());
  if (!errors.empty()) {
    row.status = errors.front();
    row.failed = true;
    return row;
  }
  if (mode != "simulate") {
    row.has_analytic = has_analytic;
    row.analytic = analytic;
  }
  if (mode != "analytic") {
    row.has_sim = true;
    aggregate_seeds(per_seed, &row.sim_mean, &row.sim_stderr);
  }
  if (mode == "compare" && row.has_analytic && row.has_sim) {
    for (int i = 0; i < MPT_METRIC_COUNT; ++i) {
      const double gap = std::abs(row.analytic.v[i] - row.sim_mean.v[i]);
      if (gap > compare_tolerance(row.analytic.v[i], row.sim_stderr.v[i],
                                  opt.tol_se)) {
        row.tol_fail = true;
        row.status = std::string("tolerance: ") + kMetricNames[i];
        break;
      }
    }
  }
  return row;
}

int run_sweep(const json& base, const std::string& axis,
              const std::vector<double>& values, const std::string& mode,
              const RunOptions& opt, const std::string& out_path) {
  if (values.empty()) die_usage("sweep needs a nonempty --values list");

  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n_points = values.size();
  std::vector<json> docs(n_points);
  std::vector<std::string> point_errors(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    try {
      docs[i] = apply_axis(base, axis, values[i]);
    } catch (const std::exception& e) {
      point_errors[i] = e.what();
    }
  }

  // analytic phase, one task per point
  std::vector<MetricSet> analytic(n_points);
  std::vector<char> analytic_ok(n_points, 0);
  const bool het_to_sim_only = [&] {
    std::string err;
    Config cfg = make_config(docs[0], &err);
    return cfg.h && mode == "compare" &&
           mpt_config_homogeneous_traffic(cfg.h) == 0;
  }();
  const std::string effective_mode =
      het_to_sim_only ? "simulate" : mode;
  if (effective_mode != "simulate") {
    parallel_for(n_points, opt.jobs, [&](std::size_t i) {
      if (!point_errors[i].empty()) return;
      std::string err;
      if (analytic_point(docs[i], &analytic[i], &err))
        analytic_ok[i] = 1;
      else
        point_errors[i] = err;
    });
  }

  // simulation phase, one task per (point, seed)
  const std::size_t n_seeds = opt.seeds.size();
  std::vector<std::vector<MetricSet>> per_seed(
      n_points, std::vector<MetricSet>(n_seeds));
  std::vector<std::vector<std::string>> seed_errors(
      n_points, std::vector<std::string>(n_seeds));
  if (effective_mode != "analytic") {
    parallel_for(n_points * n_seeds, opt.jobs, [&](std::size_t t) {
      const std::size_t i = t / n_seeds;
      const std::size_t s = t % n_seeds;
      if (!point_errors[i].empty()) return;
      std::string err;
      if (!sim_point_one_seed(docs[i], opt.seeds[s], opt.duration,
                              effective_warmup(opt), &per_seed[i][s], &err))
        seed_errors[i][s] = err;
    });
  }

  std::vector<ResultRow> rows;
  rows.reserve(n_points);
  bool any_failed = false, any_tol = false;
  for (std::size_t i = 0; i < n_points; ++i) {
    ResultRow row;
    if (!point_errors[i].empty()) {
      row.mode = effective_mode;
      row.axis = axis;
      row.axis_value = values[i];
      row.seeds = static_cast<int>(opt.seeds.size());
      row.duration_s = opt.duration;
      row.warmup_s = effective_warmup(opt);
      row.status = point_errors[i];
      row.failed = true;
      describe_point(docs[i], &row, &point_errors[i]);
    } else {
      row = assemble_row(docs[i], effective_mode, axis, values[i], opt,
                         analytic_ok[i] != 0, analytic[i], per_seed[i],
                         seed_errors[i]);
    }
    if (het_to_sim_only && !row.failed)
      row.status = "warning: heterogeneous traffic, simulate-only";
    any_failed = any_failed || row.failed;
    any_tol = any_tol || row.tol_fail;
    rows.push_back(std::move(row));
  }

  write_csv(rows, out_path);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::cerr << "sweep: " << n_points << " points, mode " << effective_mode
            << ", " << fmt9(elapsed) << " s\n";
  if (any_failed) return kExitRunFailure;
  if (any_tol) return kExitRunFailure;
  return kExitOk;
}

void print_metric_table(const std::string& label, const MetricSet& m) {
  std::cout << label << "\n";
  for (int i = 0; i < MPT_METRIC_COUNT; ++i)
    std::cout << "  " << kMetricNames[i] << " = " << fmt9(m.v[i]) << "\n";
}

int run_solve(const json& doc, const std::string& out_path) {
  MetricSet m;
  std::string err;
  if (!analytic_point(doc, &m, &err)) die_usage("solve failed: " + err);
  print_metric_table("analytic metrics", m);
  if (!out_path.empty()) {
    RunOptions opt;
    opt.seeds.clear();
    std::vector<ResultRow> rows{assemble_row(doc, "analytic", "none", 0.0, opt,
                                             true, m, {}, {})};
    rows[0].seeds = 0;
    rows[0].duration_s = 0.0;
    rows[0].warmup_s = 0.0;
    write_csv(rows, out_path);
  }
  return kExitOk;
}

int run_simulate(const json& doc, const RunOptions& opt,
                 const std::string& out_path) {
  const std::size_t n = opt.seeds.size();
  std::vector<MetricSet> per_seed(n);
  std::vector<std::string> errors(n);
  parallel_for(n, opt.jobs, [&](std::size_t s) {
    sim_point_one_seed(doc, opt.seeds[s], opt.duration, effective_warmup(opt),
                       &per_seed[s], &errors[s]);
  });
  for (const auto& e : errors)
    if (!e.empty()) {
      std::cerr << "mptq: simulation failed: " << e << "\n";
      return kExitRunFailure;
    }
  MetricSet mean, se;
  aggregate_seeds(per_seed, &mean, &se);
  std::cout << "simulation over " << n << " seed(s), duration "
            << fmt9(opt.duration) << " s, warmup " << fmt9(effective_warmup(opt))
            << " s\n";
  for (int i = 0; i < MPT_METRIC_COUNT; ++i)
    std::cout << "  " << kMetricNames[i] << " = " << fmt9(mean.v[i]) << " +- "
              << fmt9(se.v[i]) << "\n";
  if (!out_path.empty()) {
    ResultRow row = assemble_row(doc, "simulate", "none", 0.0, opt, false, {},
                                 per_seed, errors);
    write_csv({row}, out_path);
    if (row.failed) return kExitRunFailure;
  }
  return kExitOk;
}

int run_compare(const json& doc, const RunOptions& opt,
                const std::string& out_path) {
  std::string err;
  Config cfg = make_config(doc, &err);
  if (!cfg.h) die_usage("bad config: " + err);

  const bool het = mpt_config_homogeneous_traffic(cfg.h) == 0;
  MetricSet analytic;
  if (!het && !analytic_point(doc, &analytic, &err))
    die_usage("analytic solve failed: " + err);

  const std::size_t n = opt.seeds.size();
  std::vector<MetricSet> per_seed(n);
  std::vector<std::string> errors(n);
  parallel_for(n, opt.jobs, [&](std::size_t s) {
    sim_point_one_seed(doc, opt.seeds[s], opt.duration, effective_warmup(opt),
                       &per_seed[s], &errors[s]);
  });
  for (const auto& e : errors)
    if (!e.empty()) {
      std::cerr << "mptq: simulation failed: " << e << "\n";
      return kExitRunFailure;
    }
  MetricSet mean, se;
  aggregate_seeds(per_seed, &mean, &se);

  std::cout << "analytic vs simulation over " << n << " seed(s), duration "
            << fmt9(opt.duration) << " s\n";
  std::cout << "pass criterion: |gap| <= " << fmt9(opt.tol_se)
            << "*stderr + 1e-6*max(1, |analytic|)\n";
  if (het) {
    std::cout << "warning: heterogeneous traffic weights, the analytic model "
                 "does not apply; reporting simulation only\n";
    for (int i = 0; i < MPT_METRIC_COUNT; ++i)
      std::cout << "  " << kMetricNames[i] << " = " << fmt9(mean.v[i])
                << " +- " << fmt9(se.v[i]) << "\n";
    return kExitOk;
  }

  bool all_pass = true;
  std::ostringstream csv;
  csv << "metric,analytic,sim_mean,sim_stderr,abs_gap,rel_gap,tolerance,pass\n";
  for (int i = 0; i < MPT_METRIC_COUNT; ++i) {
    const double gap = std::abs(analytic.v[i] - mean.v[i]);
    const double tol = compare_tolerance(analytic.v[i], se.v[i], opt.tol_se);
    const double rel =
        analytic.v[i] != 0.0 ? gap / std::abs(analytic.v[i]) : 0.0;
    const bool pass = gap <= tol;
    all_pass = all_pass && pass;
    std::printf("  %-22s analytic=%-15.9g sim=%-15.9g +-%-12.9g gap=%-12.9g %s\n",
                kMetricNames[i], analytic.v[i], mean.v[i], se.v[i], gap,
                pass ? "pass" : "FAIL");
    csv << kMetricNames[i] << ',' << fmt9(analytic.v[i]) << ','
        << fmt9(mean.v[i]) << ',' << fmt9(se.v[i]) << ',' << fmt9(gap) << ','
        << fmt9(rel) << ',' << fmt9(tol) << ',' << (pass ? 1 : 0) << "\n";
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) die_usage("cannot open output file '" + out_path + "'");
    out << csv.str();
  }
  return all_pass ? kExitOk : kExitRunFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"link-layer performance toolkit for multi-antenna downlink "
               "batch transmission (analytic solver + event simulator)"};
  app.require_subcommand(1);

  std::string config_path, out_path, seed_text = "1", axis, values_text;
  std::string mode = "analytic";
  bool ideal = false;
  RunOptions opt;
  if (opt.jobs <= 0) opt.jobs = 2;

  auto add_common = [&](CLI::App* cmd, bool with_sim) {
    cmd->add_option("--config", config_path, "scenario JSON file")->required();
    cmd->add_option("--out", out_path, "write CSV to this path");
    cmd->add_flag("--ideal-channel", ideal,
                  "force top rate and zero packet errors");
    if (with_sim) {
      cmd->add_option("--seed", seed_text, "comma-separated seed list");
      cmd->add_option("--duration", opt.duration, "simulated seconds per run");
      cmd->add_option("--warmup", opt.warmup,
                      "warmup seconds excluded from statistics "
                      "(default 5% of duration)");
      cmd->add_option("--jobs", opt.jobs, "worker threads");
    }
  };

  CLI::App* solve = app.add_subcommand("solve", "analytic metrics for one scenario");
  add_common(solve, false);

  CLI::App* simulate = app.add_subcommand("simulate", "simulate one scenario");
  add_common(simulate, true);

  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  add_common(sweep, true);
  sweep->add_option("--axis", axis,
                    "one of: load, n_nodes, buffer_size, s_max, "
                    "packet_error_prob")
      ->required();
  sweep->add_option("--values", values_text, "comma-separated axis values")
      ->required();
  sweep->add_option("--mode", mode, "analytic | simulate | compare");

  CLI::App* compare =
      app.add_subcommand("compare", "analytic vs simulated metrics");
  add_common(compare, true);
  compare->add_option("--tol-se", opt.tol_se,
                      "pass threshold in simulation standard errors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  opt.seeds = parse_seeds(seed_text);
  if (opt.jobs < 1) opt.jobs = 1;
  if (!(opt.duration > 0.0)) die_usage("--duration must be positive");
  const json doc = load_scenario(config_path, ideal);

  if (app.got_subcommand(solve)) return run_solve(doc, out_path);
  if (app.got_subcommand(simulate)) return run_simulate(doc, opt, out_path);
  if (app.got_subcommand(compare)) return run_compare(doc, opt, out_path);
  if (app.got_subcommand(sweep)) {
    const std::string m = mode;
    if (m != "analytic" && m != "simulate" && m != "compare")
      die_usage("unknown mode '" + m + "'");
    return run_sweep(doc, axis, parse_values(values_text), m, opt, out_path);
  }
  return kExitUsage;
}
