#include "mpt/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mpt {

using nlohmann::json;

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::parse_error: return "parse_error";
    case Errc::bad_field: return "bad_field";
    case Errc::bad_parameter: return "bad_parameter";
    case Errc::smax_exceeds_antennas: return "smax_exceeds_antennas";
    case Errc::buffer_too_small: return "buffer_too_small";
    case Errc::rates_not_ascending: return "rates_not_ascending";
    case Errc::threshold_mismatch: return "threshold_mismatch";
    case Errc::thresholds_not_ascending: return "thresholds_not_ascending";
    case Errc::bad_snr: return "bad_snr";
    case Errc::bad_traffic_weights: return "bad_traffic_weights";
    case Errc::invalid_composition: return "invalid_composition";
    case Errc::combinatorics_bound: return "combinatorics_bound";
    case Errc::enumeration_too_large: return "enumeration_too_large";
    case Errc::bad_batch_size: return "bad_batch_size";
    case Errc::subset_explosion: return "subset_explosion";
    case Errc::bad_state: return "bad_state";
    case Errc::not_converged: return "not_converged";
    case Errc::lambda_zero: return "lambda_zero";
    case Errc::negative_mass: return "negative_mass";
    case Errc::division_by_zero: return "division_by_zero";
    case Errc::heterogeneous_traffic: return "heterogeneous_traffic";
    case Errc::empty_queue: return "empty_queue";
    case Errc::invalid_duration: return "invalid_duration";
    case Errc::no_deliveries: return "no_deliveries";
    case Errc::io_error: return "io_error";
    case Errc::spec_error: return "spec_error";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

double db_to_linear(double db) {
  return std::pow(10.0, db / 10.0);
}

namespace {

bool all_equal(const std::vector<double>& v) {
  for (double x : v)
    if (x != v.front()) return false;
  return true;
}

void require_finite_nonneg(double x, const char* name) {
  if (!(x >= 0.0) || !std::isfinite(x))
    fail(Errc::bad_parameter, std::string(name) + " must be finite and >= 0");
}

}  // namespace

ValidatedConfig validate(SystemConfig config) {
  if (config.n_nodes < 1)
    fail(Errc::bad_parameter, "n_nodes must be a positive integer");
  if (config.n_antennas < 1)
    fail(Errc::bad_parameter, "n_antennas must be a positive integer");
  if (config.buffer_size < 1)
    fail(Errc::bad_parameter, "buffer_size must be a positive integer");
  if (config.s_max < 1)
    fail(Errc::bad_parameter, "s_max must be a positive integer");
  if (config.s_max > config.n_antennas)
    fail(Errc::smax_exceeds_antennas,
         "s_max (" + std::to_string(config.s_max) + ") exceeds n_antennas (" +
             std::to_string(config.n_antennas) + ")");
  // Otherwise a departure can leave too few packets to fill the next batch.
  if (config.buffer_size < 2 * config.s_max)
    fail(Errc::buffer_too_small,
         "buffer_size (" + std::to_string(config.buffer_size) +
             ") must be at least 2*s_max (" +
             std::to_string(2 * config.s_max) + ")");

  require_finite_nonneg(config.aggregate_rate, "aggregate_rate");
  if (!(config.packet_error_prob >= 0.0 && config.packet_error_prob <= 1.0))
    fail(Errc::bad_parameter, "packet_error_prob must lie in [0,1]");
  require_finite_nonneg(config.frame_lengths.l_sb, "frame_lengths.l_sb");
  require_finite_nonneg(config.frame_lengths.l_tr, "frame_lengths.l_tr");
  require_finite_nonneg(config.frame_lengths.l_csi, "frame_lengths.l_csi");
  require_finite_nonneg(config.frame_lengths.l_d, "frame_lengths.l_d");
  require_finite_nonneg(config.frame_lengths.l_ack, "frame_lengths.l_ack");

  if (config.rates.empty())
    fail(Errc::rates_not_ascending, "rates must be a nonempty ascending list");
  for (std::size_t i = 0; i < config.rates.size(); ++i) {
    if (!(config.rates[i] > 0.0) || !std::isfinite(config.rates[i]))
      fail(Errc::rates_not_ascending, "rates must be finite and positive");
    if (i > 0 && !(config.rates[i] > config.rates[i - 1]))
      fail(Errc::rates_not_ascending, "rates must be strictly ascending");
  }

  if (config.snr_thresholds_db.size() != config.rates.size())
    fail(Errc::threshold_mismatch,
         "snr_thresholds must have one entry per rate");
  for (std::size_t i = 0; i < config.snr_thresholds_db.size(); ++i) {
    double t = config.snr_thresholds_db[i];
    if (std::isnan(t)) fail(Errc::thresholds_not_ascending, "threshold is NaN");
    bool last = (i + 1 == config.snr_thresholds_db.size());
    if (!last && !std::isfinite(t))
      fail(Errc::thresholds_not_ascending,
           "only the last snr_threshold may be +inf");
    if (i > 0 && !(t > config.snr_thresholds_db[i - 1]))
      fail(Errc::thresholds_not_ascending,
           "snr_thresholds must be strictly ascending");
  }

  if (config.node_mean_snr_db.size() == 1 && config.n_nodes > 1)
    config.node_mean_snr_db.assign(config.n_nodes,
                                   config.node_mean_snr_db.front());
  if (static_cast<int>(config.node_mean_snr_db.size()) != config.n_nodes)
    fail(Errc::bad_snr, "node_mean_snr must have one entry per node");
  for (double s : config.node_mean_snr_db)
    if (!std::isfinite(s)) fail(Errc::bad_snr, "node_mean_snr must be finite");

  if (config.traffic_weights.empty())
    config.traffic_weights.assign(config.n_nodes, 1.0);
  if (config.traffic_weights.size() == 1 && config.n_nodes > 1)
    config.traffic_weights.assign(config.n_nodes,
                                  config.traffic_weights.front());
  if (static_cast<int>(config.traffic_weights.size()) != config.n_nodes)
    fail(Errc::bad_traffic_weights,
         "traffic_weights must have one entry per node");
  double wsum = 0.0;
  for (double w : config.traffic_weights) {
    if (!(w >= 0.0) || !std::isfinite(w))
      fail(Errc::bad_traffic_weights,
           "traffic_weights must be finite and >= 0");
    wsum += w;
  }
  if (!(wsum > 0.0))
    fail(Errc::bad_traffic_weights, "traffic_weights must sum to > 0");

  if (config.ideal_channel) config.packet_error_prob = 0.0;

  ValidatedConfig out;
  out.cfg_ = std::move(config);
  out.total_weight_ = wsum;
  out.homogeneous_traffic_ = all_equal(out.cfg_.traffic_weights);
  out.homogeneous_snr_ = all_equal(out.cfg_.node_mean_snr_db);
  out.mean_snr_linear_.reserve(out.cfg_.node_mean_snr_db.size());
  for (double s : out.cfg_.node_mean_snr_db)
    out.mean_snr_linear_.push_back(db_to_linear(s));
  out.rate_upper_linear_.resize(out.cfg_.rates.size());
  for (std::size_t i = 0; i + 1 < out.cfg_.rates.size(); ++i)
    out.rate_upper_linear_[i] = db_to_linear(out.cfg_.snr_thresholds_db[i]);
  out.rate_upper_linear_.back() = std::numeric_limits<double>::infinity();
  return out;
}

namespace {

double number_or_inf(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf")
      return std::numeric_limits<double>::infinity();
  }
  fail(Errc::bad_field, "field '" + key + "': expected a number or \"inf\"");
}

std::vector<double> scalar_or_list(const json& v, const std::string& key) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(number_or_inf(e, key));
  } else {
    out.push_back(number_or_inf(v, key));
  }
  return out;
}

const json& require_key(const json& doc, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end()) fail(Errc::bad_field, "missing field '" + key + "'");
  return *it;
}

double require_number(const json& doc, const std::string& key) {
  const json& v = require_key(doc, key);
  if (!v.is_number()) fail(Errc::bad_field, "field '" + key + "' must be a number");
  return v.get<double>();
}

int require_int(const json& doc, const std::string& key) {
  const json& v = require_key(doc, key);
  if (!v.is_number_integer())
    fail(Errc::bad_field, "field '" + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

SystemConfig parse_config_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(Errc::parse_error, "config must be a JSON object");

  static const char* known[] = {
      "n_nodes", "n_antennas", "buffer_size", "s_max", "aggregate_rate",
      "packet_error_prob", "frame_lengths", "rates", "snr_thresholds",
      "node_mean_snr", "traffic_weights", "ideal_channel"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || (it.key() == k);
    if (!ok) fail(Errc::bad_field, "unknown field '" + it.key() + "'");
  }

  SystemConfig cfg;
  cfg.n_nodes = require_int(doc, "n_nodes");
  cfg.n_antennas = require_int(doc, "n_antennas");
  cfg.buffer_size = require_int(doc, "buffer_size");
  cfg.s_max = require_int(doc, "s_max");
  cfg.aggregate_rate = require_number(doc, "aggregate_rate");
  cfg.packet_error_prob = require_number(doc, "packet_error_prob");

  const json& fl = require_key(doc, "frame_lengths");
  if (!fl.is_object())
    fail(Errc::bad_field, "frame_lengths must be an object");
  cfg.frame_lengths.l_sb = require_number(fl, "l_sb");
  cfg.frame_lengths.l_tr = require_number(fl, "l_tr");
  cfg.frame_lengths.l_csi = require_number(fl, "l_csi");
  cfg.frame_lengths.l_d = require_number(fl, "l_d");
  cfg.frame_lengths.l_ack = require_number(fl, "l_ack");
  for (auto it = fl.begin(); it != fl.end(); ++it) {
    const std::string& k = it.key();
    if (k != "l_sb" && k != "l_tr" && k != "l_csi" && k != "l_d" && k != "l_ack")
      fail(Errc::bad_field, "unknown frame_lengths field '" + k + "'");
  }

  const json& rates = require_key(doc, "rates");
  if (!rates.is_array()) fail(Errc::bad_field, "rates must be an array");
  for (const auto& r : rates) cfg.rates.push_back(number_or_inf(r, "rates"));

  cfg.snr_thresholds_db = scalar_or_list(require_key(doc, "snr_thresholds"),
                                         "snr_thresholds");
  cfg.node_mean_snr_db =
      scalar_or_list(require_key(doc, "node_mean_snr"), "node_mean_snr");
  if (doc.contains("traffic_weights"))
    cfg.traffic_weights =
        scalar_or_list(doc["traffic_weights"], "traffic_weights");
  if (doc.contains("ideal_channel")) {
    if (!doc["ideal_channel"].is_boolean())
      fail(Errc::bad_field, "ideal_channel must be a boolean");
    cfg.ideal_channel = doc["ideal_channel"].get<bool>();
  }
  return cfg;
}

ValidatedConfig load_config_json(const std::string& text) {
  return validate(parse_config_json(text));
}

ValidatedConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config_json(ss.str());
}

}  // namespace mpt
