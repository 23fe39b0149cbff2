// SPDX-License-Identifier: Apache-2.0
#include "pocmt/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

namespace pocmt {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
  if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (...) {
    throw ConfigError(key, "expected a number, got '" + v + "'");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(key, "expected true/false, got '" + v + "'");
}

std::string format_double(double d) {
  if (std::isinf(d)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  return buf;
}

struct KeyEntry {
  std::function<void(ExperimentConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
  bool alias = false;  // aliases parse but are not serialized
};

using KeyTable = std::map<std::string, KeyEntry>;

KeyEntry make_double(std::function<double&(ExperimentConfig&)> ref, bool alias = false) {
  return KeyEntry{
      [ref](ExperimentConfig& c, const std::string& k, const std::string& v) {
        ref(c) = parse_double(k, v);
      },
      [ref](const ExperimentConfig& c) {
        return format_double(ref(const_cast<ExperimentConfig&>(c)));
      },
      alias};
}

template <typename Int>
KeyEntry make_int(std::function<Int&(ExperimentConfig&)> ref) {
  return KeyEntry{
      [ref](ExperimentConfig& c, const std::string& k, const std::string& v) {
        ref(c) = static_cast<Int>(parse_int(k, v));
      },
      [ref](const ExperimentConfig& c) {
        return std::to_string(ref(const_cast<ExperimentConfig&>(c)));
      }};
}

KeyEntry make_bool(std::function<bool&(ExperimentConfig&)> ref) {
  return KeyEntry{
      [ref](ExperimentConfig& c, const std::string& k, const std::string& v) {
        ref(c) = parse_bool(k, v);
      },
      [ref](const ExperimentConfig& c) {
        return ref(const_cast<ExperimentConfig&>(c)) ? "true" : "false";
      }};
}

const KeyTable& key_table() {
  static const KeyTable table = [] {
    KeyTable t;

    t["timeline.epochs_per_window"] =
        make_int<std::int64_t>([](ExperimentConfig& c) -> std::int64_t& {
          return c.epochs_per_window;
        });
    t["timeline.horizon_epochs"] =
        make_int<std::int64_t>([](ExperimentConfig& c) -> std::int64_t& {
          return c.horizon_epochs;
        });

    auto proto = [&t](const std::string& name, double ProtocolParams::* field,
                      const std::string& alias_name) {
      auto ref = [field](ExperimentConfig& c) -> double& {
        return c.protocol.*field;
      };
      t["protocol." + name] = make_double(ref);
      if (!alias_name.empty()) {
        t["protocol." + alias_name] = make_double(ref, /*alias=*/true);
      }
    };
    proto("weight_engagement", &ProtocolParams::weight_engagement, "alpha");
    proto("weight_participation", &ProtocolParams::weight_participation, "beta");
    proto("weight_availability", &ProtocolParams::weight_availability, "gamma");
    proto("boost_engagement", &ProtocolParams::boost_engagement, "kappa_h");
    proto("boost_participation", &ProtocolParams::boost_participation, "kappa_p");
    proto("boost_availability", &ProtocolParams::boost_availability, "kappa_u");
    proto("decay_rate", &ProtocolParams::decay_rate, "lambda");
    proto("slash_factor", &ProtocolParams::slash_factor, "delta");
    proto("leader_scale", &ProtocolParams::leader_scale, "theta");
    proto("committee_scale", &ProtocolParams::committee_scale, "");
    proto("availability_cap", &ProtocolParams::availability_cap, "");
    proto("engagement_decay", &ProtocolParams::engagement_decay, "");

    t["hco.honest_solve_prob"] = make_double(
        [](ExperimentConfig& c) -> double& { return c.hco.honest_solve_prob; });
    t["hco.automated_solve_prob"] = make_double([](ExperimentConfig& c) -> double& {
      return c.hco.automated_solve_prob;
    });
    t["hco.challenge_rate"] = make_int<int>(
        [](ExperimentConfig& c) -> int& { return c.hco.challenge_rate.base; });
    t["hco.challenge_rate_cycle"] = KeyEntry{
        [](ExperimentConfig& c, const std::string& k, const std::string& v) {
          c.hco.challenge_rate.cycle.clear();
          std::stringstream ss(v);
          std::string item;
          while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            c.hco.challenge_rate.cycle.push_back(
                static_cast<int>(parse_int(k, item)));
          }
        },
        [](const ExperimentConfig& c) {
          std::string out;
          for (std::size_t i = 0; i < c.hco.challenge_rate.cycle.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(c.hco.challenge_rate.cycle[i]);
          }
          return out;
        }};
    t["hco.tau_h"] = make_int<int>(
        [](ExperimentConfig& c) -> int& { return c.hco.human_solve_cap; });

    t["honest.count"] =
        make_int<int>([](ExperimentConfig& c) -> int& { return c.honest.count; });
    t["honest.online_prob"] = make_double(
        [](ExperimentConfig& c) -> double& { return c.honest.online_prob; });

    t["adversary.sybil_count"] = make_int<int>(
        [](ExperimentConfig& c) -> int& { return c.adversary.sybil_count; });
    t["adversary.humans"] = make_int<int>(
        [](ExperimentConfig& c) -> int& { return c.adversary.humans; });
    t["adversary.strategy"] = KeyEntry{
        [](ExperimentConfig& c, const std::string& k, const std::string& v) {
          if (v == "concentrate") c.adversary.strategy = AllocationStrategy::concentrate;
          else if (v == "spread") c.adversary.strategy = AllocationStrategy::spread;
          else if (v == "rotate") c.adversary.strategy = AllocationStrategy::rotate;
          else throw ConfigError(k, "expected concentrate/spread/rotate");
        },
        [](const ExperimentConfig& c) -> std::string {
          switch (c.adversary.strategy) {
            case AllocationStrategy::concentrate: return "concentrate";
            case AllocationStrategy::spread: return "spread";
            case AllocationStrategy::rotate: return "rotate";
          }
          return "concentrate";
        }};
    t["adversary.rotate_period"] = make_int<int>(
        [](ExperimentConfig& c) -> int& { return c.adversary.rotate_period; });
    t["adversary.online_policy"] = KeyEntry{
        [](ExperimentConfig& c, const std::string& k, const std::string& v) {
          if (v == "always") c.adversary.online_policy = OnlinePolicy::always;
          else if (v == "offline") c.adversary.online_policy = OnlinePolicy::offline;
          else if (v == "rotate") c.adversary.online_policy = OnlinePolicy::rotate;
          else throw ConfigError(k, "expected always/offline/rotate");
        },
        [](const ExperimentConfig& c) -> std::string {
          switch (c.adversary.online_policy) {
            case OnlinePolicy::always: return "always";
            case OnlinePolicy::offline: return "offline";
            case OnlinePolicy::rotate: return "rotate";
          }
          return "always";
        }};
    t["adversary.online_fraction"] = make_double(
        [](ExperimentConfig& c) -> double& { return c.adversary.online_fraction; });
    t["adversary.equivocate"] = make_bool(
        [](ExperimentConfig& c) -> bool& { return c.adversary.equivocate; });
    t["adversary.private_fork"] = make_bool(
        [](ExperimentConfig& c) -> bool& { return c.adversary.private_fork; });
    t["adversary.fork_publish_lead"] = make_int<int>(
        [](ExperimentConfig& c) -> int& { return c.adversary.fork_publish_lead; });
    t["adversary.fork_giveup"] = make_int<int>(
        [](ExperimentConfig& c) -> int& { return c.adversary.fork_giveup; });

    t["election.beacon_domain_tag"] = KeyEntry{
        [](ExperimentConfig& c, const std::string&, const std::string& v) {
          c.sim.beacon_domain_tag = v;
        },
        [](const ExperimentConfig& c) { return c.sim.beacon_domain_tag; }};

    t["sim.seed"] = KeyEntry{
        [](ExperimentConfig& c, const std::string& k, const std::string& v) {
          c.sim.seed = static_cast<std::uint64_t>(parse_int(k, v));
        },
        [](const ExperimentConfig& c) { return std::to_string(c.sim.seed); }};
    t["sim.offline_participation"] = KeyEntry{
        [](ExperimentConfig& c, const std::string& k, const std::string& v) {
          if (v == "frozen") c.sim.offline_participation = OfflineParticipation::frozen;
          else if (v == "accrue") c.sim.offline_participation = OfflineParticipation::accrue;
          else if (v == "slash") c.sim.offline_participation = OfflineParticipation::slash;
          else throw ConfigError(k, "expected frozen/accrue/slash");
        },
        [](const ExperimentConfig& c) -> std::string {
          switch (c.sim.offline_participation) {
            case OfflineParticipation::frozen: return "frozen";
            case OfflineParticipation::accrue: return "accrue";
            case OfflineParticipation::slash: return "slash";
          }
          return "frozen";
        }};
    t["sim.finality"] =
        make_bool([](ExperimentConfig& c) -> bool& { return c.sim.finality; });
    t["sim.rho"] =
        make_double([](ExperimentConfig& c) -> double& { return c.sim.rho; });
    t["sim.record_scores"] = make_bool(
        [](ExperimentConfig& c) -> bool& { return c.sim.record_scores; });
    return t;
  }();
  return table;
}

}  // namespace

void HonestConfig::validate() const {
  if (count < 1) throw ConfigError("honest.count", "must be >= 1");
  if (online_prob < 0 || online_prob > 1) {
    throw ConfigError("honest.online_prob", "must be in [0,1]");
  }
}

void SimConfig::validate() const {
  if (rho <= 0 || rho >= 1) throw ConfigError("sim.rho", "must be in (0,1)");
  if (beacon_domain_tag.empty() || beacon_domain_tag.size() > 64) {
    throw ConfigError("election.beacon_domain_tag",
                      "must be non-empty and at most 64 bytes");
  }
}

void ExperimentConfig::validate() const {
  if (epochs_per_window < 1) {
    throw ConfigError("timeline.epochs_per_window", "must be >= 1");
  }
  if (horizon_epochs < 1) {
    throw ConfigError("timeline.horizon_epochs", "must be >= 1");
  }
  try {
    protocol.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("protocol", e.what());
  }
  try {
    hco.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("hco", e.what());
  }
  try {
    adversary.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("adversary", e.what());
  }
  honest.validate();
  sim.validate();
}

void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value) {
  const auto& table = key_table();
  auto it = table.find(key);
  if (it == table.end()) throw ConfigError(key, "unknown config key");
  it->second.set(config, key, value);
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", "line " + std::to_string(lineno) +
                                ": expected key=value, got '" + line + "'");
    }
    apply_override(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& [key, entry] : key_table()) {
    if (entry.alias) continue;
    out += key;
    out += '=';
    out += entry.get(config);
    out += '\n';
  }
  return out;
}

}  // namespace pocmt
