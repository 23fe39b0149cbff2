// SPDX-License-Identifier: Apache-2.0
#include "pocmt/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "pocmt/bft_enum.hpp"
#include "pocmt/simulator.hpp"

namespace pocmt {

namespace {

namespace fs = std::filesystem;

const char* class_name(const EpochRow& row) {
  if (row.empty_epoch) return "";
  return row.leader_class == ValidatorClass::honest ? "honest" : "adversarial";
}

void write_trace_csv(const ExperimentTrace& trace, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "epoch,window,W_H,W_A,leader_id,leader_class,empty_epoch,"
         "head_weight,chain_len,evidence_count\n";
  for (const auto& row : trace.epochs) {
    out << row.epoch << ',' << row.window << ',' << csv_double(row.w_honest)
        << ',' << csv_double(row.w_adv) << ',';
    if (!row.empty_epoch) out << row.leader;
    out << ',' << class_name(row) << ',' << (row.empty_epoch ? 1 : 0) << ','
        << csv_double(row.head_weight) << ',' << row.chain_length << ','
        << row.evidence_count << '\n';
  }
}

void write_window_csv(const ExperimentTrace& trace, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "window,X_d,adversary_capacity,honest_solves_total\n";
  for (const auto& row : trace.windows) {
    out << row.window << ',' << row.adversary_spent << ','
        << row.adversary_capacity << ',' << row.honest_solves_total << '\n';
  }
}

struct Aggregate {
  std::string swept_value;
  int runs = 0;
  int leader_share_defined = 0;
  double nonempty_sum = 0, leader_sum = 0, leader_sq = 0;
  double weight_sum = 0, weight_sq = 0;
  int drift_ok_runs = 0;
  double chain_frac_sum = 0;
  double bootstrap_sum = 0;
  std::int64_t evidence = 0;
  std::int64_t conflicts = 0;
  std::int64_t whm_violations = 0;
  double human_time_sum = 0;
  std::int64_t publications = 0;
  std::vector<std::int64_t> displaced_at_least =
      std::vector<std::int64_t>(kMaxReorgDepth, 0);
  std::vector<std::int64_t> led;
  std::vector<double> prob_sums;
  std::int64_t fairness_epochs = 0;

  void add(const RunStats& r) {
    ++runs;
    nonempty_sum += r.nonempty_rate;
    if (r.adv_leader_share >= 0) {
      ++leader_share_defined;
      leader_sum += r.adv_leader_share;
      leader_sq += r.adv_leader_share * r.adv_leader_share;
    }
    weight_sum += r.final_weight_share;
    weight_sq += r.final_weight_share * r.final_weight_share;
    if (r.drift_ok) ++drift_ok_runs;
    chain_frac_sum += r.chain_length_frac;
    bootstrap_sum += static_cast<double>(r.bootstrap_epochs);
    evidence += r.evidence;
    conflicts += r.finality_conflicts;
    whm_violations += r.whm_violations;
    human_time_sum += static_cast<double>(r.human_time);
    publications += r.publications;
    for (int k = 0; k < kMaxReorgDepth; ++k) {
      displaced_at_least[static_cast<std::size_t>(k)] +=
          r.displaced_at_least[static_cast<std::size_t>(k)];
    }
    if (!r.led_counts.empty()) {
      if (led.empty()) {
        led.assign(r.led_counts.size(), 0);
        prob_sums.assign(r.led_counts.size(), 0.0);
      }
      for (std::size_t v = 0; v < r.led_counts.size(); ++v) {
        led[v] += r.led_counts[v];
        prob_sums[v] += r.prob_sums[v];
      }
      fairness_epochs += r.epochs;
    }
  }
};

double mean_of(double sum, int n) { return n > 0 ? sum / n : 0.0; }

double std_of(double sum, double sq, int n) {
  if (n < 2) return 0.0;
  const double m = sum / n;
  const double var = (sq - n * m * m) / (n - 1);
  return var > 0 ? std::sqrt(var) : 0.0;
}

void write_svg(const Preset& preset, const std::vector<Aggregate>& aggs,
               const fs::path& path) {
  // Plain polyline chart of mean adversarial leader share and final weight
  // share across the swept values.
  const int w = 640, h = 400, margin = 50;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='"
      << h << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << w / 2 << "' y='20' text-anchor='middle' "
      << "font-family='sans-serif' font-size='14'>" << preset.name
      << ": adversarial share vs " << preset.swept_label << "</text>\n";
  const auto n = aggs.size();
  if (n >= 2) {
    auto xpos = [&](std::size_t i) {
      return margin + static_cast<double>(i) * (w - 2 * margin) /
                          static_cast<double>(n - 1);
    };
    auto ypos = [&](double v) { return h - margin - v * (h - 2 * margin); };
    const char* colors[2] = {"#1f77b4", "#d62728"};
    for (int series = 0; series < 2; ++series) {
      out << "<polyline fill='none' stroke='" << colors[series]
          << "' stroke-width='2' points='";
      for (std::size_t i = 0; i < n; ++i) {
        const auto& a = aggs[i];
        const double v = series == 0
                             ? mean_of(a.leader_sum, a.leader_share_defined)
                             : mean_of(a.weight_sum, a.runs);
        out << xpos(i) << ',' << ypos(v) << ' ';
      }
      out << "'/>\n";
    }
    out << "<line x1='" << margin << "' y1='" << h - margin << "' x2='"
        << w - margin << "' y2='" << h - margin << "' stroke='black'/>\n";
    out << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin
        << "' y2='" << h - margin << "' stroke='black'/>\n";
    for (std::size_t i = 0; i < n; ++i) {
      out << "<text x='" << xpos(i) << "' y='" << h - margin + 16
          << "' text-anchor='middle' font-family='sans-serif' "
          << "font-size='11'>" << aggs[i].swept_value << "</text>\n";
    }
    out << "<text x='" << w - margin << "' y='" << margin
        << "' text-anchor='end' font-family='sans-serif' font-size='11' "
        << "fill='#1f77b4'>leader share</text>\n";
    out << "<text x='" << w - margin << "' y='" << margin + 14
        << "' text-anchor='end' font-family='sans-serif' font-size='11' "
        << "fill='#d62728'>weight share</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

RunStats summarize_run(const ExperimentTrace& trace, const RunSpec& spec) {
  RunStats stats;
  stats.swept_value = spec.swept_value;
  stats.seed = spec.seed;
  std::int64_t nonempty = 0;
  for (const auto& row : trace.epochs) {
    if (!row.empty_epoch) ++nonempty;
  }
  const auto T = static_cast<double>(trace.epochs.size());
  stats.nonempty_rate = T > 0 ? static_cast<double>(nonempty) / T : 0.0;
  if (auto share = leader_share(trace, ValidatorClass::adversarial)) {
    stats.adv_leader_share = *share;
  }
  if (!trace.epochs.empty()) {
    const auto& last = trace.epochs.back();
    const double tot = last.w_honest + last.w_adv;
    stats.final_weight_share = tot > 0 ? last.w_adv / tot : 0.0;
  }
  stats.drift_ok = check_drift(trace).ok;
  stats.chain_length_frac =
      T > 0 ? static_cast<double>(trace.final_chain_length) / T : 0.0;
  stats.bootstrap_epochs = trace.bootstrap_epochs;
  stats.evidence = trace.epochs.empty() ? 0 : trace.epochs.back().evidence_count;
  stats.finality_conflicts = trace.finality_conflicts;
  stats.whm_violations = trace.whm_violations;
  stats.human_time = trace.cost.human_time_spent;
  stats.publications = static_cast<std::int64_t>(trace.reorgs.size());
  stats.displaced_at_least.assign(kMaxReorgDepth, 0);
  for (const auto& ev : trace.reorgs) {
    for (int k = 1; k <= kMaxReorgDepth; ++k) {
      if (ev.displaced >= k) ++stats.displaced_at_least[static_cast<std::size_t>(k - 1)];
    }
  }
  if (!trace.scores.empty()) {
    FairnessAccumulator acc;
    acc.add(trace);
    stats.led_counts = acc.led();
    stats.prob_sums = acc.probability_sums();
    stats.epochs = acc.pooled_epochs();
  }
  return stats;
}

void run_preset_to_dir(const Preset& preset, const std::string& out_dir,
                       int jobs, bool svg) {
  const auto specs = expand_preset(preset);
  if (specs.empty()) throw ConfigError("preset", "empty run set");
  for (const auto& spec : specs) spec.config.validate();

  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  std::vector<RunStats> stats(specs.size());
  std::vector<std::string> errors(specs.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      const RunSpec& spec = specs[i];
      try {
        ExperimentTrace trace = run(spec.config);
        const std::string stem =
            preset.name + "_" + spec.tag + "_" + std::to_string(spec.seed);
        write_trace_csv(trace, dir / ("trace_" + stem + ".csv"));
        write_window_csv(trace, dir / ("windows_" + stem + ".csv"));
        stats[i] = summarize_run(trace, spec);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };

  const int n_threads =
      std::max(1, std::min<int>(jobs, static_cast<int>(specs.size())));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& err : errors) {
    if (!err.empty()) throw std::logic_error(err);
  }

  // Aggregate per swept value, in preset declaration order.
  std::vector<Aggregate> aggs;
  for (const auto& st : stats) {
    if (aggs.empty() || aggs.back().swept_value != st.swept_value) {
      aggs.emplace_back();
      aggs.back().swept_value = st.swept_value;
    }
    aggs.back().add(st);
  }

  std::ofstream out(dir / ("summary_" + preset.name + ".csv"));
  if (!out) throw std::runtime_error("cannot write summary CSV");
  out << "preset,swept_key,swept_value,runs,nonempty_rate_mean,"
         "adv_leader_share_mean,adv_leader_share_std,weight_share_mean,"
         "weight_share_std,drift_ok_runs,chain_length_frac_mean,"
         "bootstrap_epochs_mean,evidence_total,finality_conflicts_total,"
         "whm_violation_epochs,human_time_mean,max_fairness_deviation";
  for (int k = 1; k <= kMaxReorgDepth; ++k) out << ",reorg_freq_d" << k;
  out << ",quorum_cases,quorum_conflicts\n";

  for (const auto& a : aggs) {
    out << preset.name << ',' << preset.swept_key << ',' << a.swept_value << ','
        << a.runs << ',' << csv_double(mean_of(a.nonempty_sum, a.runs)) << ','
        << csv_double(mean_of(a.leader_sum, a.leader_share_defined)) << ','
        << csv_double(std_of(a.leader_sum, a.leader_sq, a.leader_share_defined))
        << ',' << csv_double(mean_of(a.weight_sum, a.runs)) << ','
        << csv_double(std_of(a.weight_sum, a.weight_sq, a.runs)) << ','
        << a.drift_ok_runs << ','
        << csv_double(mean_of(a.chain_frac_sum, a.runs)) << ','
        << csv_double(mean_of(a.bootstrap_sum, a.runs)) << ',' << a.evidence
        << ',' << a.conflicts << ',' << a.whm_violations << ','
        << csv_double(mean_of(a.human_time_sum, a.runs)) << ',';
    if (!a.led.empty() && a.fairness_epochs > 0) {
      double max_dev = 0;
      const auto T = static_cast<double>(a.fairness_epochs);
      for (std::size_t v = 0; v < a.led.size(); ++v) {
        max_dev = std::max(max_dev, std::abs(static_cast<double>(a.led[v]) / T -
                                             a.prob_sums[v] / T));
      }
      out << csv_double(max_dev);
    }
    for (int k = 0; k < kMaxReorgDepth; ++k) {
      out << ',';
      if (a.publications > 0) {
        out << csv_double(
            static_cast<double>(a.displaced_at_least[static_cast<std::size_t>(k)]) /
            static_cast<double>(a.publications));
      }
    }
    if (preset.name == "bft-safety") {
      const auto quorum = enumerate_quorum_conflicts(5, 4);
      out << ',' << quorum.cases << ',' << quorum.conflicts << '\n';
    } else {
      out << ",,\n";
    }
  }
  out.close();

  if (svg && !preset.swept_key.empty()) {
    write_svg(preset, aggs, dir / ("summary_" + preset.name + ".svg"));
  }
}

}  // namespace pocmt
