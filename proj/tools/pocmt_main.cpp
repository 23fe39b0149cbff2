// SPDX-License-Identifier: Apache-2.0
//
// Experiment driver: runs a preset or a config file, emitting per-run trace
// and window CSVs plus a per-preset summary CSV.

#include <cstdio>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "pocmt/config.hpp"
#include "pocmt/presets.hpp"
#include "pocmt/sweep.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pocmt: commitment-weighted consensus simulator"};

  std::string preset_name;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = "out";
  int seeds = 0;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  bool svg = false;
  bool print_config = false;

  std::string preset_help = "preset name (";
  for (const auto& n : pocmt::preset_names()) preset_help += n + " ";
  preset_help.back() = ')';
  app.add_option("--preset", preset_name, preset_help);
  app.add_option("--config", config_path, "config file (key=value lines)");
  app.add_option("--set", overrides, "override, key=value (repeatable)");
  app.add_option("--seeds", seeds, "number of seeds (1..N), preset default otherwise");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--jobs", jobs, "max parallel runs");
  app.add_flag("--svg", svg, "emit an SVG chart of the summary series");
  app.add_flag("--print-config", print_config, "print the resolved base config and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    pocmt::Preset preset;
    if (!preset_name.empty()) {
      preset = pocmt::make_preset(preset_name);
    } else if (!config_path.empty()) {
      preset.name = "custom";
      preset.base = pocmt::load_config_file(config_path);
      preset.seeds = {preset.base.sim.seed};
    } else {
      std::fprintf(stderr, "error: one of --preset or --config is required\n");
      return 1;
    }
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "error: --set expects key=value, got '%s'\n",
                     kv.c_str());
        return 1;
      }
      pocmt::apply_override(preset.base, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seeds > 0) {
      preset.seeds.clear();
      for (int i = 1; i <= seeds; ++i) {
        preset.seeds.push_back(static_cast<std::uint64_t>(i));
      }
    }
    preset.base.validate();

    if (print_config) {
      std::fputs(pocmt::serialize_config(preset.base).c_str(), stdout);
      return 0;
    }

    if (jobs < 1) jobs = 1;
    pocmt::run_preset_to_dir(preset, out_dir, jobs, svg);
    const std::size_t runs =
        preset.seeds.size() *
        (preset.swept_values.empty() ? 1 : preset.swept_values.size());
    std::printf("%s: %zu runs -> %s\n", preset.name.c_str(), runs,
                out_dir.c_str());
    return 0;
  } catch (const pocmt::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "assertion failure: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
