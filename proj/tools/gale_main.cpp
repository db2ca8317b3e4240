// gale: batch evaluation tool for gaze-action lead time and benchmark
// protocol workflows. Subcommands: galt, stats, compare, splits, synth,
// validate. All outputs are deterministic for fixed inputs and flags.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gale/galt.hpp"
#include "gale/io.hpp"
#include "gale/protocol.hpp"
#include "gale/stats.hpp"
#include "gale/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
  std::optional<std::string> config_path;
  std::string out_dir = ".";
  std::vector<std::string> formats{"json"};
  gale::io::ReportOptions report;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_report_opts) {
  cmd->add_option("--config", o.config_path,
                  "Detector config file (default: $GALE_CONFIG, else built-in defaults)");
  cmd->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--format", o.formats, "Report formats: json, md, svg")
      ->check(CLI::IsMember({"json", "md", "svg"}))
      ->capture_default_str();
  if (with_report_opts) {
    cmd->add_option_function<std::pair<double, double>>(
           "--hist-range",
           [&o](const std::pair<double, double>& v) {
             o.report.hist_lo = v.first;
             o.report.hist_hi = v.second;
           },
           "Histogram range lo:hi (default -0.5:3.5)")
        ->delimiter(':');
    cmd->add_option("--hist-bins", o.report.hist_bins, "Histogram bin count")
        ->capture_default_str();
    cmd->add_option_function<std::pair<double, double>>(
           "--galt-filter",
           [&o](const std::pair<double, double>& v) {
             o.report.filter_lo = v.first;
             o.report.filter_hi = v.second;
           },
           "Report-level value filter lo:hi (default -0.5:3.0)")
        ->delimiter(':');
    cmd->add_option("--workers", o.report.workers,
                    "Worker threads for batch detection (0 = hardware)");
  }
}

bool wants(const CommonOpts& o, const std::string& fmt) {
  return std::find(o.formats.begin(), o.formats.end(), fmt) != o.formats.end();
}

void write_text(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path().empty() ? "." : p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

void emit_report(const gale::io::RunReport& report, const CommonOpts& o,
                 const std::string& stem) {
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  if (wants(o, "json")) write_text(dir / (stem + ".json"), gale::io::report_to_json(report).dump(2) + "\n");
  if (wants(o, "md")) write_text(dir / (stem + ".md"), gale::io::report_to_markdown(report));
  if (wants(o, "svg"))
    write_text(dir / (stem + ".svg"), gale::io::histogram_svg(report.hist, nullptr, stem));
}

std::vector<std::pair<std::string, gale::ActionTrajectory>> load_episodes(
    const fs::path& root, int stride, std::vector<std::pair<std::string, std::string>>* inputs) {
  std::vector<std::pair<std::string, gale::ActionTrajectory>> episodes;
  for (const auto& dir : gale::io::list_episode_dirs(root)) {
    const gale::io::EpisodeFile ep = gale::io::read_episode(dir);
    gale::ActionTrajectory traj = ep.trajectory();
    if (stride > 1) traj = gale::downsample_stride(traj, stride);
    if (inputs) inputs->emplace_back(dir.string(), gale::io::file_digest_hex(dir / "meta.json"));
    episodes.emplace_back(ep.meta.episode_id, std::move(traj));
  }
  return episodes;
}

// seeds "a..b" (inclusive) or a single "n".
std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const auto v = std::stoull(s);
    return {v, v};
  }
  return {std::stoull(s.substr(0, dots)), std::stoull(s.substr(dots + 2))};
}

int run_galt(const CommonOpts& o, const std::string& episodes_dir, int stride) {
  const gale::galt::GaltConfig cfg = gale::io::resolve_config(
      o.config_path ? std::optional<fs::path>(*o.config_path) : std::nullopt);
  std::vector<std::pair<std::string, std::string>> inputs;
  const auto episodes = load_episodes(episodes_dir, stride, &inputs);
  if (episodes.empty()) throw std::runtime_error("no episodes under " + episodes_dir);
  const auto report =
      gale::io::build_run_report("galt", episodes, cfg, o.report, std::move(inputs));
  emit_report(report, o, "report");
  std::printf("%zu episodes, %ld valid (%.1f%%), median %s s\n", episodes.size(),
              report.summary.n_valid, 100.0 * report.summary.detection_rate,
              report.summary.median_s ? std::to_string(*report.summary.median_s).c_str() : "-");
  return 0;
}

int run_stats(const CommonOpts& o, const std::string& cells_path, bool suite, double alpha) {
  // Input: JSON array of {name, successes, trials}.
  std::ifstream in(cells_path);
  if (!in) throw std::runtime_error("cannot open " + cells_path);
  json cells = json::parse(in);

  json out;
  out["tool"] = {{"name", gale::io::kToolName}, {"version", gale::io::kToolVersion}};
  out["command"] = "stats";
  out["alpha"] = alpha;
  out["rows"] = json::array();
  std::vector<std::pair<long, long>> pool;
  std::string md = "| Cell | Rate | 95% CI |\n|---|---|---|\n";
  for (const auto& cell : cells) {
    const long k = cell.at("successes").get<long>();
    const long n = cell.at("trials").get<long>();
    const auto ci = gale::stats::wilson_ci(k, n, alpha);
    pool.emplace_back(k, n);
    const std::string name = cell.contains("name") ? cell.at("name").get<std::string>() : "-";
    out["rows"].push_back({{"name", name},
                           {"successes", k},
                           {"trials", n},
                           {"point", ci.point},
                           {"lo", ci.lo},
                           {"hi", ci.hi}});
    char row[160];
    std::snprintf(row, sizeof row, "| %s | %.1f | [%.1f, %.1f] |\n", name.c_str(),
                  100 * ci.point, 100 * ci.lo, 100 * ci.hi);
    md += row;
  }
  if (suite) {
    const auto ci = gale::stats::suite_mean(pool, alpha);
    out["suite_mean"] = {{"successes", ci.successes},
                         {"trials", ci.trials},
                         {"point", ci.point},
                         {"lo", ci.lo},
                         {"hi", ci.hi}};
    char row[160];
    std::snprintf(row, sizeof row, "| suite mean | %.1f | [%.1f, %.1f] |\n", 100 * ci.point,
                  100 * ci.lo, 100 * ci.hi);
    md += row;
  }
  const fs::path dir(o.out_dir);
  if (wants(o, "json")) write_text(dir / "stats.json", out.dump(2) + "\n");
  if (wants(o, "md")) write_text(dir / "stats.md", md);
  std::fputs(md.c_str(), stdout);
  return 0;
}

int run_compare(const CommonOpts& o, const std::string& policy_path,
                const std::string& reference_path) {
  auto load_values = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    const json j = json::parse(in);
    std::vector<double> values;
    for (const auto& ep : j.at("episodes"))
      if (ep.at("status") == "ok") values.push_back(ep.at("galt_s").get<double>());
    return values;
  };
  const auto pol_values = load_values(policy_path);
  const auto ref_values = load_values(reference_path);
  const auto pol = gale::stats::summarize_values(pol_values, static_cast<long>(pol_values.size()));
  const auto ref = gale::stats::summarize_values(ref_values, static_cast<long>(ref_values.size()));
  const auto delta = gale::stats::median_delta(pol, ref);

  json out;
  out["tool"] = {{"name", gale::io::kToolName}, {"version", gale::io::kToolVersion}};
  out["command"] = "compare";
  out["policy"] = {{"path", policy_path}, {"n", pol.n_valid}, {"median_s", *pol.median_s}};
  out["reference"] = {{"path", reference_path}, {"n", ref.n_valid}, {"median_s", *ref.median_s}};
  out["abs_delta_s"] = delta.abs_delta_s;
  if (delta.rel_delta) out["rel_delta"] = *delta.rel_delta;

  const fs::path dir(o.out_dir);
  if (wants(o, "json")) write_text(dir / "compare.json", out.dump(2) + "\n");
  if (wants(o, "svg")) {
    const auto hp = gale::stats::histogram(pol.values, o.report.hist_lo, o.report.hist_hi,
                                           o.report.hist_bins);
    const auto hr = gale::stats::histogram(ref.values, o.report.hist_lo, o.report.hist_hi,
                                           o.report.hist_bins);
    write_text(dir / "compare.svg", gale::io::histogram_svg(hp, &hr, "policy vs reference"));
  }
  std::printf("medians: policy %.3f s, reference %.3f s, |delta| %.3f s (%.1f%%)\n",
              delta.median_policy_s, delta.median_ref_s, delta.abs_delta_s,
              delta.rel_delta ? 100.0 * *delta.rel_delta : 0.0);
  return 0;
}

int run_splits(const CommonOpts& o, const std::string& task_name, const std::string& split_name,
               const std::string& seeds) {
  const auto split = gale::protocol::split_from_string(split_name);
  if (!split) throw std::runtime_error("unknown split '" + split_name + "'");
  const auto* task = gale::protocol::find_task(gale::protocol::builtin_tasks(), task_name);
  if (!task) throw std::runtime_error("unknown task '" + task_name + "'");
  const auto [lo, hi] = parse_seed_range(seeds);

  fs::create_directories(o.out_dir);
  const fs::path out_path = fs::path(o.out_dir) / "splits.jsonl";
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  for (std::uint64_t seed = lo; seed <= hi; ++seed) {
    const auto sample = gale::protocol::sample_split(*task, *split, seed);
    out << gale::io::split_sample_to_json(sample).dump() << "\n";
  }
  std::printf("%llu samples -> %s\n", static_cast<unsigned long long>(hi - lo + 1),
              out_path.string().c_str());
  return 0;
}

int run_synth(const CommonOpts& o, int n, double rate, std::uint64_t seed, double galt_lo,
              double galt_hi, double noise_pos, double noise_neck, double no_grasp_frac) {
  gale::synth::CorpusSpec spec;
  spec.n = n;
  spec.rate_hz = rate;
  spec.seed = seed;
  spec.galt_min_s = galt_lo;
  spec.galt_max_s = galt_hi;
  spec.noise = {noise_pos, noise_neck};
  spec.no_grasp_fraction = no_grasp_frac;
  const auto corpus = gale::synth::generate_corpus(spec);

  fs::create_directories(o.out_dir);
  json truths = json::array();
  for (size_t i = 0; i < corpus.episodes.size(); ++i) {
    const auto& [id, traj] = corpus.episodes[i];
    gale::io::EpisodeFile ep;
    ep.meta.episode_id = id;
    ep.meta.robot = "synthetic";
    ep.meta.rate_hz = traj.rate_hz;
    ep.meta.layout = traj.layout;
    ep.actions = traj.data;
    gale::io::write_episode(ep, fs::path(o.out_dir) / id);

    const auto& t = corpus.truths[i];
    json jt;
    jt["episode_id"] = id;
    if (t.t_hand_left) jt["t_hand_left"] = *t.t_hand_left;
    if (t.t_hand_right) jt["t_hand_right"] = *t.t_hand_right;
    if (t.t_head) jt["t_head"] = *t.t_head;
    if (t.galt_s) jt["galt_s"] = *t.galt_s;
    if (t.arm) jt["arm"] = to_string(*t.arm);
    if (t.skip) jt["skip"] = gale::galt::to_string(*t.skip);
    truths.push_back(jt);
  }
  write_text(fs::path(o.out_dir) / "truths.json", truths.dump(2) + "\n");
  std::printf("wrote %d episodes under %s\n", n, o.out_dir.c_str());
  return 0;
}

int run_validate(const CommonOpts& o, const std::optional<std::string>& episodes_dir,
                 int synth_n, int stride, std::uint64_t seed) {
  const gale::galt::GaltConfig cfg = gale::io::resolve_config(
      o.config_path ? std::optional<fs::path>(*o.config_path) : std::nullopt);

  std::vector<std::pair<std::string, gale::ActionTrajectory>> native;
  if (episodes_dir) {
    native = load_episodes(*episodes_dir, 1, nullptr);
    if (native.empty()) throw std::runtime_error("no episodes under " + *episodes_dir);
  } else {
    gale::synth::CorpusSpec spec;
    spec.n = synth_n;
    spec.seed = seed;
    auto corpus = gale::synth::generate_corpus(spec, cfg);
    native = std::move(corpus.episodes);
  }
  std::vector<std::pair<std::string, gale::ActionTrajectory>> strided;
  strided.reserve(native.size());
  for (const auto& [id, traj] : native)
    strided.emplace_back(id, gale::downsample_stride(traj, stride));

  const auto report_native = gale::io::build_run_report("validate", native, cfg, o.report);
  const auto report_strided = gale::io::build_run_report("validate", strided, cfg, o.report);

  const double native_rate = native.front().second.rate_hz;
  auto row = [](const char* label, double rate, const gale::stats::GaltSummary& s) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "| %s @ %g Hz | %ld / %ld (%.1f%%) | %.3f | %.3f |\n", label,
                  rate, s.n_valid, s.n_total, 100.0 * s.detection_rate,
                  s.mean_s.value_or(0.0), s.median_s.value_or(0.0));
    return std::string(buf);
  };
  std::string md = "| Rate | Detection rate | Mean (s) | Median (s) |\n|---|---|---|---|\n";
  md += row("native", native_rate, report_native.summary);
  md += row("stride", native_rate / stride, report_strided.summary);

  json out;
  out["tool"] = {{"name", gale::io::kToolName}, {"version", gale::io::kToolVersion}};
  out["command"] = "validate";
  out["config"] = gale::io::config_to_json(cfg);
  out["stride"] = stride;
  out["native"] = gale::io::report_to_json(report_native)["summary"];
  out["strided"] = gale::io::report_to_json(report_strided)["summary"];
  if (report_native.summary.median_s && report_strided.summary.median_s) {
    const auto delta =
        gale::stats::median_delta(report_strided.summary, report_native.summary);
    out["median_abs_delta_s"] = delta.abs_delta_s;
    char buf[96];
    std::snprintf(buf, sizeof buf, "\npooled median delta: %.4f s\n", delta.abs_delta_s);
    md += buf;
  }

  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  if (wants(o, "json")) write_text(dir / "validate.json", out.dump(2) + "\n");
  if (wants(o, "md")) write_text(dir / "validate.md", md);
  std::fputs(md.c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaze-action lead time evaluation toolkit"};
  app.require_subcommand(1);

  CommonOpts galt_opts;
  std::string galt_dir;
  int galt_stride = 1;
  auto* galt_cmd = app.add_subcommand("galt", "Detect lead times over an episode directory");
  galt_cmd->add_option("episodes", galt_dir, "Directory of episode subdirectories")->required();
  galt_cmd->add_option("--rate-stride", galt_stride, "Downsample by keeping every k-th frame")
      ->capture_default_str();
  add_common(galt_cmd, galt_opts, true);

  CommonOpts stats_opts;
  std::string cells_path;
  bool suite_mean = false;
  double alpha = 0.05;
  auto* stats_cmd = app.add_subcommand("stats", "Wilson intervals for success-count cells");
  stats_cmd->add_option("cells", cells_path, "JSON array of {name, successes, trials}")
      ->required();
  stats_cmd->add_flag("--suite-mean", suite_mean, "Append the pooled suite mean row");
  stats_cmd->add_option("--alpha", alpha, "Significance level")->capture_default_str();
  add_common(stats_cmd, stats_opts, false);

  CommonOpts cmp_opts;
  std::string policy_path, reference_path;
  auto* cmp_cmd = app.add_subcommand("compare", "Median deltas between two galt reports");
  cmp_cmd->add_option("--policy", policy_path, "Policy report.json")->required();
  cmp_cmd->add_option("--reference", reference_path, "Reference report.json")->required();
  add_common(cmp_cmd, cmp_opts, true);

  CommonOpts splits_opts;
  std::string task_name, split_name, seeds = "0";
  auto* splits_cmd = app.add_subcommand("splits", "Sample scene initializations for a task");
  splits_cmd->add_option("task", task_name, "Task name")->required();
  splits_cmd->add_option("split", split_name, "id | ood-spatial | ood-init-pose")->required();
  splits_cmd->add_option("--seeds", seeds, "Seed or inclusive range a..b")
      ->capture_default_str();
  add_common(splits_cmd, splits_opts, false);

  CommonOpts synth_opts;
  int synth_n = 100;
  double synth_rate = 60.0, galt_lo = 0.0, galt_hi = 3.0;
  double noise_pos = 0.0, noise_neck = 0.0, no_grasp = 0.0;
  std::uint64_t synth_seed = 0;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a ground-truth episode corpus");
  synth_cmd->add_option("--n", synth_n, "Episode count")->capture_default_str();
  synth_cmd->add_option("--rate", synth_rate, "Sampling rate (Hz)")->capture_default_str();
  synth_cmd->add_option("--seed", synth_seed, "Corpus seed")->capture_default_str();
  synth_cmd->add_option("--galt-range", [&](const std::vector<std::string>& v) {
    const auto p = v.back().find(':');
    if (p == std::string::npos) return false;
    galt_lo = std::stod(v.back().substr(0, p));
    galt_hi = std::stod(v.back().substr(p + 1));
    return true;
  }, "Planted lead-time range lo:hi");
  synth_cmd->add_option("--noise-pos", noise_pos, "EE position noise sigma (m)");
  synth_cmd->add_option("--noise-neck", noise_neck, "Neck noise sigma (rad)");
  synth_cmd->add_option("--no-grasp-frac", no_grasp, "Fraction of episodes without a grasp");
  add_common(synth_cmd, synth_opts, false);

  CommonOpts val_opts;
  std::optional<std::string> val_dir;
  int val_synth_n = 200, val_stride = 3;
  std::uint64_t val_seed = 0;
  auto* val_cmd =
      app.add_subcommand("validate", "Run detection at the native rate and at a stride, side by side");
  val_cmd->add_option("episodes", val_dir, "Episode directory (omit to self-generate)");
  val_cmd->add_option("--synth", val_synth_n, "Self-generated corpus size")->capture_default_str();
  val_cmd->add_option("--rate-stride", val_stride, "Stride factor")->capture_default_str();
  val_cmd->add_option("--seed", val_seed, "Corpus seed")->capture_default_str();
  add_common(val_cmd, val_opts, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (galt_cmd->parsed()) return run_galt(galt_opts, galt_dir, galt_stride);
    if (stats_cmd->parsed()) return run_stats(stats_opts, cells_path, suite_mean, alpha);
    if (cmp_cmd->parsed()) return run_compare(cmp_opts, policy_path, reference_path);
    if (splits_cmd->parsed()) return run_splits(splits_opts, task_name, split_name, seeds);
    if (synth_cmd->parsed())
      return run_synth(synth_opts, synth_n, synth_rate, synth_seed, galt_lo, galt_hi, noise_pos,
                       noise_neck, no_grasp);
    if (val_cmd->parsed()) return run_validate(val_opts, val_dir, val_synth_n, val_stride, val_seed);
  } catch (const std::exception& e) {
    const json err = {{"error", e.what()}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return 1;
  }
  return 0;
}
