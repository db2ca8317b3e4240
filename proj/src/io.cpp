#include "gale/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gale/rng.hpp"

namespace gale::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

// Full-precision doubles: shortest text that round-trips exactly.
std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json arm_detection_to_json(const galt::ArmDetection& d) {
  json j;
  j["arm"] = to_string(d.arm);
  j["status"] = galt::to_string(d.status);
  if (d.t_hand) j["t_hand"] = *d.t_hand;
  if (d.t_onset) j["t_onset"] = *d.t_onset;
  if (d.t_head) j["t_head"] = *d.t_head;
  if (d.galt_s) j["galt_s"] = *d.galt_s;
  return j;
}

json ci_to_json(const stats::ProportionCI& ci) {
  return json{{"successes", ci.successes}, {"trials", ci.trials},   {"point", ci.point},
              {"lo", ci.lo},               {"hi", ci.hi},           {"alpha", ci.alpha}};
}

json summary_to_json(const stats::GaltSummary& s) {
  json j;
  j["n_valid"] = s.n_valid;
  j["n_total"] = s.n_total;
  j["detection_rate"] = s.detection_rate;
  if (s.mean_s) j["mean_s"] = *s.mean_s;
  if (s.median_s) j["median_s"] = *s.median_s;
  return j;
}

json histogram_to_json(const stats::Histogram& h) {
  return json{{"lo", h.lo},     {"hi", h.hi},       {"n_bins", h.n_bins},
              {"counts", h.counts}, {"n_dropped", h.n_dropped}};
}

double get_num(const json& j, const char* key) {
  if (!j.contains(key)) throw std::runtime_error(std::string("meta.json: missing field ") + key);
  return j.at(key).get<double>();
}

}  // namespace

json layout_to_json(const ActionLayout& layout) {
  if (layout == ActionLayout{}) return "canonical19";
  json j;
  j["left_ee_pos"] = layout.left_ee_pos;
  j["left_ee_quat"] = layout.left_ee_quat;
  j["right_ee_pos"] = layout.right_ee_pos;
  j["right_ee_quat"] = layout.right_ee_quat;
  j["head_joints"] = layout.head_joints;
  j["left_gripper"] = layout.left_gripper;
  j["right_gripper"] = layout.right_gripper;
  j["total_dims"] = layout.total_dims;
  return j;
}

ActionLayout layout_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "canonical19") return canonical_layout();
    throw std::runtime_error("meta.json: unknown layout descriptor '" + j.get<std::string>() + "'");
  }
  ActionLayout layout;
  j.at("left_ee_pos").get_to(layout.left_ee_pos);
  j.at("left_ee_quat").get_to(layout.left_ee_quat);
  j.at("right_ee_pos").get_to(layout.right_ee_pos);
  j.at("right_ee_quat").get_to(layout.right_ee_quat);
  j.at("head_joints").get_to(layout.head_joints);
  j.at("left_gripper").get_to(layout.left_gripper);
  j.at("right_gripper").get_to(layout.right_gripper);
  j.at("total_dims").get_to(layout.total_dims);
  layout.validate();
  return layout;
}

Eigen::MatrixXd read_matrix_csv(const fs::path& file, std::optional<Eigen::Index> expected_cols) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::vector<double> values;
  Eigen::Index cols = expected_cols.value_or(0);
  Eigen::Index rows = 0;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Eigen::Index c = 0;
    const char* p = line.c_str();
    while (*p) {
      char* end = nullptr;
      const double v = std::strtod(p, &end);
      if (end == p)
        throw std::runtime_error(file.string() + ":" + std::to_string(line_no) +
                                 ": malformed number at column " + std::to_string(c + 1));
      values.push_back(v);
      ++c;
      p = end;
      while (*p == ',' || *p == ' ' || *p == '\t') ++p;
    }
    if (cols == 0) cols = c;
    if (c != cols)
      throw std::runtime_error(file.string() + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(cols) + " columns, got " + std::to_string(c));
    ++rows;
  }
  if (rows == 0) throw std::runtime_error(file.string() + ": empty matrix");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = values[static_cast<size_t>(r * cols + c)];
  return m;
}

void write_matrix_csv(const Eigen::MatrixXd& m, const fs::path& file) {
  std::ostringstream out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << fmt_double(m(r, c));
    }
    out << '\n';
  }
  write_file(file, out.str());
}

EpisodeFile read_episode(const fs::path& episode_dir) {
  const fs::path meta_path = episode_dir / "meta.json";
  json j;
  try {
    j = json::parse(read_file(meta_path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error(meta_path.string() + ": " + e.what());
  }

  EpisodeFile ep;
  ep.meta.episode_id = j.at("episode_id").get<std::string>();
  if (j.contains("task")) ep.meta.task = j.at("task").get<std::string>();
  if (j.contains("robot")) ep.meta.robot = j.at("robot").get<std::string>();
  ep.meta.rate_hz = get_num(j, "rate_hz");
  if (!(ep.meta.rate_hz > 0)) throw std::runtime_error(meta_path.string() + ": rate_hz must be > 0");
  if (j.contains("prompt")) ep.meta.prompt = j.at("prompt").get<std::string>();
  if (j.contains("success")) ep.meta.success = j.at("success").get<bool>();
  ep.meta.layout = j.contains("layout") ? layout_from_json(j.at("layout")) : canonical_layout();

  std::string fname = "actions.csv";
  std::string format = "csv";
  std::optional<Eigen::Index> frames;
  if (j.contains("actions")) {
    const json& a = j.at("actions");
    if (a.contains("file")) fname = a.at("file").get<std::string>();
    if (a.contains("format")) format = a.at("format").get<std::string>();
    if (a.contains("frames")) frames = a.at("frames").get<Eigen::Index>();
  }
  const fs::path data_path = episode_dir / fname;
  const auto dims = static_cast<Eigen::Index>(ep.meta.layout.total_dims);

  if (format == "csv") {
    ep.meta.format = MatrixFormat::csv;
    ep.actions = read_matrix_csv(data_path, dims);
  } else if (format == "f64le") {
    ep.meta.format = MatrixFormat::f64le;
    const std::string bytes = read_file(data_path);
    const size_t row_bytes = static_cast<size_t>(dims) * sizeof(double);
    if (bytes.size() % row_bytes != 0)
      throw std::runtime_error(data_path.string() + ": size is not a multiple of the row width");
    const auto rows = static_cast<Eigen::Index>(bytes.size() / row_bytes);
    ep.actions.resize(rows, dims);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < dims; ++c) {
        double v;
        std::memcpy(&v, bytes.data() + (static_cast<size_t>(r) * static_cast<size_t>(dims) +
                                        static_cast<size_t>(c)) * sizeof v,
                    sizeof v);
        ep.actions(r, c) = v;
      }
  } else {
    throw std::runtime_error(meta_path.string() + ": unknown actions format '" + format + "'");
  }

  if (frames && *frames != ep.actions.rows())
    throw std::runtime_error(data_path.string() + ": meta declares " + std::to_string(*frames) +
                             " frames, file has " + std::to_string(ep.actions.rows()));
  return ep;
}

void write_episode(const EpisodeFile& ep, const fs::path& episode_dir) {
  fs::create_directories(episode_dir);
  json j;
  j["episode_id"] = ep.meta.episode_id;
  if (ep.meta.task) j["task"] = *ep.meta.task;
  if (ep.meta.robot) j["robot"] = *ep.meta.robot;
  j["rate_hz"] = ep.meta.rate_hz;
  if (ep.meta.prompt) j["prompt"] = *ep.meta.prompt;
  if (ep.meta.success) j["success"] = *ep.meta.success;
  j["layout"] = layout_to_json(ep.meta.layout);

  json actions;
  actions["frames"] = ep.actions.rows();
  if (ep.meta.format == MatrixFormat::csv) {
    actions["file"] = "actions.csv";
    actions["format"] = "csv";
    write_matrix_csv(ep.actions, episode_dir / "actions.csv");
  } else {
    actions["file"] = "actions.bin";
    actions["format"] = "f64le";
    std::string bytes(static_cast<size_t>(ep.actions.rows()) *
                          static_cast<size_t>(ep.actions.cols()) * sizeof(double),
                      '\0');
    for (Eigen::Index r = 0; r < ep.actions.rows(); ++r)
      for (Eigen::Index c = 0; c < ep.actions.cols(); ++c) {
        const double v = ep.actions(r, c);
        std::memcpy(bytes.data() + (static_cast<size_t>(r * ep.actions.cols() + c)) * sizeof v,
                    &v, sizeof v);
      }
    write_file(episode_dir / "actions.bin", bytes);
  }
  j["actions"] = actions;
  write_file(episode_dir / "meta.json", j.dump(2) + "\n");
}

std::vector<fs::path> list_episode_dirs(const fs::path& root) {
  if (!fs::is_directory(root)) throw std::runtime_error(root.string() + " is not a directory");
  std::vector<std::pair<std::string, fs::path>> found;
  if (fs::exists(root / "meta.json")) found.emplace_back(root.filename().string(), root);
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_directory() && fs::exists(entry.path() / "meta.json"))
      found.emplace_back(entry.path().filename().string(), entry.path());
  std::sort(found.begin(), found.end());
  std::vector<fs::path> dirs;
  dirs.reserve(found.size());
  for (auto& [_, p] : found) dirs.push_back(std::move(p));
  return dirs;
}

galt::GaltConfig read_config_file(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open config " + file.string());
  galt::GaltConfig cfg;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::runtime_error(file.string() + ":" + std::to_string(line_no) +
                                 ": expected key = value");
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val_str = trim(line.substr(eq + 1));
    char* end = nullptr;
    const double val = std::strtod(val_str.c_str(), &end);
    if (end == val_str.c_str() || *end != '\0')
      throw std::runtime_error(file.string() + ":" + std::to_string(line_no) +
                               ": malformed value for " + key);

    if (key == "v_hand_thresh") cfg.v_hand_thresh = val;
    else if (key == "v_sac_thresh") cfg.v_sac_thresh = val;
    else if (key == "K_fix_s") cfg.k_fix_s = val;
    else if (key == "min_stable_for_onset_s") cfg.min_stable_for_onset_s = val;
    else if (key == "lookback_s") cfg.lookback_s = val;
    else if (key == "forward_slack_s") cfg.forward_slack_s = val;
    else if (key == "arrival_margin_rad") cfg.arrival_margin_rad = val;
    else if (key == "outlier_min_s") cfg.outlier_min_s = val;
    else if (key == "outlier_max_s") cfg.outlier_max_s = val;
    else if (key == "gripper_hysteresis") cfg.gripper_hysteresis = val;
    else
      throw std::runtime_error(file.string() + ":" + std::to_string(line_no) +
                               ": unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

void write_config_file(const galt::GaltConfig& cfg, const fs::path& file) {
  std::ostringstream out;
  out << "v_hand_thresh = " << fmt_double(cfg.v_hand_thresh) << "\n"
      << "v_sac_thresh = " << fmt_double(cfg.v_sac_thresh) << "\n"
      << "K_fix_s = " << fmt_double(cfg.k_fix_s) << "\n"
      << "min_stable_for_onset_s = " << fmt_double(cfg.min_stable_for_onset_s) << "\n"
      << "lookback_s = " << fmt_double(cfg.lookback_s) << "\n"
      << "forward_slack_s = " << fmt_double(cfg.forward_slack_s) << "\n"
      << "arrival_margin_rad = " << fmt_double(cfg.arrival_margin_rad) << "\n"
      << "outlier_min_s = " << fmt_double(cfg.outlier_min_s) << "\n"
      << "outlier_max_s = " << fmt_double(cfg.outlier_max_s) << "\n"
      << "gripper_hysteresis = " << fmt_double(cfg.gripper_hysteresis) << "\n";
  write_file(file, out.str());
}

galt::GaltConfig resolve_config(const std::optional<fs::path>& explicit_path) {
  if (explicit_path) return read_config_file(*explicit_path);
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) return read_config_file(env);
  return {};
}

json config_to_json(const galt::GaltConfig& cfg) {
  return json{{"v_hand_thresh", cfg.v_hand_thresh},
              {"v_sac_thresh", cfg.v_sac_thresh},
              {"K_fix_s", cfg.k_fix_s},
              {"min_stable_for_onset_s", cfg.min_stable_for_onset_s},
              {"lookback_s", cfg.lookback_s},
              {"forward_slack_s", cfg.forward_slack_s},
              {"arrival_margin_rad", cfg.arrival_margin_rad},
              {"outlier_min_s", cfg.outlier_min_s},
              {"outlier_max_s", cfg.outlier_max_s},
              {"gripper_hysteresis", cfg.gripper_hysteresis}};
}

std::string file_digest_hex(const fs::path& file) {
  const std::string bytes = read_file(file);
  const std::uint64_t h = fnv1a64(std::string_view(bytes.data(), bytes.size()));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json outcome_to_json(const galt::GaltOutcome& o) {
  json j;
  j["episode_id"] = o.episode_id;
  if (o.ok()) {
    j["status"] = "ok";
    j["galt_s"] = *o.galt_s;
    j["arm"] = to_string(*o.arm);
  } else if (o.error) {
    j["status"] = "error";
    j["error"] = *o.error;
  } else if (o.skip) {
    j["status"] = "skipped";
    j["skip"] = galt::to_string(*o.skip);
  }
  j["per_arm"] = json::array({arm_detection_to_json(o.per_arm[0]),
                              arm_detection_to_json(o.per_arm[1])});
  return j;
}

RunReport build_run_report(std::string command,
                           const std::vector<std::pair<std::string, ActionTrajectory>>& episodes,
                           const galt::GaltConfig& cfg, const ReportOptions& opt,
                           std::vector<std::pair<std::string, std::string>> inputs) {
  RunReport report;
  report.command = std::move(command);
  report.config = cfg;
  report.options = opt;
  report.inputs = std::move(inputs);

  report.outcomes = galt::detect_galt_batch(episodes, cfg, opt.workers);
  std::sort(report.outcomes.begin(), report.outcomes.end(),
            [](const auto& a, const auto& b) { return a.episode_id < b.episode_id; });

  report.summary = stats::summarize_galt(report.outcomes);
  std::vector<double> filtered;
  for (double v : report.summary.values)
    if (v >= opt.filter_lo && v <= opt.filter_hi) filtered.push_back(v);
  report.filtered_summary = stats::summarize_values(std::move(filtered), report.summary.n_total);
  report.hist = stats::histogram(report.summary.values, opt.hist_lo, opt.hist_hi, opt.hist_bins);
  report.detection_ci = report.summary.n_total > 0
                            ? stats::wilson_ci(report.summary.n_valid, report.summary.n_total)
                            : stats::ProportionCI{};
  return report;
}

json report_to_json(const RunReport& report) {
  json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["command"] = report.command;
  j["config"] = config_to_json(report.config);
  j["options"] = {{"hist_lo", report.options.hist_lo},
                  {"hist_hi", report.options.hist_hi},
                  {"hist_bins", report.options.hist_bins},
                  {"filter_lo", report.options.filter_lo},
                  {"filter_hi", report.options.filter_hi}};
  j["inputs"] = json::array();
  for (const auto& [path, digest] : report.inputs)
    j["inputs"].push_back({{"path", path}, {"digest", digest}});
  j["episodes"] = json::array();
  for (const auto& o : report.outcomes) j["episodes"].push_back(outcome_to_json(o));
  j["summary"] = summary_to_json(report.summary);
  j["filtered_summary"] = summary_to_json(report.filtered_summary);
  j["histogram"] = histogram_to_json(report.hist);
  if (report.summary.n_total > 0) j["detection_ci"] = ci_to_json(report.detection_ci);
  return j;
}

std::string report_to_markdown(const RunReport& report) {
  auto pct = [](double v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.1f", 100.0 * v);
    return std::string(buf);
  };
  auto sec = [](const std::optional<double>& v) {
    if (!v) return std::string("-");
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2f", *v);
    return std::string(buf);
  };

  std::ostringstream md;
  md << "# " << kToolName << " " << report.command << " report\n\n";
  md << "| Metric | Value |\n|---|---|\n";
  md << "| Episodes | " << report.summary.n_total << " |\n";
  md << "| Valid detections | " << report.summary.n_valid << " |\n";
  md << "| Detection rate | " << pct(report.summary.detection_rate) << "% ["
     << pct(report.detection_ci.lo) << ", " << pct(report.detection_ci.hi) << "] |\n";
  md << "| Mean lead time (s) | " << sec(report.summary.mean_s) << " |\n";
  md << "| Median lead time (s) | " << sec(report.summary.median_s) << " |\n";
  md << "| Median after filter (s) | " << sec(report.filtered_summary.median_s) << " |\n";

  long skipped[6] = {};
  long errors = 0;
  for (const auto& o : report.outcomes) {
    if (o.error) ++errors;
    else if (o.skip) ++skipped[static_cast<int>(*o.skip)];
  }
  md << "\n| Skip reason | Count |\n|---|---|\n";
  for (int c = 0; c < 6; ++c)
    md << "| " << galt::to_string(static_cast<galt::SkipCode>(c)) << " | " << skipped[c] << " |\n";
  if (errors) md << "| error | " << errors << " |\n";
  return md.str();
}

std::string histogram_svg(const stats::Histogram& hist, const stats::Histogram* reference,
                          const std::string& title) {
  const int width = 640, height = 360;
  const int ml = 50, mr = 15, mt = title.empty() ? 15 : 35, mb = 40;
  const double plot_w = width - ml - mr, plot_h = height - mt - mb;

  long max_count = 1;
  for (long c : hist.counts) max_count = std::max(max_count, c);
  if (reference)
    for (long c : reference->counts) max_count = std::max(max_count, c);

  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  if (!title.empty())
    svg << "<text x=\"" << width / 2 << "\" y=\"22\" font-size=\"14\" text-anchor=\"middle\">"
        << title << "</text>\n";

  const double bw = plot_w / hist.n_bins;
  for (int b = 0; b < hist.n_bins; ++b) {
    const double h = plot_h * static_cast<double>(hist.counts[static_cast<size_t>(b)]) /
                     static_cast<double>(max_count);
    svg << "<rect x=\"" << num(ml + b * bw) << "\" y=\"" << num(mt + plot_h - h) << "\" width=\""
        << num(bw) << "\" height=\"" << num(h)
        << "\" fill=\"#4878a8\" fill-opacity=\"0.65\" stroke=\"#2f4f6f\" stroke-width=\"0.5\"/>\n";
  }
  if (reference && reference->n_bins == hist.n_bins) {
    // Dashed reference outline over the same bins.
    std::ostringstream pts;
    for (int b = 0; b < reference->n_bins; ++b) {
      const double h = plot_h * static_cast<double>(reference->counts[static_cast<size_t>(b)]) /
                       static_cast<double>(max_count);
      const double y = mt + plot_h - h;
      pts << (b ? " " : "") << num(ml + b * bw) << "," << num(y) << " " << num(ml + (b + 1) * bw)
          << "," << num(y);
    }
    svg << "<polyline points=\"" << pts.str()
        << "\" fill=\"none\" stroke=\"#b04030\" stroke-width=\"1.5\" stroke-dasharray=\"5,3\"/>\n";
  }

  // Axes.
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt + plot_h << "\" x2=\"" << ml + plot_w
      << "\" y2=\"" << mt + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + plot_h
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = hist.lo + (hist.hi - hist.lo) * i / 4.0;
    const double px = ml + plot_w * i / 4.0;
    svg << "<text x=\"" << num(px) << "\" y=\"" << mt + plot_h + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << num(x) << "</text>\n";
  }
  svg << "<text x=\"" << ml - 8 << "\" y=\"" << mt + 4
      << "\" font-size=\"11\" text-anchor=\"end\">" << max_count << "</text>\n";
  svg << "<text x=\"" << ml - 8 << "\" y=\"" << mt + plot_h + 4
      << "\" font-size=\"11\" text-anchor=\"end\">0</text>\n";
  svg << "<text x=\"" << ml + plot_w / 2 << "\" y=\"" << height - 8
      << "\" font-size=\"12\" text-anchor=\"middle\">lead time (s)</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

json split_sample_to_json(const protocol::SplitSample& sample) {
  json j;
  j["task"] = sample.task;
  j["split"] = protocol::to_string(sample.split);
  j["seed"] = sample.seed;
  j["object_poses"] = json::array();
  for (const auto& p : sample.object_poses)
    j["object_poses"].push_back(
        {{"name", p.name}, {"x", p.x}, {"y", p.y}, {"yaw_deg", p.yaw_deg}});
  if (sample.reset_perturbation) {
    const auto& r = *sample.reset_perturbation;
    j["reset_perturbation"] = {
        {"ee_left_delta", {r.ee_left_delta[0], r.ee_left_delta[1], r.ee_left_delta[2]}},
        {"ee_right_delta", {r.ee_right_delta[0], r.ee_right_delta[1], r.ee_right_delta[2]}},
        {"neck_yaw_delta_rad", r.neck_yaw_delta_rad},
        {"neck_pitch_delta_rad", r.neck_pitch_delta_rad}};
  }
  if (sample.cue_delay_s) j["cue_delay_s"] = *sample.cue_delay_s;
  if (sample.prompt_index) j["prompt_index"] = *sample.prompt_index;
  return j;
}

}  // namespace gale::io
