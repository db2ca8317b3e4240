#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gale/galt.hpp"
#include "gale/protocol.hpp"
#include "gale/stats.hpp"
#include "gale/trajectory.hpp"

namespace gale::io {

inline constexpr const char* kToolName = "gale";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kConfigEnvVar = "GALE_CONFIG";

enum class MatrixFormat { csv, f64le };

/// Episode on disk: a directory holding meta.json plus the action matrix as
/// CSV (default) or raw little-endian float64. See docs/FORMATS.md.
struct EpisodeMeta {
  std::string episode_id;
  std::optional<std::string> task;
  std::optional<std::string> robot;
  double rate_hz = 0.0;
  std::optional<std::string> prompt;
  std::optional<bool> success;
  ActionLayout layout;
  MatrixFormat format = MatrixFormat::csv;
};

struct EpisodeFile {
  EpisodeMeta meta;
  Eigen::MatrixXd actions;

  ActionTrajectory trajectory() const {
    return ActionTrajectory{actions, meta.rate_hz, meta.layout};
  }
};

EpisodeFile read_episode(const std::filesystem::path& episode_dir);
void write_episode(const EpisodeFile& ep, const std::filesystem::path& episode_dir);

/// All episode directories (those containing meta.json) under root, ordered
/// by episode_id.
std::vector<std::filesystem::path> list_episode_dirs(const std::filesystem::path& root);

/// Plain CSV matrix, one row per line, full double precision.
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& file,
                                std::optional<Eigen::Index> expected_cols = std::nullopt);
void write_matrix_csv(const Eigen::MatrixXd& m, const std::filesystem::path& file);

/// Detector configuration as a key = value file using the code-side
/// hyperparameter names (v_hand_thresh, v_sac_thresh, K_fix_s, ...).
galt::GaltConfig read_config_file(const std::filesystem::path& file);
void write_config_file(const galt::GaltConfig& cfg, const std::filesystem::path& file);

/// Config resolution: explicit path if given, else $GALE_CONFIG, else defaults.
galt::GaltConfig resolve_config(const std::optional<std::filesystem::path>& explicit_path);

nlohmann::json layout_to_json(const ActionLayout& layout);
ActionLayout layout_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const galt::GaltConfig& cfg);

/// FNV-1a 64 digest of a file's bytes, as 16 hex digits.
std::string file_digest_hex(const std::filesystem::path& file);

/// Report-building options shared by the galt/validate/compare commands.
struct ReportOptions {
  double hist_lo = -0.5;
  double hist_hi = 3.5;
  int hist_bins = 20;
  double filter_lo = -0.5;  // report-level value filter, independent of the
  double filter_hi = 3.0;   // detector's outlier bounds
  int workers = 0;          // 0 = hardware default
};

/// Everything a run report carries; serialization is canonical JSON with a
/// Markdown table view and an SVG histogram view.
struct RunReport {
  std::string command;
  galt::GaltConfig config;
  ReportOptions options;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::vector<galt::GaltOutcome> outcomes;                  // sorted by episode_id
  stats::GaltSummary summary;           // all valid values
  stats::GaltSummary filtered_summary;  // after the report-level filter
  stats::Histogram hist;
  stats::ProportionCI detection_ci;
};

RunReport build_run_report(std::string command,
                           const std::vector<std::pair<std::string, ActionTrajectory>>& episodes,
                           const galt::GaltConfig& cfg, const ReportOptions& opt,
                           std::vector<std::pair<std::string, std::string>> inputs = {});

nlohmann::json report_to_json(const RunReport& report);
std::string report_to_markdown(const RunReport& report);

/// Fixed-geometry bar histogram; optional dashed reference overlay.
std::string histogram_svg(const stats::Histogram& hist,
                          const stats::Histogram* reference = nullptr,
                          const std::string& title = {});

nlohmann::json split_sample_to_json(const protocol::SplitSample& sample);
nlohmann::json outcome_to_json(const galt::GaltOutcome& o);

}  // namespace gale::io
