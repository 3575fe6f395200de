// Command line front end: phantom generation, two-stage segmentation,
// metric evaluation and the three-feature-mode comparison.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tsgc/dimacs.hpp"
#include "tsgc/metrics.hpp"
#include "tsgc/phantom.hpp"
#include "tsgc/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitPipeline = 4;

// Flag-level problems discovered after CLI11 parsing; mapped to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

tsgc::FeatureMode parse_mode(const std::string& text) {
  if (text == "timeseries") return tsgc::FeatureMode::time_series();
  if (text == "multiscale") return tsgc::FeatureMode::multiscale();
  if (text == "median") return tsgc::FeatureMode::median_scalar();
  throw UsageError("--mode must be one of timeseries|multiscale|median, got '" + text + "'");
}

tsgc::BoundaryTerm parse_boundary(const std::string& text) {
  if (text == "proposed") return tsgc::BoundaryTerm::proposed();
  if (text.rfind("gaussian:", 0) == 0) {
    try {
      std::size_t used = 0;
      double sigma = std::stod(text.substr(9), &used);
      if (used == text.size() - 9 && sigma > 0.0) return tsgc::BoundaryTerm::gaussian(sigma);
    } catch (const std::exception&) {
    }
  }
  throw UsageError("--boundary must be proposed or gaussian:SIGMA with SIGMA > 0, got '" + text +
                   "'");
}

std::string boundary_name(const tsgc::BoundaryTerm& term) {
  if (term.kind == tsgc::BoundaryTerm::Kind::Proposed) return "proposed";
  return "gaussian:" + std::to_string(term.sigma);
}

std::pair<int, int> parse_size(const std::string& text) {
  auto x = text.find('x');
  if (x != std::string::npos) {
    try {
      std::size_t ua = 0, ub = 0;
      int h = std::stoi(text.substr(0, x), &ua);
      int w = std::stoi(text.substr(x + 1), &ub);
      if (ua == x && ub == text.size() - x - 1 && h >= 1 && w >= 1) return {h, w};
    } catch (const std::exception&) {
    }
  }
  throw UsageError("--size must look like HxW, got '" + text + "'");
}

void check_smooth(const std::optional<int>& smooth) {
  if (smooth.has_value() && (*smooth < 1 || *smooth % 2 == 0)) {
    throw UsageError("--smooth must be an odd kernel size >= 1");
  }
}

int thread_env() {
  const char* env = std::getenv("TSGC_THREADS");
  if (env == nullptr) return 0;
  return std::atoi(env);
}

json energy_json(const tsgc::EnergyReport& report) {
  return json{{"data_term", report.data_term},
              {"perimeter_term", report.perimeter_term},
              {"total", report.total},
              {"lambda", report.lambda}};
}

void write_json(const json& doc, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw tsgc::IoError("cannot write " + path.string());
  out << doc.dump(2) << "\n";
  if (!out.flush()) throw tsgc::IoError("write failed for " + path.string());
}

// The truth for evaluation may be a 0..3 label archive or a plain binary
// mask; nonzero bytes above 3 make it a mask.
tsgc::Mask load_truth_region(const fs::path& path, bool include_vessel) {
  try {
    return tsgc::label_region(tsgc::load_labels(path), include_vessel);
  } catch (const tsgc::IoError&) {
    return tsgc::load_mask(path);
  }
}

struct SegmentArgs {
  std::string volume, liver_mask, roi_healthy, roi_tumor, roi_vessel;
  std::string mode = "timeseries";
  std::string boundary = "proposed";
  bool full_image = false;
  int smooth = 0;  // 0 = none
  std::string out_dir;
  std::string dump_graph;
  std::string truth;  // compare only
};

tsgc::SegmentationRequest load_request(const SegmentArgs& args, const tsgc::FeatureMode& mode) {
  tsgc::SegmentationRequest req;
  req.volume = tsgc::load_volume(args.volume);
  req.liver_mask = tsgc::load_mask(args.liver_mask);
  req.roi_healthy = tsgc::load_mask(args.roi_healthy);
  req.roi_tumor = tsgc::load_mask(args.roi_tumor);
  req.roi_vessel = tsgc::load_mask(args.roi_vessel);
  req.mode = mode;
  req.boundary = parse_boundary(args.boundary);
  req.full_image = args.full_image;
  if (args.smooth != 0) req.smoothing = args.smooth;
  return req;
}

json label_counts(const tsgc::LabelMap& labels) {
  std::size_t counts[4] = {0, 0, 0, 0};
  for (tsgc::Label l : labels.labels) ++counts[static_cast<int>(l)];
  return json{{"background", counts[0]},
              {"healthy", counts[1]},
              {"tumor", counts[2]},
              {"vessel", counts[3]}};
}

void dump_stage1_graph(const tsgc::SegmentationRequest& req, const fs::path& path) {
  const tsgc::TimeSeriesVolume* vol = &req.volume;
  tsgc::TimeSeriesVolume smoothed;
  if (req.smoothing.has_value()) {
    smoothed = tsgc::smooth_volume(req.volume, *req.smoothing);
    vol = &smoothed;
  }
  tsgc::FeatureField features = tsgc::compute_features(*vol, req.mode);
  tsgc::FeatureVector mu1 = tsgc::region_mean(features, req.roi_healthy);
  tsgc::FeatureVector mu2 = tsgc::region_mean(features, req.roi_tumor);
  tsgc::PixelGraph graph = tsgc::build_graph(features, mu1, mu2, req.liver_mask, req.boundary);
  std::ofstream out(path);
  if (!out) throw tsgc::IoError("cannot write " + path.string());
  tsgc::write_dimacs(graph, out);
}

int run_segment(const SegmentArgs& args) {
  tsgc::FeatureMode mode = parse_mode(args.mode);
  check_smooth(args.smooth == 0 ? std::nullopt : std::optional<int>(args.smooth));

  fs::path out_dir(args.out_dir);
  fs::create_directories(out_dir);

  tsgc::SegmentationRequest req = load_request(args, mode);
  if (!args.dump_graph.empty()) dump_stage1_graph(req, args.dump_graph);

  auto t0 = std::chrono::steady_clock::now();
  tsgc::SegmentationResult result = tsgc::segment(req);
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  tsgc::save_labels(result.labels, out_dir / "labels.pgm");
  tsgc::render_labels(result.labels, out_dir / "labels.ppm");

  json manifest{
      {"command", "segment"},
      {"inputs",
       {{"volume", args.volume},
        {"liver_mask", args.liver_mask},
        {"roi_healthy", args.roi_healthy},
        {"roi_tumor", args.roi_tumor},
        {"roi_vessel", args.roi_vessel}}},
      {"options",
       {{"mode", args.mode},
        {"boundary", boundary_name(req.boundary)},
        {"full_image", args.full_image},
        {"smooth", args.smooth},
        {"threads", thread_env()}}},
      {"out_dir", args.out_dir},
      {"outputs", {{"labels_pgm", "labels.pgm"}, {"labels_ppm", "labels.ppm"}}},
      {"elapsed_seconds",
       {{"stage1", result.stage1_seconds}, {"stage2", result.stage2_seconds}, {"total", total}}},
      {"energy",
       {{"stage1", energy_json(result.energy_stage1)},
        {"stage2", result.energy_stage2 ? energy_json(*result.energy_stage2) : json(nullptr)}}},
      {"label_counts", label_counts(result.labels)}};
  write_json(manifest, out_dir / "manifest.json");

  std::cout << "segment: wrote " << (out_dir / "labels.pgm").string() << " ("
            << manifest["label_counts"]["tumor"].get<std::size_t>() << " tumor px, "
            << manifest["label_counts"]["vessel"].get<std::size_t>() << " vessel px) in " << total
            << " s\n";
  return kExitOk;
}

int run_evaluate(const std::string& labels_path, const std::string& truth_path,
                 bool include_vessel, std::string json_path) {
  tsgc::LabelMap labels = tsgc::load_labels(labels_path);
  tsgc::Mask segmented = tsgc::label_region(labels, include_vessel);
  tsgc::Mask truth = load_truth_region(truth_path, include_vessel);

  double voe = tsgc::voe_percent(segmented, truth);
  double rvd = tsgc::rvd_percent(segmented, truth);
  double dice = tsgc::dsc(segmented, truth);

  char line[160];
  std::snprintf(line, sizeof(line), "%-8s %10s %10s %8s\n", "metric", "VOE%", "RVD%", "DSC");
  std::cout << line;
  std::snprintf(line, sizeof(line), "%-8s %10.2f %10.2f %8.4f\n", "value", voe, rvd, dice);
  std::cout << line;

  if (json_path.empty()) {
    json_path = (fs::path(labels_path).parent_path() / "metrics.json").string();
  }
  write_json(json{{"command", "evaluate"},
                  {"inputs", {{"labels", labels_path}, {"truth", truth_path}}},
                  {"include_vessel", include_vessel},
                  {"voe_percent", voe},
                  {"rvd_percent", rvd},
                  {"dsc", dice}},
             json_path);
  return kExitOk;
}

int run_compare(const SegmentArgs& args) {
  check_smooth(args.smooth == 0 ? std::nullopt : std::optional<int>(args.smooth));
  parse_boundary(args.boundary);  // fail fast on bad flags

  tsgc::Mask truth = load_truth_region(args.truth, false);
  fs::path out_dir;
  if (!args.out_dir.empty()) {
    out_dir = args.out_dir;
    fs::create_directories(out_dir);
  }

  char line[160];
  std::snprintf(line, sizeof(line), "%-12s %8s %8s %8s %11s\n", "mode", "VOE%", "RVD%", "DSC",
                "sec/slice");
  std::cout << line;

  json rows = json::array();
  for (const std::string& mode_name : {std::string("timeseries"), std::string("multiscale"),
                                       std::string("median")}) {
    tsgc::SegmentationRequest req = load_request(args, parse_mode(mode_name));
    auto t0 = std::chrono::steady_clock::now();
    tsgc::SegmentationResult result = tsgc::segment(req);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    tsgc::Mask segmented = tsgc::label_region(result.labels, false);
    double voe = tsgc::voe_percent(segmented, truth);
    double rvd = tsgc::rvd_percent(segmented, truth);
    double dice = tsgc::dsc(segmented, truth);

    std::snprintf(line, sizeof(line), "%-12s %8.2f %8.2f %8.4f %11.3f\n", mode_name.c_str(), voe,
                  rvd, dice, elapsed);
    std::cout << line;
    rows.push_back(json{{"mode", mode_name},
                        {"voe_percent", voe},
                        {"rvd_percent", rvd},
                        {"dsc", dice},
                        {"seconds_per_slice", elapsed}});

    if (!out_dir.empty()) {
      fs::path mode_dir = out_dir / mode_name;
      fs::create_directories(mode_dir);
      tsgc::save_labels(result.labels, mode_dir / "labels.pgm");
      tsgc::render_labels(result.labels, mode_dir / "labels.ppm");
    }
  }

  if (!out_dir.empty()) {
    write_json(json{{"command", "compare"},
                    {"inputs",
                     {{"volume", args.volume},
                      {"liver_mask", args.liver_mask},
                      {"roi_healthy", args.roi_healthy},
                      {"roi_tumor", args.roi_tumor},
                      {"roi_vessel", args.roi_vessel},
                      {"truth", args.truth}}},
                    {"options",
                     {{"boundary", args.boundary},
                      {"full_image", args.full_image},
                      {"smooth", args.smooth}}},
                    {"rows", rows}},
               out_dir / "compare.json");
  }
  return kExitOk;
}

struct PhantomArgs {
  std::uint64_t seed = 1;
  double noise = 0.0;
  std::string size = "64x64";
  int timepoints = 59;
  std::string out_dir;
};

int run_phantom(const PhantomArgs& args) {
  auto [h, w] = parse_size(args.size);
  if (args.timepoints < 1) throw UsageError("--timepoints must be >= 1");
  if (args.noise < 0.0) throw UsageError("--noise must be nonnegative");

  tsgc::PhantomConfig cfg = tsgc::default_phantom(h, w, args.timepoints, args.seed, args.noise);
  tsgc::PhantomCase result = tsgc::generate(cfg);

  fs::path out_dir(args.out_dir);
  fs::create_directories(out_dir);
  tsgc::save_volume(result.volume, out_dir / "volume.tsv");
  tsgc::save_mask(result.liver_mask, out_dir / "liver_mask.pgm");
  tsgc::save_mask(result.roi_healthy, out_dir / "roi_healthy.pgm");
  tsgc::save_mask(result.roi_tumor, out_dir / "roi_tumor.pgm");
  tsgc::save_mask(result.roi_vessel, out_dir / "roi_vessel.pgm");
  tsgc::save_labels(result.truth, out_dir / "truth_labels.pgm");
  tsgc::render_labels(result.truth, out_dir / "truth.ppm");

  write_json(json{{"command", "phantom"},
                  {"seed", args.seed},
                  {"noise_sigma", args.noise},
                  {"height", h},
                  {"width", w},
                  {"timepoints", args.timepoints},
                  {"outputs",
                   {"volume.tsv", "liver_mask.pgm", "roi_healthy.pgm", "roi_tumor.pgm",
                    "roi_vessel.pgm", "truth_labels.pgm", "truth.ppm"}}},
             out_dir / "phantom.json");

  std::cout << "phantom: wrote " << h << "x" << w << "x" << args.timepoints << " case to "
            << out_dir.string() << "\n";
  return kExitOk;
}

void add_segment_inputs(CLI::App* cmd, SegmentArgs& args) {
  cmd->add_option("--volume", args.volume, "TSV time-series volume")->required();
  cmd->add_option("--liver-mask", args.liver_mask, "liver mask PGM")->required();
  cmd->add_option("--roi-healthy", args.roi_healthy, "healthy tissue ROI PGM")->required();
  cmd->add_option("--roi-tumor", args.roi_tumor, "tumor tissue ROI PGM")->required();
  cmd->add_option("--roi-vessel", args.roi_vessel, "vessel tissue ROI PGM")->required();
  cmd->add_option("--boundary", args.boundary, "proposed | gaussian:SIGMA");
  cmd->add_flag("--full-image", args.full_image, "cut the full grid, mask labels afterwards");
  cmd->add_option("--smooth", args.smooth, "odd box-smoothing kernel (default: none)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-series graph-cut segmentation of contrast-enhanced liver CT slices"};
  app.require_subcommand(1);

  PhantomArgs phantom_args;
  CLI::App* phantom_cmd = app.add_subcommand("phantom", "generate a synthetic test case");
  phantom_cmd->add_option("--seed", phantom_args.seed, "RNG seed");
  phantom_cmd->add_option("--noise", phantom_args.noise, "Gaussian noise sigma in HU");
  phantom_cmd->add_option("--size", phantom_args.size, "image size HxW");
  phantom_cmd->add_option("--timepoints", phantom_args.timepoints, "series length");
  phantom_cmd->add_option("--out", phantom_args.out_dir, "output directory")->required();

  SegmentArgs segment_args;
  CLI::App* segment_cmd = app.add_subcommand("segment", "run the two-stage segmentation");
  add_segment_inputs(segment_cmd, segment_args);
  segment_cmd->add_option("--mode", segment_args.mode, "timeseries | multiscale | median");
  segment_cmd->add_option("--out", segment_args.out_dir, "output directory")->required();
  segment_cmd->add_option("--dump-graph", segment_args.dump_graph,
                          "write the stage-1 network in DIMACS form");

  std::string eval_labels, eval_truth, eval_json;
  bool eval_include_vessel = false;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "score labels against ground truth");
  evaluate_cmd->add_option("--labels", eval_labels, "label archive PGM")->required();
  evaluate_cmd->add_option("--truth", eval_truth, "truth labels or binary mask PGM")->required();
  evaluate_cmd->add_flag("--include-vessel", eval_include_vessel,
                         "score tumor+vessel instead of tumor only");
  evaluate_cmd->add_option("--json", eval_json, "metrics JSON path (default: beside labels)");

  SegmentArgs compare_args;
  CLI::App* compare_cmd = app.add_subcommand("compare", "run all three feature modes");
  add_segment_inputs(compare_cmd, compare_args);
  compare_cmd->add_option("--truth", compare_args.truth, "truth labels or binary mask PGM")
      ->required();
  compare_cmd->add_option("--out", compare_args.out_dir, "optional output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(phantom_cmd)) return run_phantom(phantom_args);
    if (app.got_subcommand(segment_cmd)) return run_segment(segment_args);
    if (app.got_subcommand(evaluate_cmd)) {
      return run_evaluate(eval_labels, eval_truth, eval_include_vessel, eval_json);
    }
    if (app.got_subcommand(compare_cmd)) return run_compare(compare_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const tsgc::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    // phantom geometry problems are configuration mistakes, not pipeline failures
    std::cerr << "error: " << e.what() << "\n";
    return app.got_subcommand(phantom_cmd) ? kExitUsage : kExitPipeline;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPipeline;
  }
  return kExitUsage;
}
