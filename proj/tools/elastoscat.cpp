#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "elastoscat.h"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kError = 1, kNotConverged = 2, kChecksFailed = 3 };

int report_error(es_status status) {
  std::fprintf(stderr, "elastoscat: %s: %s\n", es_status_name(status), es_last_error());
  return kError;
}

fs::path out_dir() {
  const char* env = std::getenv("ELASTOSCAT_OUT_DIR");
  fs::path dir = (env && *env) ? fs::path(env) : fs::current_path();
  fs::create_directories(dir);
  return dir;
}

int cmd_forward(const std::string& cfg_path) {
  es_config* cfg = nullptr;
  if (es_status s = es_config_load(cfg_path.c_str(), &cfg)) return report_error(s);
  es_data* data = nullptr;
  es_status s = es_forward(cfg, &data);
  es_config_free(cfg);
  if (s) return report_error(s);
  size_t count = 0;
  int phaseless = 0;
  es_data_info(data, &count, &phaseless);
  const fs::path path = out_dir() / (phaseless ? "phaseless.dat" : "farfield.dat");
  s = es_data_save(data, path.string().c_str());
  es_data_free(data);
  if (s) return report_error(s);
  std::printf("%s: %zu %s samples\n", path.string().c_str(), count, phaseless ? "phaseless" : "phased");
  return kOk;
}

int cmd_invert(const std::string& cfg_path, const std::string& data_path, bool phaseless) {
  es_config* cfg = nullptr;
  if (es_status s = es_config_load(cfg_path.c_str(), &cfg)) return report_error(s);
  es_data* data = nullptr;
  if (es_status s = es_data_load(data_path.c_str(), &data)) {
    es_config_free(cfg);
    return report_error(s);
  }
  es_result* res = nullptr;
  es_status s = es_invert(cfg, data, phaseless ? 1 : 0, &res);
  es_data_free(data);
  es_config_free(cfg);
  if (s) return report_error(s);

  const fs::path dir = out_dir();
  const fs::path history = dir / "history.csv";
  const fs::path curve = dir / "curve.dat";
  if ((s = es_result_save_history(res, history.string().c_str())) ||
      (s = es_result_save_curve(res, curve.string().c_str()))) {
    es_result_free(res);
    return report_error(s);
  }
  size_t records = 0;
  int converged = 0, has_err = 0;
  double E = 0.0, err = 0.0;
  es_result_summary(res, &records, &converged, &E, &err, &has_err);
  std::printf("iterations %zu, E %.4e", records ? records - 1 : 0, E);
  if (has_err) std::printf(", Err %.4e", err);
  std::printf(", %s\n", converged ? "converged" : "not converged");
  if (*es_result_failure(res)) std::printf("stopped: %s\n", es_result_failure(res));
  std::printf("%s\n%s\n", history.string().c_str(), curve.string().c_str());
  es_result_free(res);
  return converged ? kOk : kNotConverged;
}

int cmd_verify(bool quick) {
  es_report* rep = nullptr;
  if (es_status s = es_verify(quick ? 1 : 0, &rep)) return report_error(s);
  bool all = true;
  for (size_t i = 0; i < es_report_count(rep); ++i) {
    const char* line = nullptr;
    int passed = 0;
    es_report_line(rep, i, &line);
    es_report_entry(rep, i, nullptr, nullptr, nullptr, &passed, nullptr);
    std::printf("%s\n", line);
    all = all && passed;
  }
  es_report_free(rep);
  return all ? kOk : kChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acoustic scattering by an elastic obstacle: forward data, reconstruction, verification"};
  app.require_subcommand(1);

  std::string cfg, data;
  bool phaseless = false, quick = false;

  auto* fwd = app.add_subcommand("forward", "write synthetic far-field data for the configured obstacle");
  fwd->add_option("config", cfg, "config file (JSON)")->required()->check(CLI::ExistingFile);

  auto* inv = app.add_subcommand("invert", "reconstruct the obstacle from a data file");
  inv->add_option("config", cfg, "config file (JSON)")->required()->check(CLI::ExistingFile);
  inv->add_option("data", data, "far-field data file")->required()->check(CLI::ExistingFile);
  inv->add_flag("--phaseless", phaseless, "data holds |u|^2 with a reference ball");

  auto* ver = app.add_subcommand("verify", "run the verification checks");
  ver->add_flag("--quick", quick, "skip the two reconstructions");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fwd) return cmd_forward(cfg);
    if (*inv) return cmd_invert(cfg, data, phaseless);
    if (*ver) return cmd_verify(quick);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "elastoscat: %s\n", e.what());
    return kError;
  }
  return kError;
}
