#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <unistd.h>

#include "elastoscat.h"
#include "elastoscat/forward.hpp"

namespace fs = std::filesystem;

namespace {

const char* kCircle = R"({
  "obstacle": {"kind": "circle", "center": [0.05, 0.0], "parameters": {"radius": 0.5}},
  "grids": {"n_forward": 24, "n_inverse": 16, "observations_phased": 16, "observations_phaseless": 16},
  "inversion": {"M": 2, "max_iter": 2, "epsilon": 1e-9, "initial_radius": 0.45},
  "noise": {"level": 0.0}
})";

fs::path scratch_dir() {
  const fs::path p = fs::temp_directory_path() / ("elastoscat_capi_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("status names, version, null arguments") {
  CHECK(std::string(es_status_name(ES_OK)) == "ok");
  CHECK(std::string(es_status_name(ES_ERR_PARSE)) == "parse error");
  CHECK(std::string(es_version()) == "0.1.0");
  CHECK(es_config_parse(nullptr, nullptr) == ES_ERR_INVALID_ARGUMENT);
  CHECK(std::string(es_last_error()).find("NULL") != std::string::npos);
  es_config* c = nullptr;
  CHECK(es_config_parse("{}", &c) == ES_OK);
  CHECK(std::string(es_last_error()).empty());
  CHECK(es_forward(c, nullptr) == ES_ERR_INVALID_ARGUMENT);
  es_data* d = nullptr;
  CHECK(es_forward(c, &d) == ES_ERR_INVALID_ARGUMENT);
  CHECK(d == nullptr);
  CHECK(std::string(es_last_error()).find("no obstacle") != std::string::npos);
  es_config_free(c);
  es_config_free(nullptr);
  es_data_free(nullptr);
  es_result_free(nullptr);
  es_report_free(nullptr);
  CHECK(es_report_count(nullptr) == 0);
  CHECK(std::string(es_result_failure(nullptr)).empty());
}

TEST_CASE("error codes map the failure category") {
  es_config* c = nullptr;
  CHECK(es_config_parse("{", &c) == ES_ERR_PARSE);
  CHECK(c == nullptr);
  CHECK(es_config_parse(R"({"inversion": {"rho": 3}})", &c) == ES_ERR_INVALID_ARGUMENT);
  CHECK(es_config_parse(R"({"obstacle": {"kind": "circle", "parameters": {"radius": -1}}})", &c) ==
        ES_ERR_GEOMETRY);
  CHECK(es_config_load("/nonexistent/x.json", &c) == ES_ERR_IO);
  es_data* d = nullptr;
  CHECK(es_data_load("/nonexistent/x.dat", &d) == ES_ERR_IO);
  CHECK(!std::string(es_last_error()).empty());
}

TEST_CASE("config dump round trip") {
  es_config* c = nullptr;
  REQUIRE(es_config_parse(kCircle, &c) == ES_OK);
  char* a = nullptr;
  REQUIRE(es_config_dump(c, &a) == ES_OK);
  es_config* c2 = nullptr;
  REQUIRE(es_config_parse(a, &c2) == ES_OK);
  char* b = nullptr;
  REQUIRE(es_config_dump(c2, &b) == ES_OK);
  CHECK(std::string(a) == std::string(b));
  es_string_free(a);
  es_string_free(b);
  es_config_free(c);
  es_config_free(c2);
}

TEST_CASE("forward, save, load, invert") {
  const fs::path dir = scratch_dir();
  es_config* c = nullptr;
  REQUIRE(es_config_parse(kCircle, &c) == ES_OK);
  es_data* d = nullptr;
  REQUIRE(es_forward(c, &d) == ES_OK);
  size_t count = 0;
  int phaseless = -1;
  REQUIRE(es_data_info(d, &count, &phaseless) == ES_OK);
  CHECK(count == 16);
  CHECK(phaseless == 0);
  double angle, re, im;
  CHECK(es_data_sample(d, 1, &angle, &re, &im) == ES_OK);
  CHECK(angle == doctest::Approx(std::numbers::pi / 8));
  CHECK(es_data_sample(d, 16, &angle, &re, &im) == ES_ERR_INVALID_ARGUMENT);

  const std::string path = (dir / "ff.dat").string();
  REQUIRE(es_data_save(d, path.c_str()) == ES_OK);
  es_data* loaded = nullptr;
  REQUIRE(es_data_load(path.c_str(), &loaded) == ES_OK);
  double re2, im2;
  es_data_sample(loaded, 3, nullptr, &re, &im);
  es_data_sample(d, 3, nullptr, &re2, &im2);
  // 16 significant digits on disk
  CHECK(std::abs(re - re2) <= 1e-15 * std::abs(re2));
  CHECK(std::abs(im - im2) <= 1e-15 * std::abs(im2));
  // saving loaded data reproduces the file
  const std::string path2 = (dir / "ff2.dat").string();
  REQUIRE(es_data_save(loaded, path2.c_str()) == ES_OK);
  CHECK(slurp(path) == slurp(path2));

  es_result* r = nullptr;
  CHECK(es_invert(c, loaded, 1, &r) == ES_ERR_INVALID_ARGUMENT);
  CHECK(r == nullptr);
  REQUIRE(es_invert(c, loaded, 0, &r) == ES_OK);
  size_t records = 0;
  int converged = -1, has_err = -1;
  double E = 0, err = 0;
  REQUIRE(es_result_summary(r, &records, &converged, &E, &err, &has_err) == ES_OK);
  CHECK(records == 3);
  CHECK(converged == 0);
  CHECK(has_err == 1);
  double E0 = 0;
  CHECK(es_result_record(r, 0, &E0, nullptr, nullptr) == ES_OK);
  CHECK(E < E0);
  CHECK(es_result_record(r, 3, &E0, nullptr, nullptr) == ES_ERR_INVALID_ARGUMENT);

  const std::string hist = (dir / "history.csv").string();
  const std::string curve = (dir / "curve.dat").string();
  REQUIRE(es_result_save_history(r, hist.c_str()) == ES_OK);
  REQUIRE(es_result_save_curve(r, curve.c_str()) == ES_OK);
  CHECK(slurp(hist).find("# k, E_k, Err_k, c1, c2") != std::string::npos);
  CHECK(slurp(hist).find("converged no") != std::string::npos);
  CHECK(slurp(curve).find("x_true") != std::string::npos);
  CHECK(es_result_save_history(r, "/nonexistent/h.csv") == ES_ERR_IO);

  es_result_free(r);
  es_data_free(loaded);
  es_data_free(d);
  es_config_free(c);
  fs::remove_all(dir);
}

TEST_CASE("grid mismatch is rejected before iterating") {
  es_config* c = nullptr;
  REQUIRE(es_config_parse(kCircle, &c) == ES_OK);
  es_data* d = nullptr;
  REQUIRE(es_forward(c, &d) == ES_OK);
  es_config* other = nullptr;
  REQUIRE(es_config_parse(R"({"grids": {"observations_phased": 32}})", &other) == ES_OK);
  es_result* r = nullptr;
  CHECK(es_invert(other, d, 0, &r) == ES_ERR_INVALID_ARGUMENT);
  CHECK(std::string(es_last_error()).find("16 angles") != std::string::npos);
  es_config_free(other);
  es_data_free(d);
  es_config_free(c);
}

TEST_CASE("phaseless data with a ball") {
  es_config* c = nullptr;
  REQUIRE(es_config_parse(R"({
    "obstacle": {"kind": "circle", "parameters": {"radius": 0.5}},
    "ball": {"center": [3, 0], "radius": 0.6},
    "grids": {"n_forward": 16, "n_inverse": 16, "observations_phaseless": 16},
    "inversion": {"initial_radius": 0.5}, "noise": {"level": 0.0}
  })",
                          &c) == ES_OK);
  es_data* d = nullptr;
  REQUIRE(es_forward(c, &d) == ES_OK);
  int phaseless = 0;
  es_data_info(d, nullptr, &phaseless);
  CHECK(phaseless == 1);
  double re = -1, im = -1;
  es_data_sample(d, 0, nullptr, &re, &im);
  CHECK(re > 0);
  CHECK(im == 0);
  es_result* r = nullptr;
  REQUIRE(es_invert(c, d, 1, &r) == ES_OK);
  size_t records = 0;
  int converged = 0;
  es_result_summary(r, &records, &converged, nullptr, nullptr, nullptr);
  CHECK(records == 1);
  CHECK(converged == 1);
  CHECK(std::string(es_result_failure(r)).empty());
  es_result_free(r);
  es_data_free(d);
  es_config_free(c);
}

TEST_CASE("warning handler receives solver diagnostics") {
  struct Sink {
    int count = 0;
    std::string last;
  } sink;
  es_set_warning_handler(
      [](const char* msg, void* user) {
        auto* s = static_cast<Sink*>(user);
        ++s->count;
        s->last = msg;
      },
      &sink);
  elastoscat::emit_warning("condition estimate 1e13");
  CHECK(sink.count == 1);
  CHECK(sink.last == "condition estimate 1e13");
  es_set_warning_handler(nullptr, nullptr);
  elastoscat::emit_warning("to stderr");
  CHECK(sink.count == 1);
}

TEST_CASE("quick verification report") {
  es_report* r = nullptr;
  REQUIRE(es_verify(1, &r) == ES_OK);
  CHECK(es_report_count(r) >= 8);
  const char* name = nullptr;
  int passed = -1;
  double value, tol, secs;
  REQUIRE(es_report_entry(r, 0, &name, &value, &tol, &passed, &secs) == ES_OK);
  CHECK(std::string(name).size() > 0);
  const char* line = nullptr;
  REQUIRE(es_report_line(r, 0, &line) == ES_OK);
  CHECK((std::string(line).rfind("PASS", 0) == 0 || std::string(line).rfind("FAIL", 0) == 0));
  CHECK(es_report_line(r, 1000, &line) == ES_ERR_INVALID_ARGUMENT);
  es_report_free(r);
}

}  // TEST_SUITE
