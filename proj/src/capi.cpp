#include "elastoscat.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <sstream>
#include <string>

#include "elastoscat/config.hpp"
#include "elastoscat/io.hpp"
#include "elastoscat/verify.hpp"

using namespace elastoscat;

struct es_config {
  RunConfig value;
};

struct es_data {
  io::DataFile file;
};

struct es_result {
  InversionResult value;
  RunConfig config;
  bool phaseless = false;
};

struct es_report {
  std::vector<verify::CheckResult> checks;
  std::vector<std::string> lines;
};

namespace {

thread_local std::string last_error;

es_status fail(es_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
es_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    return fail(static_cast<es_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ES_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ES_ERR_INTERNAL, e.what());
  }
}

es_status null_arg(const char* what) { return fail(ES_ERR_INVALID_ARGUMENT, std::string(what) + " is NULL"); }

std::string num(double v) {
  std::ostringstream o;
  o.precision(16);
  o << v;
  return o.str();
}

std::vector<std::string> data_comments(const RunConfig& c, bool phaseless) {
  std::vector<std::string> out;
  out.push_back(phaseless ? "elastoscat phaseless far field (obstacle + reference ball)" : "elastoscat far field");
  out.push_back("theta " + num(c.wave.theta) + ", omega " + num(c.material.omega) + ", n " +
                std::to_string(c.grids.n_forward));
  out.push_back("noise " + num(c.noise.level) + " " +
                (c.noise.model == NoiseModel::Uniform ? "uniform" : "truncated_normal") + ", seed " +
                std::to_string(c.seed));
  if (phaseless && c.ball) {
    out.push_back("ball center (" + num(c.ball->center.x()) + ", " + num(c.ball->center.y()) + "), radius " +
                  num(c.ball->radius));
  }
  return out;
}

void check_grid(const std::vector<double>& angles, int expected) {
  if (static_cast<int>(angles.size()) != expected) {
    throw InvalidArgument("data has " + std::to_string(angles.size()) + " angles, config expects " +
                          std::to_string(expected));
  }
  const auto ref = observation_angles(expected);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (std::abs(angles[i] - ref[i]) > 1e-9) {
      throw InvalidArgument("data angles are not the equispaced grid 2 pi i / " + std::to_string(expected));
    }
  }
}

es_warning_fn warning_fn = nullptr;
void* warning_user = nullptr;

}  // namespace

extern "C" {

const char* es_last_error(void) { return last_error.c_str(); }

const char* es_status_name(es_status status) {
  switch (status) {
    case ES_OK: return "ok";
    case ES_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ES_ERR_GEOMETRY: return "geometry error";
    case ES_ERR_SINGULAR: return "singular system";
    case ES_ERR_PARSE: return "parse error";
    case ES_ERR_IO: return "i/o error";
    case ES_ERR_NOT_CONVERGED: return "not converged";
    case ES_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* es_version(void) { return "0.1.0"; }

void es_set_warning_handler(es_warning_fn fn, void* user) {
  warning_fn = fn;
  warning_user = user;
  if (fn) {
    set_warning_handler([](const std::string& m) { warning_fn(m.c_str(), warning_user); });
  } else {
    set_warning_handler(nullptr);
  }
}

es_status es_config_load(const char* path, es_config** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new es_config{load_config(path)};
    return ES_OK;
  });
}

es_status es_config_parse(const char* json, es_config** out) {
  if (!json) return null_arg("json");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new es_config{parse_config(json)};
    return ES_OK;
  });
}

es_status es_config_dump(const es_config* config, char** json) {
  if (!config) return null_arg("config");
  if (!json) return null_arg("json");
  *json = nullptr;
  return guarded([&] {
    const std::string s = dump_config(config->value);
    char* buf = new char[s.size() + 1];
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *json = buf;
    return ES_OK;
  });
}

void es_config_free(es_config* config) { delete config; }
void es_string_free(char* s) { delete[] s; }

es_status es_forward(const es_config* config, es_data** out) {
  if (!config) return null_arg("config");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const RunConfig& c = config->value;
    if (!c.obstacle) return fail(ES_ERR_INVALID_ARGUMENT, "config has no obstacle to generate data for");
    auto d = std::make_unique<es_data>();
    if (c.ball) {
      const StarlikeCurve b = c.ball->curve();
      const int nb = c.grids.n_ball > 0 ? c.grids.n_ball : c.grids.n_forward;
      const auto dens = solve_two_body(*c.obstacle, b, c.material, c.wave, c.grids.n_forward, nb);
      const auto ff = far_field_sum(dens, *c.obstacle, b, c.material, observation_angles(c.grids.observations_phaseless));
      const PhaselessData pd = add_noise_phaseless(to_phaseless(ff), c.noise.level, c.seed, c.noise.model);
      d->file.phaseless = true;
      d->file.angles = pd.angles;
      d->file.intensities = pd.values;
    } else {
      const auto dens = solve_forward(*c.obstacle, c.material, c.wave, c.grids.n_forward);
      const auto ff = far_field(dens, *c.obstacle, c.material, observation_angles(c.grids.observations_phased));
      const FarField noisy = add_noise_phased(ff, c.noise.level, c.seed, c.noise.model);
      d->file.angles = noisy.angles;
      d->file.values = noisy.values;
    }
    d->file.comments = data_comments(c, d->file.phaseless);
    *out = d.release();
    return ES_OK;
  });
}

es_status es_data_load(const char* path, es_data** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new es_data{io::read_data_file(path)};
    return ES_OK;
  });
}

es_status es_data_save(const es_data* data, const char* path) {
  if (!data) return null_arg("data");
  if (!path) return null_arg("path");
  return guarded([&] {
    io::write_file(path, [&](std::ostream& o) {
      if (data->file.phaseless) {
        io::write_phaseless(o, data->file.phaseless_data(), data->file.comments);
      } else {
        io::write_far_field(o, data->file.far_field(), data->file.comments);
      }
    });
    return ES_OK;
  });
}

es_status es_data_info(const es_data* data, size_t* count, int* phaseless) {
  if (!data) return null_arg("data");
  if (count) *count = data->file.angles.size();
  if (phaseless) *phaseless = data->file.phaseless ? 1 : 0;
  last_error.clear();
  return ES_OK;
}

es_status es_data_sample(const es_data* data, size_t index, double* angle, double* re, double* im) {
  if (!data) return null_arg("data");
  if (index >= data->file.angles.size()) return fail(ES_ERR_INVALID_ARGUMENT, "sample index out of range");
  const auto i = static_cast<Eigen::Index>(index);
  if (angle) *angle = data->file.angles[index];
  if (re) *re = data->file.phaseless ? data->file.intensities(i) : data->file.values(i).real();
  if (im) *im = data->file.phaseless ? 0.0 : data->file.values(i).imag();
  last_error.clear();
  return ES_OK;
}

void es_data_free(es_data* data) { delete data; }

es_status es_invert(const es_config* config, const es_data* data, int phaseless, es_result** out) {
  if (!config) return null_arg("config");
  if (!data) return null_arg("data");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const RunConfig& c = config->value;
    auto r = std::make_unique<es_result>();
    r->config = c;
    r->phaseless = phaseless != 0;
    if (r->phaseless != data->file.phaseless) {
      return fail(ES_ERR_INVALID_ARGUMENT, phaseless ? "phaseless inversion needs |u|^2 data (2 columns)"
                                                     : "phased inversion needs complex data (3 columns)");
    }
    const InverseConfig ic = c.inverse_config();
    if (r->phaseless) {
      if (!c.ball) return fail(ES_ERR_INVALID_ARGUMENT, "phaseless inversion needs a ball section");
      check_grid(data->file.angles, c.grids.observations_phaseless);
      r->value = run_phaseless(data->file.phaseless_data(), *c.ball, c.material, c.wave, ic, c.obstacle);
    } else {
      check_grid(data->file.angles, c.grids.observations_phased);
      r->value = run_phased(data->file.far_field(), c.material, c.wave, ic, c.obstacle);
    }
    *out = r.release();
    return ES_OK;
  });
}

es_status es_result_summary(const es_result* result, size_t* records, int* converged, double* final_E,
                            double* final_err, int* has_err) {
  if (!result) return null_arg("result");
  const auto& h = result->value.history;
  if (records) *records = h.size();
  if (converged) *converged = result->value.converged ? 1 : 0;
  if (final_E) *final_E = h.empty() ? NAN : h.back().E;
  const bool err = !h.empty() && h.back().err.has_value();
  if (final_err) *final_err = err ? *h.back().err : NAN;
  if (has_err) *has_err = err ? 1 : 0;
  last_error.clear();
  return ES_OK;
}

es_status es_result_record(const es_result* result, size_t k, double* E, double* err, int* has_err) {
  if (!result) return null_arg("result");
  const auto& h = result->value.history;
  if (k >= h.size()) return fail(ES_ERR_INVALID_ARGUMENT, "record index out of range");
  if (E) *E = h[k].E;
  if (err) *err = h[k].err.value_or(NAN);
  if (has_err) *has_err = h[k].err ? 1 : 0;
  last_error.clear();
  return ES_OK;
}

const char* es_result_failure(const es_result* result) { return result ? result->value.failure.c_str() : ""; }

es_status es_result_save_history(const es_result* result, const char* path) {
  if (!result) return null_arg("result");
  if (!path) return null_arg("path");
  return guarded([&] {
    const RunConfig& c = result->config;
    std::vector<std::string> comments{result->phaseless ? "elastoscat phaseless reconstruction"
                                                        : "elastoscat phased reconstruction"};
    if (result->phaseless && c.ball) {
      comments.push_back("ball center (" + num(c.ball->center.x()) + ", " + num(c.ball->center.y()) +
                         "), radius " + num(c.ball->radius));
    }
    comments.push_back(std::string("converged ") + (result->value.converged ? "yes" : "no"));
    if (!result->value.failure.empty()) comments.push_back("stopped: " + result->value.failure);
    io::write_file(path, [&](std::ostream& o) { io::write_history(o, result->value, c.inversion.M, comments); });
    return ES_OK;
  });
}

es_status es_result_save_curve(const es_result* result, const char* path) {
  if (!result) return null_arg("result");
  if (!path) return null_arg("path");
  if (result->value.history.empty()) return fail(ES_ERR_INVALID_ARGUMENT, "result has no iterations");
  return guarded([&] {
    io::write_file(path, [&](std::ostream& o) {
      io::write_curve_samples(o, result->value.history.back().curve, result->config.obstacle);
    });
    return ES_OK;
  });
}

void es_result_free(es_result* result) { delete result; }

namespace {

es_status make_report(std::vector<verify::CheckResult> checks, es_report** out) {
  auto r = std::make_unique<es_report>();
  for (const auto& c : checks) r->lines.push_back(verify::format(c));
  r->checks = std::move(checks);
  *out = r.release();
  return ES_OK;
}

}  // namespace

es_status es_verify(int quick, es_report** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { return make_report(verify::run_all(quick != 0), out); });
}

es_status es_acceptance(es_report** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { return make_report(verify::acceptance_suite(), out); });
}

size_t es_report_count(const es_report* report) { return report ? report->checks.size() : 0; }

es_status es_report_entry(const es_report* report, size_t index, const char** name, double* value,
                          double* tolerance, int* passed, double* seconds) {
  if (!report) return null_arg("report");
  if (index >= report->checks.size()) return fail(ES_ERR_INVALID_ARGUMENT, "report index out of range");
  const auto& c = report->checks[index];
  if (name) *name = c.name.c_str();
  if (value) *value = c.value;
  if (tolerance) *tolerance = c.tolerance;
  if (passed) *passed = c.passed ? 1 : 0;
  if (seconds) *seconds = c.seconds;
  last_error.clear();
  return ES_OK;
}

es_status es_report_line(const es_report* report, size_t index, const char** line) {
  if (!report) return null_arg("report");
  if (!line) return null_arg("line");
  if (index >= report->lines.size()) return fail(ES_ERR_INVALID_ARGUMENT, "report index out of range");
  *line = report->lines[index].c_str();
  last_error.clear();
  return ES_OK;
}

void es_report_free(es_report* report) { delete report; }

}  // extern "C"
