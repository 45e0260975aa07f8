#include "elastoscat/config.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json_curve.hpp"

namespace elastoscat {

namespace {

using json = nlohmann::ordered_json;

void only_keys(const json& j, const char* section, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ParseError(std::string("section '") + section + "' must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw ParseError(std::string("unknown key '") + item.key() + "' in section '" + section + "'");
    }
  }
}

double number(const json& j, const char* key) {
  if (!j.is_number()) throw ParseError(std::string("'") + key + "' must be a number");
  return j.get<double>();
}

int integer(const json& j, const char* key) {
  if (!j.is_number_integer()) throw ParseError(std::string("'") + key + "' must be an integer");
  return j.get<int>();
}

double angle(const json& j, const char* key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_angle(j.get<std::string>());
  throw ParseError(std::string("'") + key + "' must be a number or an angle string");
}

template <class F>
void read(const json& section, const char* key, F&& assign) {
  if (section.contains(key)) assign(section[key]);
}

const char* noise_name(NoiseModel m) { return m == NoiseModel::Uniform ? "uniform" : "truncated_normal"; }

const char* linearization_name(Linearization l) {
  return l == Linearization::FrozenDensity ? "frozen_density" : "incident_phase";
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(c)));
  }
  if (s.empty()) throw ParseError("empty angle");
  // [sign][number][*]pi[/number] or a plain number
  const auto pos = s.find("pi");
  auto to_double = [&](const std::string& part) {
    try {
      std::size_t used = 0;
      const double v = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      return v;
    } catch (const std::exception&) {
      throw ParseError("malformed angle '" + text + "'");
    }
  };
  if (pos == std::string::npos) return to_double(s);
  std::string coef = s.substr(0, pos);
  std::string rest = s.substr(pos + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double factor = 1.0;
  if (coef == "-") {
    factor = -1.0;
  } else if (!coef.empty() && coef != "+") {
    factor = to_double(coef);
  }
  double value = factor * kPi;
  if (!rest.empty()) {
    if (rest[0] != '/') throw ParseError("malformed angle '" + text + "'");
    const double den = to_double(rest.substr(1));
    if (den == 0.0) throw ParseError("angle '" + text + "' divides by zero");
    value /= den;
  }
  return value;
}

void RunConfig::validate() const {
  material.validate();
  inverse_config().validate();
  if (grids.n_forward < 8) throw InvalidArgument("grids.n_forward must be >= 8");
  if (grids.n_ball < 0) throw InvalidArgument("grids.n_ball must be >= 0");
  if (grids.observations_phased < 1 || grids.observations_phaseless < 1) {
    throw InvalidArgument("observation counts must be positive");
  }
  if (!(noise.level >= 0.0)) throw InvalidArgument("noise.level must be >= 0");
  if (ball && !(ball->radius > 0.0)) throw InvalidArgument("ball.radius must be positive");
}

InverseConfig RunConfig::inverse_config() const {
  InverseConfig c = inversion;
  c.n = grids.n_inverse;
  c.n_ball = grids.n_ball;
  return c;
}

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  only_keys(root, "root", {"material", "wave", "obstacle", "ball", "grids", "inversion", "noise", "seed"});
  RunConfig c;

  read(root, "material", [&](const json& s) {
    only_keys(s, "material", {"lambda", "mu", "rho_e", "rho_a", "omega", "c"});
    read(s, "lambda", [&](const json& v) { c.material.lambda = number(v, "lambda"); });
    read(s, "mu", [&](const json& v) { c.material.mu = number(v, "mu"); });
    read(s, "rho_e", [&](const json& v) { c.material.rho_e = number(v, "rho_e"); });
    read(s, "rho_a", [&](const json& v) { c.material.rho_a = number(v, "rho_a"); });
    read(s, "omega", [&](const json& v) { c.material.omega = angle(v, "omega"); });
    read(s, "c", [&](const json& v) { c.material.c = number(v, "c"); });
  });
  read(root, "wave", [&](const json& s) {
    only_keys(s, "wave", {"theta"});
    read(s, "theta", [&](const json& v) { c.wave.theta = angle(v, "theta"); });
  });
  read(root, "obstacle", [&](const json& s) {
    only_keys(s, "obstacle", {"kind", "center", "parameters"});
    c.obstacle = detail::curve_from(s);
  });
  read(root, "ball", [&](const json& s) {
    only_keys(s, "ball", {"center", "radius"});
    ReferenceBallSpec b;
    read(s, "center", [&](const json& v) { b.center = detail::vec2_from(v, "ball.center"); });
    read(s, "radius", [&](const json& v) { b.radius = number(v, "ball.radius"); });
    c.ball = b;
  });
  read(root, "grids", [&](const json& s) {
    only_keys(s, "grids", {"n_forward", "n_inverse", "n_ball", "observations_phased", "observations_phaseless"});
    read(s, "n_forward", [&](const json& v) { c.grids.n_forward = integer(v, "n_forward"); });
    read(s, "n_inverse", [&](const json& v) { c.grids.n_inverse = integer(v, "n_inverse"); });
    read(s, "n_ball", [&](const json& v) { c.grids.n_ball = integer(v, "n_ball"); });
    read(s, "observations_phased",
         [&](const json& v) { c.grids.observations_phased = integer(v, "observations_phased"); });
    read(s, "observations_phaseless",
         [&](const json& v) { c.grids.observations_phaseless = integer(v, "observations_phaseless"); });
  });
  read(root, "inversion", [&](const json& s) {
    only_keys(s, "inversion",
              {"M", "rho", "epsilon", "max_iter", "initial_center", "initial_radius", "linearization"});
    read(s, "M", [&](const json& v) { c.inversion.M = integer(v, "M"); });
    read(s, "rho", [&](const json& v) { c.inversion.rho = number(v, "rho"); });
    read(s, "epsilon", [&](const json& v) { c.inversion.epsilon = number(v, "epsilon"); });
    read(s, "max_iter", [&](const json& v) { c.inversion.max_iter = integer(v, "max_iter"); });
    read(s, "initial_center",
         [&](const json& v) { c.inversion.initial_center = detail::vec2_from(v, "initial_center"); });
    read(s, "initial_radius", [&](const json& v) { c.inversion.initial_radius = number(v, "initial_radius"); });
    read(s, "linearization", [&](const json& v) {
      const std::string name = v.is_string() ? v.get<std::string>() : std::string();
      if (name == "frozen_density") {
        c.inversion.linearization = Linearization::FrozenDensity;
      } else if (name == "incident_phase") {
        c.inversion.linearization = Linearization::IncidentPhase;
      } else {
        throw ParseError("inversion.linearization must be 'frozen_density' or 'incident_phase'");
      }
    });
  });
  read(root, "noise", [&](const json& s) {
    only_keys(s, "noise", {"level", "model"});
    read(s, "level", [&](const json& v) { c.noise.level = number(v, "noise.level"); });
    read(s, "model", [&](const json& v) {
      const std::string name = v.is_string() ? v.get<std::string>() : std::string();
      if (name == "uniform") {
        c.noise.model = NoiseModel::Uniform;
      } else if (name == "truncated_normal") {
        c.noise.model = NoiseModel::TruncatedNormal;
      } else {
        throw ParseError("noise.model must be 'uniform' or 'truncated_normal'");
      }
    });
  });
  read(root, "seed", [&](const json& v) {
    if (!v.is_number_unsigned()) throw ParseError("'seed' must be a non-negative integer");
    c.seed = v.get<std::uint64_t>();
  });
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string dump_config(const RunConfig& c) {
  json root;
  root["material"] = {{"lambda", c.material.lambda}, {"mu", c.material.mu},       {"rho_e", c.material.rho_e},
                      {"rho_a", c.material.rho_a},   {"omega", c.material.omega}, {"c", c.material.c}};
  root["wave"] = {{"theta", c.wave.theta}};
  if (c.obstacle) root["obstacle"] = detail::curve_json(*c.obstacle);
  if (c.ball) root["ball"] = {{"center", {c.ball->center.x(), c.ball->center.y()}}, {"radius", c.ball->radius}};
  root["grids"] = {{"n_forward", c.grids.n_forward},
                   {"n_inverse", c.grids.n_inverse},
                   {"n_ball", c.grids.n_ball},
                   {"observations_phased", c.grids.observations_phased},
                   {"observations_phaseless", c.grids.observations_phaseless}};
  root["inversion"] = {{"M", c.inversion.M},
                       {"rho", c.inversion.rho},
                       {"epsilon", c.inversion.epsilon},
                       {"max_iter", c.inversion.max_iter},
                       {"initial_center", {c.inversion.initial_center.x(), c.inversion.initial_center.y()}},
                       {"initial_radius", c.inversion.initial_radius},
                       {"linearization", linearization_name(c.inversion.linearization)}};
  root["noise"] = {{"level", c.noise.level}, {"model", noise_name(c.noise.model)}};
  root["seed"] = c.seed;
  return root.dump(2) + "\n";
}

}  // namespace elastoscat
