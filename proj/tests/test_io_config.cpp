#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include "elastoscat/config.hpp"
#include "elastoscat/io.hpp"

using namespace elastoscat;

namespace {

std::string config_dir() { return ELASTOSCAT_CONFIG_DIR; }

}  // namespace

TEST_SUITE("io") {

TEST_CASE("far-field file round trip") {
  FarField f{observation_angles(8), CVec(8), far_field_constant(1.0)};
  for (int i = 0; i < 8; ++i) f.values(i) = cplx(1.0 / (i + 3), -std::sqrt(i + 0.5));
  std::stringstream ss;
  io::write_far_field(ss, f, {"theta = 0.3", "seed = 1"});
  const io::DataFile d = io::read_data(ss);
  CHECK(!d.phaseless);
  REQUIRE(d.comments.size() == 2);
  CHECK(d.comments[0] == "theta = 0.3");
  // rewriting reproduces the file
  std::stringstream again;
  io::write_far_field(again, d.far_field(), d.comments);
  std::stringstream first;
  io::write_far_field(first, f, {"theta = 0.3", "seed = 1"});
  CHECK(again.str() == first.str());
  REQUIRE(d.values.size() == 8);
  CHECK((d.values - f.values).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(std::abs(d.angles[5] - f.angles[5]) < 1e-15);
  CHECK_THROWS_AS(d.phaseless_data(), InvalidArgument);
}

TEST_CASE("phaseless file round trip and separators") {
  PhaselessData p{observation_angles(4), RVec(4)};
  p.values << 0.5, 1.25, 2.0, 1e-7;
  std::stringstream ss;
  io::write_phaseless(ss, p);
  const io::DataFile d = io::read_data(ss);
  CHECK(d.phaseless);
  CHECK((d.phaseless_data().values - p.values).norm() < 1e-20);

  std::istringstream ws("# c\n0 1 2\n\n1.5\t3, 4\n");
  const io::DataFile w = io::read_data(ws);
  CHECK(w.values.size() == 2);
  CHECK(w.values(1) == cplx(3, 4));
}

TEST_CASE("malformed data files") {
  std::istringstream ragged("0, 1, 2\n1, 2\n");
  CHECK_THROWS_AS(io::read_data(ragged), ParseError);
  std::istringstream text("0, one, 2\n");
  CHECK_THROWS_AS(io::read_data(text), ParseError);
  std::istringstream wide("0 1 2 3\n");
  CHECK_THROWS_AS(io::read_data(wide), ParseError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(io::read_data(empty), ParseError);
  CHECK_THROWS_AS(io::read_data_file("/nonexistent/dir/x.dat"), IoError);
  CHECK_THROWS_AS(io::write_file("/nonexistent/dir/x.dat", [](std::ostream&) {}), IoError);
}

TEST_CASE("curve coefficients and JSON") {
  const StarlikeCurve f = make_fourier({0.1, -0.2}, {0.5, 0.05}, {0.0, 0.02});
  const RVec c = io::curve_coefficients(f, 3);
  REQUIRE(c.size() == 9);
  CHECK(c(0) == 0.1);
  CHECK(c(2) == 0.5);
  CHECK(c(3) == 0.05);
  CHECK(c(4) == 0.0);
  CHECK(c(7) == 0.02);
  CHECK(io::curve_coefficients(make_circle({0, 0}, 0.4), 2)(2) == 0.4);
  CHECK_THROWS_AS(io::curve_coefficients(make_apple(), 3), InvalidArgument);

  for (const StarlikeCurve& curve : {f, make_circle({1, 2}, 0.3), make_apple(), make_peanut().translated({1, 0})}) {
    const StarlikeCurve back = io::curve_from_json(io::curve_to_json(curve));
    CHECK(relative_l2_distance(back, curve) < 1e-15);
    CHECK(io::curve_to_json(back) == io::curve_to_json(curve));
  }
  CHECK_THROWS_AS(io::curve_from_json(R"({"kind": "banana"})"), ParseError);
  CHECK_THROWS_AS(io::curve_from_json(R"({"kind": "circle", "parameters": {"radius": -1}})"), GeometryError);
}

TEST_CASE("history table with and without the error column") {
  InversionResult r;
  r.history.push_back({0, 0.5, 0.3, make_circle({0, 0}, 0.4)});
  r.history.push_back({1, 0.2, 0.1, make_fourier({0.1, 0}, {0.45, 0.01}, {0.02})});
  std::stringstream a;
  io::write_history(a, r, 2);
  std::string header;
  std::getline(a, header);
  CHECK(header == "# k, E_k, Err_k, c1, c2, a0, a1, a2, b1, b2");
  std::string row;
  std::getline(a, row);
  CHECK(row.rfind("0, 0.5, 0.3, 0, 0, 0.4, 0, 0, 0, 0", 0) == 0);

  for (auto& rec : r.history) rec.err.reset();
  std::stringstream b;
  io::write_history(b, r, 2);
  std::getline(b, header);
  CHECK(header == "# k, E_k, c1, c2, a0, a1, a2, b1, b2");
}

TEST_CASE("curve samples") {
  std::stringstream ss;
  io::write_curve_samples(ss, make_circle({0, 0}, 1.0), make_circle({0, 0}, 2.0), 4);
  std::string line;
  int rows = 0;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    ++rows;
    if (rows == 1) CHECK(line == "0, 1, 0, 2, 0");
  }
  CHECK(rows == 4);
}

}  // TEST_SUITE

TEST_SUITE("config") {

TEST_CASE("angle strings") {
  CHECK(parse_angle("pi/8") == doctest::Approx(kPi / 8));
  CHECK(parse_angle("13pi/8") == doctest::Approx(13 * kPi / 8));
  CHECK(parse_angle("-2*pi/3") == doctest::Approx(-2 * kPi / 3));
  CHECK(parse_angle("pi") == doctest::Approx(kPi));
  CHECK(parse_angle("0.25") == 0.25);
  CHECK(parse_angle(" 0.7pi ") == doctest::Approx(0.7 * kPi));
  CHECK_THROWS_AS(parse_angle("tau/2"), ParseError);
  CHECK_THROWS_AS(parse_angle("pi/0"), ParseError);
  CHECK_THROWS_AS(parse_angle(""), ParseError);
}

TEST_CASE("defaults and shipped scenario files") {
  const RunConfig d = parse_config("{}");
  CHECK(d.material.lambda == 3.88);
  CHECK(d.material.omega == doctest::Approx(0.7 * kPi));
  CHECK(d.grids.n_forward == 100);
  CHECK(d.grids.n_inverse == 64);
  CHECK(d.inversion.M == 6);
  CHECK(d.inversion.rho == 0.9);
  CHECK(d.noise.level == 0.01);
  CHECK(!d.obstacle);
  CHECK(d.inverse_config().n == 64);

  for (const char* name : {"apple_phased", "peanut_phased", "apple_phaseless", "peanut_phaseless"}) {
    CAPTURE(name);
    const RunConfig c = load_config(config_dir() + "/" + name + ".json");
    CHECK(c.obstacle);
    CHECK(c.ball.has_value() == (std::string(name).find("phaseless") != std::string::npos));
    CHECK(parse_config(dump_config(c)).inversion.epsilon == c.inversion.epsilon);
  }
}

TEST_CASE("dump is canonical and idempotent") {
  const RunConfig c = parse_config(R"({
    "wave": {"theta": "13pi/8"},
    "obstacle": {"kind": "fourier", "center": [0.1, 0], "parameters": {"cos": [0.5, 0.05], "sin": [0.01]}},
    "ball": {"center": [6.2, 0], "radius": 0.74},
    "grids": {"n_ball": 48},
    "inversion": {"M": 4, "linearization": "incident_phase", "initial_center": [-0.7, 0.2]},
    "noise": {"level": 0.05, "model": "truncated_normal"},
    "seed": 42
  })");
  const std::string once = dump_config(c);
  const RunConfig back = parse_config(once);
  CHECK(dump_config(back) == once);
  CHECK(back.wave.theta == doctest::Approx(13 * kPi / 8));
  CHECK(back.inversion.linearization == Linearization::IncidentPhase);
  CHECK(back.noise.model == NoiseModel::TruncatedNormal);
  CHECK(back.seed == 42);
  CHECK(back.inverse_config().n_ball == 48);
  CHECK(relative_l2_distance(*back.obstacle, *c.obstacle) == 0.0);
}

TEST_CASE("strict parsing") {
  CHECK_THROWS_AS(parse_config("{"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"sed": 1})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"inversion": {"eps": 0.1}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"inversion": {"M": "six"}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"inversion": {"M": 2.5}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"inversion": {"linearization": "exact"}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"noise": {"model": "gaussian"}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"seed": -1})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"inversion": {"rho": 2}})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config(R"({"material": {"mu": 0}})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config(R"({"noise": {"level": -0.1}})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config(R"({"ball": {"radius": 0}})"), Error);
  CHECK_THROWS_AS(load_config("/nonexistent.json"), IoError);
}

}  // TEST_SUITE
