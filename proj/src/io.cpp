#include "elastoscat/io.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "json_curve.hpp"

namespace elastoscat {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16g", v);
  return buf;
}

void comment_block(std::ostream& out, const std::vector<std::string>& comments) {
  for (const std::string& c : comments) out << "# " << c << '\n';
}

std::vector<double> split_numbers(const std::string& line, int lineno) {
  std::string cleaned = line;
  for (char& ch : cleaned) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(cleaned);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": not a number: '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

namespace detail {

Vec2 vec2_from(const nlohmann::ordered_json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(std::string(what) + " must be a 2-element numeric array");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::ordered_json curve_json(const StarlikeCurve& curve) {
  nlohmann::ordered_json j;
  const RadialProfile& r = curve.radial();
  const char* kind = "fourier";
  switch (r.kind()) {
    case RadialProfile::Kind::Apple: kind = "apple"; break;
    case RadialProfile::Kind::Peanut: kind = "peanut"; break;
    case RadialProfile::Kind::Circle: kind = "circle"; break;
    case RadialProfile::Kind::Fourier: kind = "fourier"; break;
  }
  j["kind"] = kind;
  j["center"] = {curve.center().x(), curve.center().y()};
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  if (r.kind() == RadialProfile::Kind::Circle) {
    p["radius"] = r.cos_coeffs().at(0);
  } else if (r.kind() == RadialProfile::Kind::Fourier || !r.cos_coeffs().empty() || !r.sin_coeffs().empty()) {
    p["cos"] = r.cos_coeffs();
    p["sin"] = r.sin_coeffs();
  }
  j["parameters"] = p;
  return j;
}

StarlikeCurve curve_from(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ParseError("curve record must be an object");
  const std::string kind = j.value("kind", std::string());
  const Vec2 center = j.contains("center") ? vec2_from(j["center"], "curve center") : Vec2(0.0, 0.0);
  const nlohmann::ordered_json p = j.value("parameters", nlohmann::ordered_json::object());
  auto coeffs = [&](const char* key) {
    std::vector<double> v;
    if (p.contains(key)) {
      if (!p[key].is_array()) throw ParseError(std::string("curve parameter '") + key + "' must be an array");
      for (const auto& x : p[key]) {
        if (!x.is_number()) throw ParseError(std::string("curve parameter '") + key + "' must be numeric");
        v.push_back(x.get<double>());
      }
    }
    return v;
  };
  if (kind == "circle") {
    if (!p.contains("radius") || !p["radius"].is_number()) throw ParseError("circle needs a numeric radius");
    return make_circle(center, p["radius"].get<double>());
  }
  if (kind == "fourier") return make_fourier(center, coeffs("cos"), coeffs("sin"));
  if (kind == "apple" || kind == "peanut") {
    RadialProfile r = kind == "apple" ? RadialProfile::apple() : RadialProfile::peanut();
    const auto c = coeffs("cos");
    const auto s = coeffs("sin");
    if (!c.empty() || !s.empty()) r = r.plus(c, s);
    return StarlikeCurve(center, r);
  }
  throw ParseError("unknown curve kind '" + kind + "'");
}

}  // namespace detail

namespace io {

void write_far_field(std::ostream& out, const FarField& data, const std::vector<std::string>& comments) {
  comment_block(out, comments);
  out << "# angle, re, im\n";
  for (std::size_t i = 0; i < data.angles.size(); ++i) {
    const cplx v = data.values(static_cast<Eigen::Index>(i));
    out << num(data.angles[i]) << ", " << num(v.real()) << ", " << num(v.imag()) << '\n';
  }
}

void write_phaseless(std::ostream& out, const PhaselessData& data, const std::vector<std::string>& comments) {
  comment_block(out, comments);
  out << "# angle, abs2\n";
  for (std::size_t i = 0; i < data.angles.size(); ++i) {
    out << num(data.angles[i]) << ", " << num(data.values(static_cast<Eigen::Index>(i))) << '\n';
  }
}

FarField DataFile::far_field() const {
  if (phaseless) throw InvalidArgument("data file holds phaseless samples, phased data expected");
  return {angles, values, cplx(0.0)};
}

PhaselessData DataFile::phaseless_data() const {
  if (!phaseless) throw InvalidArgument("data file holds phased samples, phaseless data expected");
  return {angles, intensities};
}

DataFile read_data(std::istream& in) {
  DataFile f;
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      const auto text = line.find_first_not_of(" \t", first + 1);
      std::string c = text == std::string::npos ? "" : line.substr(text);
      while (!c.empty() && (c.back() == '\r' || c.back() == ' ')) c.pop_back();
      // column headers are regenerated on write
      if (c != "angle, re, im" && c != "angle, abs2") f.comments.push_back(std::move(c));
      continue;
    }
    auto row = split_numbers(line, lineno);
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(rows.front().size()) +
                       " columns");
    }
    if (row.size() != 2 && row.size() != 3) {
      throw ParseError("line " + std::to_string(lineno) + ": data rows need 2 or 3 columns");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("data file has no rows");
  const auto m = static_cast<Eigen::Index>(rows.size());
  f.phaseless = rows.front().size() == 2;
  if (f.phaseless) {
    f.intensities.resize(m);
  } else {
    f.values.resize(m);
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    f.angles.push_back(r[0]);
    if (f.phaseless) {
      f.intensities(i) = r[1];
    } else {
      f.values(i) = cplx(r[1], r[2]);
    }
  }
  return f;
}

RVec curve_coefficients(const StarlikeCurve& curve, int M) {
  const RadialProfile& r = curve.radial();
  if (r.kind() == RadialProfile::Kind::Apple || r.kind() == RadialProfile::Kind::Peanut) {
    throw InvalidArgument("apple and peanut profiles have no finite Fourier form");
  }
  if (r.degree() > M) throw InvalidArgument("curve degree exceeds the requested truncation");
  RVec out = RVec::Zero(2 * M + 3);
  out(0) = curve.center().x();
  out(1) = curve.center().y();
  for (std::size_t m = 0; m < r.cos_coeffs().size(); ++m) out(2 + static_cast<Eigen::Index>(m)) = r.cos_coeffs()[m];
  for (std::size_t m = 0; m < r.sin_coeffs().size(); ++m) {
    out(3 + M + static_cast<Eigen::Index>(m)) = r.sin_coeffs()[m];
  }
  return out;
}

void write_history(std::ostream& out, const InversionResult& result, int M, const std::vector<std::string>& comments) {
  bool with_err = false;
  for (const auto& rec : result.history) with_err = with_err || rec.err.has_value();
  comment_block(out, comments);
  out << "# k, E_k";
  if (with_err) out << ", Err_k";
  out << ", c1, c2";
  for (int m = 0; m <= M; ++m) out << ", a" << m;
  for (int m = 1; m <= M; ++m) out << ", b" << m;
  out << '\n';
  for (const auto& rec : result.history) {
    out << rec.k << ", " << num(rec.E);
    if (with_err) out << ", " << (rec.err ? num(*rec.err) : std::string("nan"));
    const RVec c = curve_coefficients(rec.curve, M);
    for (Eigen::Index i = 0; i < c.size(); ++i) out << ", " << num(c(i));
    out << '\n';
  }
}

void write_curve_samples(std::ostream& out, const StarlikeCurve& curve, const std::optional<StarlikeCurve>& truth,
                         int samples) {
  if (samples < 1) throw InvalidArgument("sample count must be positive");
  out << (truth ? "# t, x, y, x_true, y_true\n" : "# t, x, y\n");
  for (int j = 0; j < samples; ++j) {
    const double t = 2.0 * kPi * j / samples;
    const Vec2 p = curve.point(t);
    out << num(t) << ", " << num(p.x()) << ", " << num(p.y());
    if (truth) {
      const Vec2 q = truth->point(t);
      out << ", " << num(q.x()) << ", " << num(q.y());
    }
    out << '\n';
  }
}

std::string curve_to_json(const StarlikeCurve& curve) { return detail::curve_json(curve).dump(); }

StarlikeCurve curve_from_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("curve record: ") + e.what());
  }
  return detail::curve_from(j);
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& fill) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  fill(out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

DataFile read_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_data(in);
}

}  // namespace io

}  // namespace elastoscat
