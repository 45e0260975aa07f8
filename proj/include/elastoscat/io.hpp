#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "elastoscat/inverse_phaseless.hpp"

namespace elastoscat::io {

/// Rows `angle, re, im`, 16 significant digits, '#' comment lines first.
void write_far_field(std::ostream& out, const FarField& data, const std::vector<std::string>& comments = {});
/// Rows `angle, abs2`.
void write_phaseless(std::ostream& out, const PhaselessData& data, const std::vector<std::string>& comments = {});

/// Contents of a far-field file; the column count decides the kind.
struct DataFile {
  bool phaseless = false;
  std::vector<double> angles;
  CVec values;
  RVec intensities;
  std::vector<std::string> comments;

  FarField far_field() const;
  PhaselessData phaseless_data() const;
};

/// Accepts comma and/or whitespace separators. Throws ParseError on ragged
/// or non-numeric rows.
DataFile read_data(std::istream& in);

/// Center and Fourier coefficients padded to degree M: (c1, c2, a0..aM, b1..bM).
/// Apple and peanut profiles have no finite coefficient form; throws InvalidArgument.
RVec curve_coefficients(const StarlikeCurve& curve, int M);

/// Rows `k, E_k, Err_k, c1, c2, a0..aM, b1..bM`; the Err column is dropped
/// when no record carries it.
void write_history(std::ostream& out, const InversionResult& result, int M,
                   const std::vector<std::string>& comments = {});

/// Rows `t, x, y` (plus `x_true, y_true`) at `samples` equispaced angles.
void write_curve_samples(std::ostream& out, const StarlikeCurve& curve,
                         const std::optional<StarlikeCurve>& truth = {}, int samples = 256);

/// {kind, center, parameters}; circle: {radius}, Fourier: {cos: a0..aM, sin: b1..bM}.
/// Apple and peanut carry an optional additive Fourier correction.
std::string curve_to_json(const StarlikeCurve& curve);
StarlikeCurve curve_from_json(const std::string& text);

/// Write via `fill` to `path`; throws IoError when the file cannot be written.
void write_file(const std::string& path, const std::function<void(std::ostream&)>& fill);
DataFile read_data_file(const std::string& path);

}  // namespace elastoscat::io
