#pragma once

#include <Eigen/Dense>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "quermass/bounds.hpp"
#include "quermass/ellipsoid.hpp"
#include "quermass/errors.hpp"
#include "quermass/grassmann.hpp"
#include "quermass/lattice.hpp"
#include "quermass/mean_curvature.hpp"
#include "quermass/mvee.hpp"

#include <json.hpp>

namespace quermass {

/// Formats a double with 17 significant digits, locale-independent, so
/// serialized reports round-trip exactly and identical runs are
/// byte-identical.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Streaming JSON writer with insertion-ordered keys and fixed number
/// formatting. nlohmann::json is used for parsing inputs; reports are
/// emitted through this writer to keep the byte-level output stable.
class JsonBuf {
public:
  JsonBuf& begin_object() {
    separate();
    out_ += '{';
    return *this;
  }
  JsonBuf& end_object() {
    out_ += '}';
    return *this;
  }
  JsonBuf& begin_array() {
    separate();
    out_ += '[';
    return *this;
  }
  JsonBuf& end_array() {
    out_ += ']';
    return *this;
  }
  JsonBuf& key(std::string_view k) {
    separate();
    quote(k);
    out_ += ':';
    return *this;
  }
  JsonBuf& value(double x) {
    separate();
    out_ += format_double(x);
    return *this;
  }
  JsonBuf& value(long long x) {
    separate();
    out_ += std::to_string(x);
    return *this;
  }
  JsonBuf& value(int x) { return value(static_cast<long long>(x)); }
  JsonBuf& value(std::uint64_t x) {
    separate();
    out_ += std::to_string(x);
    return *this;
  }
  JsonBuf& value(bool b) {
    separate();
    out_ += b ? "true" : "false";
    return *this;
  }
  JsonBuf& value(std::string_view s) {
    separate();
    quote(s);
    return *this;
  }
  JsonBuf& value(const char* s) { return value(std::string_view(s)); }
  JsonBuf& null() {
    separate();
    out_ += "null";
    return *this;
  }
  JsonBuf& value(const Eigen::VectorXd& v) {
    begin_array();
    for (Eigen::Index i = 0; i < v.size(); ++i) value(v[i]);
    return end_array();
  }
  /// Matrix emitted row-major as a flat array.
  JsonBuf& value_row_major(const Eigen::MatrixXd& m) {
    begin_array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) value(m(i, j));
    return end_array();
  }

  template <typename T>
  JsonBuf& kv(std::string_view k, const T& v) {
    key(k);
    return value(v);
  }

  const std::string& str() const { return out_; }

private:
  void separate() {
    if (out_.empty()) return;
    const char c = out_.back();
    if (c != '{' && c != '[' && c != ':') out_ += ',';
  }
  void quote(std::string_view s) {
    out_ += '"';
    for (const char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        default: out_ += c;
      }
    }
    out_ += '"';
  }

  std::string out_;
};

inline void write_json(JsonBuf& j, const Ellipsoidd& e) {
  j.begin_object();
  j.kv("dim", e.dim());
  j.key("center").value(e.center());
  j.key("frame").value_row_major(e.frame());
  j.key("semi_axes").value(e.semi_axes());
  j.end_object();
}

inline void write_json(JsonBuf& j, const Boxd& b) {
  j.begin_object();
  j.kv("dim", b.dim());
  j.key("center").value(b.center);
  j.key("side_lengths").value(b.side_lengths);
  j.end_object();
}

inline void write_json(JsonBuf& j, const MeanCurvaturesd& m) {
  j.begin_object();
  j.kv("dim", m.dim);
  j.key("values").value(m.values);
  j.kv("method", to_string(m.method));
  j.key("error_estimate");
  if (m.error_estimate) j.value(*m.error_estimate);
  else j.null();
  j.end_object();
}

inline void write_json(JsonBuf& j, const BoundIntervald& b) {
  j.begin_object();
  j.key("quantity").begin_object();
  j.kv("type", to_string(b.quantity.kind));
  if (b.quantity.kind == BoundQuantityKind::MeanCurvature) j.kv("index", b.quantity.index);
  else j.kv("rho", b.quantity.rho);
  j.end_object();
  j.kv("lower", b.lower);
  j.kv("upper", b.upper);
  j.key("constants_used").begin_object();
  j.kv("c", b.constants_used.c);
  j.kv("C", b.constants_used.C);
  j.kv("ratio_bound", b.constants_used.ratio_bound);
  if (b.constants_used.gamma_factor) j.kv("gamma_factor", *b.constants_used.gamma_factor);
  j.end_object();
  j.end_object();
}

inline void write_json(JsonBuf& j, const TubePolynomial<double>& f) {
  j.begin_object();
  j.kv("dim", f.dim);
  j.key("coefficients").value(f.coefficients);
  j.end_object();
}

inline void write_json(JsonBuf& j, const HitEstimate& h) {
  j.begin_object();
  j.kv("hits", h.hits);
  j.kv("trials", h.trials);
  j.kv("reference_radius", h.reference_radius);
  j.kv("estimate", h.estimate);
  j.kv("std_error", h.std_error);
  j.end_object();
}

inline void write_json(JsonBuf& j, const HitRatio& r) {
  j.begin_object();
  j.kv("ratio", r.ratio);
  j.kv("std_error", r.std_error);
  j.key("first");
  write_json(j, r.first);
  j.key("second");
  write_json(j, r.second);
  j.end_object();
}

inline void write_json(JsonBuf& j, const LatticeReport& r) {
  j.begin_object();
  j.kv("count", r.count);
  j.kv("volume", r.volume);
  j.kv("discrepancy", r.discrepancy);
  j.kv("tube_value", r.tube_value);
  j.kv("tube_integral", r.tube_integral);
  j.kv("ratio", r.ratio);
  j.kv("tube_value_half", r.tube_value_half);
  j.end_object();
}

inline void write_json(JsonBuf& j, const MveeResult& r) {
  j.begin_object();
  j.key("ellipsoid");
  write_json(j, r.ellipsoid);
  j.key("weights").value(r.weights);
  j.kv("iterations", r.iterations);
  j.kv("gap", r.gap);
  j.kv("centrally_symmetric", r.centrally_symmetric);
  j.end_object();
}

inline void write_json(JsonBuf& j, const JohnSandwich& s) {
  j.begin_object();
  j.kv("dim", s.dim);
  j.kv("shrink", s.shrink);
  j.key("enclosing");
  write_json(j, s.enclosing);
  j.key("m_intervals").begin_array();
  for (const auto& b : s.m_intervals) write_json(j, b);
  j.end_array();
  j.key("s_intervals").begin_array();
  for (const auto& si : s.s_intervals) {
    j.begin_object();
    j.kv("order", si.order);
    j.kv("lower", si.lower);
    j.kv("upper", si.upper);
    j.end_object();
  }
  j.end_array();
  j.end_object();
}

/// Reads a point set from a JSON array-of-arrays or a CSV file (one point
/// per row). Returns the points as columns.
inline Eigen::MatrixXd read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open points file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw validation_error("points file is empty: " + path);

  std::vector<std::vector<double>> rows;
  if (text[first] == '[') {
    nlohmann::json doc = nlohmann::json::parse(text);
    if (!doc.is_array()) throw validation_error("points JSON must be an array of arrays");
    for (const auto& row : doc) {
      if (!row.is_array()) throw validation_error("points JSON must be an array of arrays");
      rows.emplace_back();
      for (const auto& v : row) rows.back().push_back(v.get<double>());
    }
  } else {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
      rows.emplace_back();
      std::istringstream cells(line);
      std::string cell;
      while (std::getline(cells, cell, ',')) {
        rows.back().push_back(std::stod(cell));
      }
    }
  }
  if (rows.empty()) throw validation_error("points file holds no points: " + path);
  const std::size_t dim = rows.front().size();
  if (dim == 0) throw validation_error("points file holds empty rows: " + path);
  Eigen::MatrixXd pts(dim, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw validation_error("points file rows have inconsistent dimensions");
    }
    for (std::size_t k = 0; k < dim; ++k) pts(k, i) = rows[i][k];
  }
  return pts;
}

}  // namespace quermass
