#include "catalytic/state_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace catalytic {

namespace {

using json = nlohmann::json;

double as_number(const json& j, const char* what) {
  if (!j.is_number()) throw std::invalid_argument(std::string("state JSON: ") + what + " must be a number");
  return j.get<double>();
}

}  // namespace

std::string format_number(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

DensityMatrix parse_state_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("state JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("shape") || !doc["shape"].is_array())
    throw std::invalid_argument("state JSON: missing \"shape\" array");

  Shape shape;
  for (const auto& d : doc["shape"]) {
    if (!d.is_number_integer() || d.get<long long>() <= 0)
      throw std::invalid_argument("state JSON: shape entries must be positive integers");
    shape.push_back(d.get<std::size_t>());
  }
  if (shape.empty()) throw std::invalid_argument("state JSON: empty shape");
  const std::size_t dim = shape_dimension(shape);

  const bool has_entries = doc.contains("entries");
  const bool has_diag = doc.contains("diag");
  if (has_entries == has_diag) throw std::invalid_argument("state JSON: need exactly one of \"entries\" or \"diag\"");

  if (has_diag) {
    const auto& diag = doc["diag"];
    if (!diag.is_array() || diag.size() != dim)
      throw std::invalid_argument("state JSON: \"diag\" must have " + std::to_string(dim) + " numbers");
    std::vector<double> p;
    for (const auto& x : diag) p.push_back(as_number(x, "diag entry"));
    return DensityMatrix::from_diagonal(std::move(shape), p);
  }

  const auto& entries = doc["entries"];
  if (!entries.is_array() || entries.size() != dim * dim)
    throw std::invalid_argument("state JSON: \"entries\" must have " + std::to_string(dim * dim) + " [re,im] pairs");
  CMatrix m(dim);
  std::size_t i = 0;
  for (const auto& z : entries) {
    if (!z.is_array() || z.size() != 2) throw std::invalid_argument("state JSON: entries must be [re,im] pairs");
    m.data()[i++] = complex(as_number(z[0], "real part"), as_number(z[1], "imaginary part"));
  }
  return DensityMatrix(std::move(shape), std::move(m));
}

DensityMatrix read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_state_json(ss.str());
}

std::string format_state_json(const DensityMatrix& m, StateFormat format) {
  const CMatrix& e = m.entries();
  if (format == StateFormat::automatic) {
    bool real_diag = e.is_diagonal();
    for (std::size_t i = 0; real_diag && i < e.side(); ++i) real_diag = e(i, i).imag() == 0.0;
    format = real_diag ? StateFormat::diagonal : StateFormat::entries;
  }
  if (format == StateFormat::diagonal && !e.is_diagonal())
    throw std::invalid_argument("diag format requested for a non-diagonal state");

  std::string out = "{\"shape\":[";
  for (std::size_t i = 0; i < m.shape().size(); ++i) {
    if (i) out += ",";
    out += std::to_string(m.shape()[i]);
  }
  out += "],";
  if (format == StateFormat::diagonal) {
    out += "\"diag\":[";
    for (std::size_t i = 0; i < e.side(); ++i) {
      if (i) out += ",";
      out += format_number(e(i, i).real(), 17);
    }
  } else {
    out += "\"entries\":[";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out += ",";
      const complex z = e.data()[i];
      out += "[" + format_number(z.real(), 17) + "," + format_number(z.imag(), 17) + "]";
    }
  }
  out += "]}\n";
  return out;
}

void write_state_file(const std::string& path, const DensityMatrix& m, StateFormat format) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write state file " + path);
  out << format_state_json(m, format);
}

}  // namespace catalytic
