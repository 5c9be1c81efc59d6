#include "infogeo/serialize.hpp"

#include <cstdio>
#include <fstream>

namespace infogeo {

Json distribution_to_json(const Distribution& p) {
  return Json(p.weights());
}

Distribution distribution_from_json(const Json& j) {
  return make_distribution(j.get<Vec>());
}

Json tangent_to_json(const TangentVector& v) {
  Json j;
  j["base"] = v.base().weights();
  j["components"] = v.components();
  return j;
}

TangentVector tangent_from_json(const Json& j) {
  return TangentVector(make_distribution(j.at("base").get<Vec>()),
                       j.at("components").get<Vec>());
}

Json complex_vector_to_json(const CVec& z) {
  std::vector<double> flat;
  flat.reserve(2 * z.size());
  for (const Complex& c : z) {
    flat.push_back(c.real());
    flat.push_back(c.imag());
  }
  return Json(flat);
}

CVec complex_vector_from_json(const Json& j) {
  auto flat = j.get<std::vector<double>>();
  if (flat.size() % 2 != 0) {
    throw InvalidArgument("complex vector JSON must have even length");
  }
  CVec z(flat.size() / 2);
  for (size_t i = 0; i < z.size(); ++i) {
    z[i] = Complex(flat[2 * i], flat[2 * i + 1]);
  }
  return z;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  if (!out.good()) throw IoError("failed while writing " + path);
}

}  // namespace infogeo
