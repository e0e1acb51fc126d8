#include "bsv/table_io.hpp"

#include <cstdio>

#include "bsv/errors.hpp"

namespace bsv {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_width_curve_csv(std::ostream& out, const WidthCurve& curve) {
  out << "abscissa,width,unit_abscissa,unit_width\n";
  for (std::size_t i = 0; i < curve.abscissa.size(); ++i)
    out << format_number(curve.abscissa[i]) << ',' << format_number(curve.width[i]) << ','
        << curve.unit_abscissa << ',' << curve.unit_width << '\n';
}

nlohmann::json width_curve_json(const WidthCurve& curve) {
  return nlohmann::json{{"abscissa", curve.abscissa},
                        {"width", curve.width},
                        {"unit_abscissa", curve.unit_abscissa},
                        {"unit_width", curve.unit_width}};
}

void write_schmidt_table_csv(std::ostream& out, const std::vector<double>& eigenvalues,
                             const std::vector<double>& weights) {
  if (eigenvalues.size() != weights.size())
    throw InputError("schmidt table: eigenvalue and weight lists differ in length");
  out << "k,lambda,weight\n";
  for (std::size_t k = 0; k < eigenvalues.size(); ++k)
    out << k << ',' << format_number(eigenvalues[k]) << ',' << format_number(weights[k]) << '\n';
}

void write_columns_csv(std::ostream& out, const std::string& x_name,
                       const std::vector<double>& x,
                       const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& columns) {
  if (names.size() != columns.size())
    throw InputError("column dump: name/column count mismatch");
  for (const auto& c : columns)
    if (c.size() != x.size()) throw InputError("column dump: column length mismatch");
  out << x_name;
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << format_number(x[i]);
    for (const auto& c : columns) out << ',' << format_number(c[i]);
    out << '\n';
  }
}

}  // namespace bsv
