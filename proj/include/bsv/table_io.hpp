#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsv/interferometer.hpp"

namespace bsv {

// Deterministic float formatting for all data files ("%.12g", '.' decimal).
std::string format_number(double v);

// CSV dialect: comma separator, header row, LF endings, no timestamps.
void write_width_curve_csv(std::ostream& out, const WidthCurve& curve);
nlohmann::json width_curve_json(const WidthCurve& curve);

// Columnar Schmidt table: k,lambda,weight
void write_schmidt_table_csv(std::ostream& out, const std::vector<double>& eigenvalues,
                             const std::vector<double>& weights);

// Generic columnar dump: x plus one named column per profile.
void write_columns_csv(std::ostream& out, const std::string& x_name,
                       const std::vector<double>& x,
                       const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& columns);

}  // namespace bsv
