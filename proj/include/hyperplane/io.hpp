#pragma once

#include <string>
#include <vector>

namespace hyperplane {

// Shortest round-trip decimal form of a double, for JSON fields.
std::string decimal_string(double x);

// Writes the file, creating parent directories. Throws std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& content);

struct TransformRow {
  double r = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double value = 0.0;
};
// Columns r,lambda,mu,transform_value.
std::string transform_table_csv(const std::vector<TransformRow>& rows);

}  // namespace hyperplane
