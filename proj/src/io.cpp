#include "hyperplane/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hyperplane {

std::string decimal_string(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  if (ec) throw std::runtime_error("cannot create directory " + p.parent_path().string() + ": " + ec.message());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

std::string transform_table_csv(const std::vector<TransformRow>& rows) {
  std::ostringstream os;
  os << "r,lambda,mu,transform_value\n";
  for (const TransformRow& row : rows) {
    os << decimal_string(row.r) << ',' << decimal_string(row.lambda) << ',' << decimal_string(row.mu) << ','
       << decimal_string(row.value) << '\n';
  }
  return os.str();
}

}  // namespace hyperplane
