#include "splitrange/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace splitrange {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << std::setprecision(17);
  return out;
}

}  // namespace

void write_cloud_csv(const std::string& path, const PointCloud& cloud) {
  std::ofstream out = open_out(path);
  write_cloud_csv(out, cloud);
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud) {
  const auto saved_precision = out.precision(17);
  const int dim = cloud.dim();
  for (int a = 0; a < dim; ++a) out << (a ? "," : "") << "x" << a;
  for (std::size_t k = 0; k < cloud.witnesses.size(); ++k)
    for (int a = 0; a < cloud.witnesses[k].rows(); ++a) out << ",w" << k << "_" << a;
  out << "\n";
  for (int j = 0; j < cloud.size(); ++j) {
    for (int a = 0; a < dim; ++a) out << (a ? "," : "") << cloud.pts(a, j);
    for (const Matrix& w : cloud.witnesses)
      for (int a = 0; a < w.rows(); ++a) out << "," << w(a, j);
    out << "\n";
  }
  out.precision(saved_precision);
}

PointCloud read_cloud_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("'" + path + "': empty CSV");

  // Count leading x-columns in the header; witness columns are ignored.
  int dim = 0;
  {
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) {
      if (cell.size() >= 2 && cell[0] == 'x') ++dim;
      else break;
    }
  }
  if (dim == 0) throw std::runtime_error("'" + path + "': no x columns in header");

  std::vector<Vector> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    Vector p(dim);
    for (int a = 0; a < dim; ++a) {
      if (!std::getline(ss, cell, ','))
        throw std::runtime_error("'" + path + "': short row " + std::to_string(rows.size() + 2));
      p(a) = std::stod(cell);
    }
    rows.push_back(p);
  }
  if (rows.empty()) throw std::runtime_error("'" + path + "': no data rows");
  PointCloud cloud;
  cloud.pts = Matrix(dim, static_cast<int>(rows.size()));
  for (int j = 0; j < cloud.size(); ++j) cloud.pts.col(j) = rows[static_cast<std::size_t>(j)];
  return cloud;
}

void write_trace_csv(const std::string& path, const DRTrace& trace) {
  std::ofstream out = open_out(path);
  const int dim = trace.governing.empty() ? 0 : static_cast<int>(trace.governing.front().size());
  out << "iter";
  for (int a = 0; a < dim; ++a) out << ",x" << a;
  for (int a = 0; a < dim; ++a) out << ",shadow" << a;
  out << ",displacement_norm\n";
  for (std::size_t k = 0; k < trace.governing.size(); ++k) {
    const std::size_t iter = k * static_cast<std::size_t>(trace.stride);
    out << iter;
    for (int a = 0; a < dim; ++a) out << "," << trace.governing[k](a);
    for (int a = 0; a < dim; ++a) out << "," << trace.shadow[k](a);
    out << "," << (iter < trace.displacement_norms.size() ? trace.displacement_norms[iter]
                                                          : trace.displacement_norms.back());
    out << "\n";
  }
}

void write_support_gap_csv(const std::string& path, const Matrix& directions,
                           const Vector& values_c, const Vector& values_d) {
  if (directions.cols() != values_c.size() || directions.cols() != values_d.size())
    throw std::invalid_argument("write_support_gap_csv: mismatched direction/value counts");
  std::ofstream out = open_out(path);
  for (int a = 0; a < directions.rows(); ++a) out << "d" << a << ",";
  out << "value_C,value_D,gap\n";
  for (int j = 0; j < directions.cols(); ++j) {
    for (int a = 0; a < directions.rows(); ++a) out << directions(a, j) << ",";
    out << values_c(j) << "," << values_d(j) << "," << values_c(j) - values_d(j) << "\n";
  }
}

nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json j = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(v(i));
  return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

}  // namespace splitrange
