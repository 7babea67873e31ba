#include "sqz/export.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sqz/errors.hpp"

namespace sqz {

namespace fs = std::filesystem;

namespace {

std::string format(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IOError("cannot write '" + path + "'");
  return out;
}

void close_checked(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw IOError("failed while writing '" + path + "'");
}

void write_real_matrix(const Eigen::MatrixXd& m, const std::string& path) {
  std::ofstream out = open_for_write(path);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format(m(i, j));
    out << '\n';
  }
  close_checked(out, path);
}

}  // namespace

void write_table_csv(const Table& table, const std::string& path) {
  std::ofstream out = open_for_write(path);
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format(row[i]);
    out << '\n';
  }
  close_checked(out, path);
}

void write_matrix(const MatrixArtifact& m, const std::string& dir) {
  const fs::path base = fs::path(dir) / m.name;
  write_real_matrix(m.values.real(), base.string() + "_re.csv");
  write_real_matrix(m.values.imag(), base.string() + "_im.csv");
  nlohmann::json side{{"rows", m.values.rows()},
                      {"cols", m.values.cols()},
                      {"delta_kappa", m.delta_kappa},
                      {"units", "1/m per axis for kernels, dimensionless for discrete moments"},
                      {"kappa", std::vector<double>(m.axis.data(), m.axis.data() + m.axis.size())}};
  const std::string path = base.string() + ".json";
  std::ofstream out = open_for_write(path);
  out << side.dump(2) << '\n';
  close_checked(out, path);
}

std::vector<std::string> export_report(const Report& report, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IOError("cannot create output directory '" + dir + "'");
  std::vector<std::string> files{"summary.json"};
  {
    const std::string path = (fs::path(dir) / "summary.json").string();
    std::ofstream out = open_for_write(path);
    out << report.summary.dump(2) << '\n';
    close_checked(out, path);
  }
  for (const Table& t : report.tables) {
    write_table_csv(t, (fs::path(dir) / (t.name + ".csv")).string());
    files.push_back(t.name + ".csv");
  }
  for (const MatrixArtifact& m : report.matrices) {
    write_matrix(m, dir);
    for (const char* suffix : {"_re.csv", "_im.csv", ".json"}) files.push_back(m.name + suffix);
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace sqz
