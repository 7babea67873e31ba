#pragma once

#include <string>

#include "sqz/scenarios.hpp"

namespace sqz {

// Writes a report into `dir` (created if missing):
//   summary.json                  resolved config, version, results, warnings
//   <table>.csv                   header row, then %.17g values
//   <matrix>_re.csv, _im.csv      n x n real and imaginary parts
//   <matrix>.json                 shape, delta_kappa and the kappa axis
// Returns the written file names, sorted.
std::vector<std::string> export_report(const Report& report, const std::string& dir);

void write_table_csv(const Table& table, const std::string& path);
void write_matrix(const MatrixArtifact& matrix, const std::string& dir);

}  // namespace sqz
