#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "perclab/config.hpp"

namespace perclab {

// CSV table with a header row; numbers are written in the C locale.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  void add(std::vector<std::string> row);
  void write_csv(std::ostream& os) const;
  static Table read_csv(std::istream& is);
  // Column index or -1.
  int column(const std::string& name) const;
};

std::string fmt(double v);

struct Check {
  std::string name;    // what is validated
  std::string detail;  // where (parameters, grid point)
  double value = 0.0;
  double reference = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct Report {
  std::string experiment;
  Table table;
  std::vector<Check> checks;
  bool passed() const;
  void write_summary(std::ostream& os) const;
};

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool parallel = true;
};

Report run_gap(const Config& cfg, const RunOptions& opt);
Report run_simulate(const Config& cfg, const RunOptions& opt);
Report run_kernel_eval(const Config& cfg, const RunOptions& opt);

enum class LimitKind { HardEdge, TruncatedUnitary, HardToSoft, Critical };
LimitKind parse_limit(const std::string& name);
const char* limit_name(LimitKind k);
// Ladder rungs: "16,32,64" for hard-edge and hard-to-soft, "n:ell" pairs for
// truncated-unitary, "n:nu:ell" triples for critical.
Report run_converge(LimitKind kind, const std::string& ladder, const RunOptions& opt);

Report run_rsk_check(int arrays, int rows, int cols, const RunOptions& opt);
Report run_schur_check(const Config& cfg, const RunOptions& opt);

}  // namespace perclab
