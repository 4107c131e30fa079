#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace perclab {

// Layered environment: n rows, blocks k = 1..K of widths ell_k with block
// parameters nu_k. Indices into nu()/ell()/width() are 1-based.
class LayeredSpec {
 public:
  LayeredSpec(int n, std::vector<int> nu, std::vector<int> ell);

  int rows() const { return n_; }
  int blocks() const { return static_cast<int>(nu_.size()); }
  int nu(int k) const;   // nu(0) = 1
  int ell(int k) const;  // ell(0) = -n
  // L_k = ell_1 + ... + ell_k
  long long width(int k) const;
  const std::vector<int>& nu_vec() const { return nu_; }
  const std::vector<int>& ell_vec() const { return ell_; }
  // Exponential rate of cell (i, j) (1-based, global column j).
  double rate(int i, long long j) const;
  // Block index of global column j.
  int block_of(long long j) const;
  // First k blocks only.
  LayeredSpec prefix(int k) const;

 private:
  int n_;
  std::vector<int> nu_;
  std::vector<int> ell_;
  std::vector<long long> width_;
};

enum class ClockMode { Exponential, Geometric };

class ClockArray {
 public:
  ClockArray(int n, std::vector<int> block_lengths, std::vector<double> values,
             ClockMode mode = ClockMode::Exponential);

  int rows() const { return n_; }
  long long cols() const { return cols_; }
  const std::vector<int>& block_lengths() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  long long block_end(int k) const;  // L_k
  ClockMode mode() const { return mode_; }
  // 1-based accessors
  double at(int i, long long j) const { return values_[(i - 1) * cols_ + (j - 1)]; }
  long long count(int i, long long j) const;
  const std::vector<double>& values() const { return values_; }
  // First k blocks.
  ClockArray prefix(int k) const;

  void write_csv(std::ostream& os) const;
  static ClockArray read_csv(std::istream& is);

 private:
  int n_;
  std::vector<int> blocks_;
  long long cols_;
  std::vector<double> values_;
  ClockMode mode_;
};

bool operator==(const ClockArray& a, const ClockArray& b);

struct McEstimate {
  double estimate = 0.0;
  std::uint64_t samples = 0;
  double dkw_band = 0.0;
  std::uint64_t seed = 0;

  std::string to_json() const;
  static McEstimate from_json(const std::string& text);
};

double dkw_band(std::uint64_t samples);

ClockArray sample_exponential_blocks(const LayeredSpec& spec, int k, std::uint64_t seed);

using GeometricY = std::vector<std::vector<double>>;
ClockArray sample_geometric_blocks(const LayeredSpec& spec, int k, const std::vector<double>& x,
                                   const GeometricY& y, std::uint64_t seed);

std::pair<std::vector<double>, GeometricY> geometric_parameters_for_exponential_limit(
    const LayeredSpec& spec, int N);

double last_passage_time(const ClockArray& a);
std::vector<double> last_passage_process(const ClockArray& a, const std::vector<int>& ks);
double brute_force_lpp(const ClockArray& a);

enum class Execution { Serial, Parallel };

McEstimate monte_carlo_joint_cdf(const LayeredSpec& spec, const std::vector<int>& times,
                                 const std::vector<double>& thresholds, std::uint64_t samples,
                                 std::uint64_t seed, Execution exec = Execution::Parallel);

// Joint CDF estimates on a whole grid of threshold vectors from the same
// environments (one LPP sweep per sample).
std::vector<McEstimate> monte_carlo_joint_cdf_grid(const LayeredSpec& spec, const std::vector<int>& times,
                                                   const std::vector<std::vector<double>>& grid,
                                                   std::uint64_t samples, std::uint64_t seed,
                                                   Execution exec = Execution::Parallel);

// Raw last-passage values T(r_1..r_N) for samples [first, first + count).
std::vector<std::vector<double>> sample_lpp_values(const LayeredSpec& spec, const std::vector<int>& times,
                                                   std::uint64_t first, std::uint64_t count,
                                                   std::uint64_t seed, Execution exec = Execution::Parallel);

// Exact CDF of T(k) for a single-row environment (n = 1): the sum of independent
// exponentials with rates nu_m + j - 1, evaluated as a phase-type law.
double single_row_lpp_cdf(const LayeredSpec& spec, int k, double s);

double critical_centering(int n, int nu, int ell, double t);
double critical_rescale(int n, int nu, int ell, double t, double raw_time);

}  // namespace perclab
