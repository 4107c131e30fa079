#include "perclab/env.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <Eigen/Dense>
#include <json.hpp>
#include <unsupported/Eigen/MatrixFunctions>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "perclab/rng.hpp"

namespace perclab {

LayeredSpec::LayeredSpec(int n, std::vector<int> nu, std::vector<int> ell)
    : n_(n), nu_(std::move(nu)), ell_(std::move(ell)) {
  if (n_ < 1) throw std::invalid_argument("LayeredSpec: n must be at least 1");
  if (nu_.empty() || nu_.size() != ell_.size())
    throw std::invalid_argument("LayeredSpec: nu and ell must be nonempty and of equal length");
  for (int v : nu_)
    if (v < 1) throw std::invalid_argument("LayeredSpec: nu_k must be at least 1");
  if (ell_[0] < n_) throw std::invalid_argument("LayeredSpec: ell_1 must be at least n");
  long long acc = 0;
  for (int l : ell_) {
    if (l < 1) throw std::invalid_argument("LayeredSpec: ell_k must be at least 1");
    acc += l;
    width_.push_back(acc);
  }
}

int LayeredSpec::nu(int k) const {
  if (k == 0) return 1;
  if (k < 0 || k > blocks()) throw std::out_of_range("LayeredSpec::nu: block index");
  return nu_[k - 1];
}

int LayeredSpec::ell(int k) const {
  if (k == 0) return -n_;
  if (k < 0 || k > blocks()) throw std::out_of_range("LayeredSpec::ell: block index");
  return ell_[k - 1];
}

long long LayeredSpec::width(int k) const {
  if (k == 0) return 0;
  if (k < 0 || k > blocks()) throw std::out_of_range("LayeredSpec::width: block index");
  return width_[k - 1];
}

int LayeredSpec::block_of(long long j) const {
  auto it = std::lower_bound(width_.begin(), width_.end(), j);
  if (j < 1 || it == width_.end()) throw std::out_of_range("LayeredSpec::block_of: column");
  return static_cast<int>(it - width_.begin()) + 1;
}

double LayeredSpec::rate(int i, long long j) const {
  const int m = block_of(j);
  const long long local = j - width(m - 1);
  return static_cast<double>(nu_[m - 1] + i + local - 2);
}

LayeredSpec LayeredSpec::prefix(int k) const {
  if (k < 1 || k > blocks()) throw std::out_of_range("LayeredSpec::prefix: block count");
  return LayeredSpec(n_, {nu_.begin(), nu_.begin() + k}, {ell_.begin(), ell_.begin() + k});
}

ClockArray::ClockArray(int n, std::vector<int> block_lengths, std::vector<double> values, ClockMode mode)
    : n_(n), blocks_(std::move(block_lengths)), cols_(0), values_(std::move(values)), mode_(mode) {
  if (n_ < 1 || blocks_.empty()) throw std::invalid_argument("ClockArray: empty shape");
  for (int l : blocks_) {
    if (l < 1) throw std::invalid_argument("ClockArray: block lengths must be positive");
    cols_ += l;
  }
  if (static_cast<long long>(values_.size()) != n_ * cols_)
    throw std::invalid_argument("ClockArray: value count does not match shape");
  for (double v : values_) {
    if (!(v >= 0)) throw std::invalid_argument("ClockArray: entries must be nonnegative");
    if (mode_ == ClockMode::Geometric && v != std::floor(v))
      throw std::invalid_argument("ClockArray: geometric entries must be integers");
  }
}

long long ClockArray::block_end(int k) const {
  if (k < 0 || k > block_count()) throw std::out_of_range("ClockArray::block_end: block index");
  long long acc = 0;
  for (int m = 0; m < k; ++m) acc += blocks_[m];
  return acc;
}

long long ClockArray::count(int i, long long j) const {
  if (mode_ != ClockMode::Geometric) throw std::logic_error("ClockArray::count: not an integer array");
  return static_cast<long long>(at(i, j));
}

ClockArray ClockArray::prefix(int k) const {
  if (k < 1 || k > block_count()) throw std::out_of_range("ClockArray::prefix: block count");
  const long long L = block_end(k);
  std::vector<double> v;
  v.reserve(n_ * L);
  for (int i = 1; i <= n_; ++i)
    for (long long j = 1; j <= L; ++j) v.push_back(at(i, j));
  return ClockArray(n_, {blocks_.begin(), blocks_.begin() + k}, std::move(v), mode_);
}

void ClockArray::write_csv(std::ostream& os) const {
  os << n_;
  for (int l : blocks_) os << ',' << l;
  os << '\n';
  char buf[40];
  for (int i = 1; i <= n_; ++i) {
    for (long long j = 1; j <= cols_; ++j) {
      if (j > 1) os << ',';
      if (mode_ == ClockMode::Geometric)
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(at(i, j)));
      else
        std::snprintf(buf, sizeof buf, "%.17g", at(i, j));
      os << buf;
    }
    os << '\n';
  }
}

ClockArray ClockArray::read_csv(std::istream& is) {
  auto split = [](const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
  };
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("ClockArray CSV: missing header row");
  const auto head = split(line);
  if (head.size() < 2) throw std::invalid_argument("ClockArray CSV: header needs n and block lengths");
  const int n = std::stoi(head[0]);
  std::vector<int> blocks;
  for (std::size_t k = 1; k < head.size(); ++k) blocks.push_back(std::stoi(head[k]));
  std::vector<double> values;
  bool integral = true;
  for (int i = 0; i < n; ++i) {
    if (!std::getline(is, line)) throw std::invalid_argument("ClockArray CSV: missing data row");
    for (const auto& tok : split(line)) {
      if (tok.find_first_of(".eEnN") != std::string::npos) integral = false;
      values.push_back(std::stod(tok));
    }
  }
  return ClockArray(n, blocks, std::move(values), integral ? ClockMode::Geometric : ClockMode::Exponential);
}

bool operator==(const ClockArray& a, const ClockArray& b) {
  return a.rows() == b.rows() && a.block_lengths() == b.block_lengths() && a.mode() == b.mode() &&
         a.values() == b.values();
}

double dkw_band(std::uint64_t samples) {
  if (samples == 0) throw std::invalid_argument("dkw_band: no samples");
  return std::sqrt(std::log(2.0 / 0.05) / (2.0 * static_cast<double>(samples)));
}

std::string McEstimate::to_json() const {
  nlohmann::json j;
  j["estimate"] = estimate;
  j["samples"] = samples;
  j["dkw_band"] = dkw_band;
  j["seed"] = seed;
  return j.dump();
}

McEstimate McEstimate::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  McEstimate m;
  m.estimate = j.at("estimate").get<double>();
  m.samples = j.at("samples").get<std::uint64_t>();
  m.dkw_band = j.at("dkw_band").get<double>();
  m.seed = j.at("seed").get<std::uint64_t>();
  return m;
}

namespace {

void check_block_count(const LayeredSpec& spec, int k) {
  if (k < 1 || k > spec.blocks()) throw std::out_of_range("block count out of range");
}

// Column-major draw order; storage is row-major.
template <class Draw>
std::vector<double> fill_columns(const LayeredSpec& spec, int k, Draw draw) {
  const int n = spec.rows();
  const long long L = spec.width(k);
  std::vector<double> v(n * L);
  for (int m = 1; m <= k; ++m)
    for (long long j = spec.width(m - 1) + 1; j <= spec.width(m); ++j)
      for (int i = 1; i <= n; ++i) v[(i - 1) * L + (j - 1)] = draw(i, m, j - spec.width(m - 1));
  return v;
}

std::vector<int> block_lengths(const LayeredSpec& spec, int k) {
  return {spec.ell_vec().begin(), spec.ell_vec().begin() + k};
}

void check_times(const LayeredSpec& spec, const std::vector<int>& times) {
  if (times.empty()) throw std::invalid_argument("no times given");
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (times[j] < 1 || times[j] > spec.blocks()) throw std::out_of_range("time outside spec blocks");
    if (j > 0 && times[j] <= times[j - 1]) throw std::invalid_argument("times must be strictly increasing");
  }
}

// One environment drawn on the fly, swept column by column.
void lpp_sample(const LayeredSpec& spec, const std::vector<int>& times, std::uint64_t seed, std::uint64_t index,
                std::vector<long double>& col, double* out) {
  CounterRng rng(seed, index);
  const int n = spec.rows();
  std::fill(col.begin(), col.end(), -std::numeric_limits<long double>::infinity());
  std::size_t next = 0;
  const int last = times.back();
  for (int m = 1; m <= last; ++m) {
    const int nu = spec.nu(m);
    const long long w = spec.ell(m);
    for (long long jl = 1; jl <= w; ++jl) {
      long double up = -std::numeric_limits<long double>::infinity();
      for (int i = 1; i <= n; ++i) {
        const double a = rng.exponential(static_cast<double>(nu + i + jl - 2));
        long double best = std::max(up, col[i - 1]);
        if (i == 1 && m == 1 && jl == 1) best = 0.0L;
        col[i - 1] = a + best;
        up = col[i - 1];
      }
    }
    if (next < times.size() && times[next] == m) out[next++] = static_cast<double>(col[n - 1]);
  }
}

}  // namespace

ClockArray sample_exponential_blocks(const LayeredSpec& spec, int k, std::uint64_t seed) {
  check_block_count(spec, k);
  CounterRng rng(seed, 0);
  auto v = fill_columns(spec, k, [&](int i, int m, long long jl) {
    return rng.exponential(static_cast<double>(spec.nu(m) + i + jl - 2));
  });
  return ClockArray(spec.rows(), block_lengths(spec, k), std::move(v), ClockMode::Exponential);
}

ClockArray sample_geometric_blocks(const LayeredSpec& spec, int k, const std::vector<double>& x,
                                   const GeometricY& y, std::uint64_t seed) {
  check_block_count(spec, k);
  if (static_cast<int>(x.size()) != spec.rows() || static_cast<int>(y.size()) < k)
    throw std::invalid_argument("sample_geometric_blocks: parameter dimensions");
  for (int m = 1; m <= k; ++m)
    if (static_cast<int>(y[m - 1].size()) != spec.ell(m))
      throw std::invalid_argument("sample_geometric_blocks: y block length");
  for (double xi : x)
    for (int m = 1; m <= k; ++m)
      for (double yj : y[m - 1]) {
        const double p = xi * yj;
        if (!(p > 0 && p < 1)) throw std::domain_error("sample_geometric_blocks: x_i y_j must lie in (0, 1)");
      }
  CounterRng rng(seed, 0);
  auto v = fill_columns(spec, k, [&](int i, int m, long long jl) {
    return static_cast<double>(rng.geometric(x[i - 1] * y[m - 1][jl - 1]));
  });
  return ClockArray(spec.rows(), block_lengths(spec, k), std::move(v), ClockMode::Geometric);
}

std::pair<std::vector<double>, GeometricY> geometric_parameters_for_exponential_limit(const LayeredSpec& spec,
                                                                                       int N) {
  if (N < 1) throw std::invalid_argument("geometric parameters: N must be positive");
  std::vector<double> x(spec.rows());
  for (int i = 1; i <= spec.rows(); ++i) x[i - 1] = std::exp(-(i - 1.0) / N);
  GeometricY y(spec.blocks());
  for (int k = 1; k <= spec.blocks(); ++k)
    for (int j = 1; j <= spec.ell(k); ++j) y[k - 1].push_back(std::exp(-(spec.nu(k) + j - 1.0) / N));
  return {x, y};
}

double last_passage_time(const ClockArray& a) {
  return last_passage_process(a, {a.block_count()}).front();
}

std::vector<double> last_passage_process(const ClockArray& a, const std::vector<int>& ks) {
  if (ks.empty()) throw std::invalid_argument("last_passage_process: no block indices");
  for (std::size_t j = 0; j < ks.size(); ++j) {
    if (ks[j] < 1 || ks[j] > a.block_count()) throw std::out_of_range("last_passage_process: block index");
    if (j > 0 && ks[j] <= ks[j - 1]) throw std::invalid_argument("last_passage_process: indices must increase");
  }
  const int n = a.rows();
  std::vector<long double> col(n, -std::numeric_limits<long double>::infinity());
  std::vector<double> out;
  std::size_t next = 0;
  long long boundary = a.block_end(ks[0]);
  for (long long j = 1; j <= a.cols() && next < ks.size(); ++j) {
    long double up = -std::numeric_limits<long double>::infinity();
    for (int i = 1; i <= n; ++i) {
      long double best = std::max(up, col[i - 1]);
      if (i == 1 && j == 1) best = 0.0L;
      col[i - 1] = static_cast<long double>(a.at(i, j)) + best;
      up = col[i - 1];
    }
    if (j == boundary) {
      out.push_back(static_cast<double>(col[n - 1]));
      if (++next < ks.size()) boundary = a.block_end(ks[next]);
    }
  }
  return out;
}

double brute_force_lpp(const ClockArray& a) {
  const int n = a.rows();
  const long long L = a.cols();
  if (n + L - 2 > 22) throw std::invalid_argument("brute_force_lpp: grid too large");
  long double best = -std::numeric_limits<long double>::infinity();
  auto walk = [&](auto&& self, int i, long long j, long double s) -> void {
    if (i == n && j == L) {
      best = std::max(best, s);
      return;
    }
    if (i < n) self(self, i + 1, j, static_cast<long double>(a.at(i + 1, j)) + s);
    if (j < L) self(self, i, j + 1, static_cast<long double>(a.at(i, j + 1)) + s);
  };
  walk(walk, 1, 1, static_cast<long double>(a.at(1, 1)) + 0.0L);
  return static_cast<double>(best);
}

std::vector<std::vector<double>> sample_lpp_values(const LayeredSpec& spec, const std::vector<int>& times,
                                                   std::uint64_t first, std::uint64_t count, std::uint64_t seed,
                                                   Execution exec) {
  check_times(spec, times);
  const std::size_t N = times.size();
  std::vector<double> flat(count * N);
  const long long total = static_cast<long long>(count);
  if (exec == Execution::Parallel) {
#pragma omp parallel
    {
      std::vector<long double> col(spec.rows());
#pragma omp for schedule(static)
      for (long long s = 0; s < total; ++s) lpp_sample(spec, times, seed, first + s, col, &flat[s * N]);
    }
  } else {
    std::vector<long double> col(spec.rows());
    for (long long s = 0; s < total; ++s) lpp_sample(spec, times, seed, first + s, col, &flat[s * N]);
  }
  std::vector<std::vector<double>> out(count, std::vector<double>(N));
  for (std::uint64_t s = 0; s < count; ++s)
    std::copy(flat.begin() + s * N, flat.begin() + (s + 1) * N, out[s].begin());
  return out;
}

std::vector<McEstimate> monte_carlo_joint_cdf_grid(const LayeredSpec& spec, const std::vector<int>& times,
                                                   const std::vector<std::vector<double>>& grid,
                                                   std::uint64_t samples, std::uint64_t seed, Execution exec) {
  check_times(spec, times);
  if (samples < 1) throw std::invalid_argument("monte_carlo_joint_cdf: samples must be positive");
  for (const auto& g : grid)
    if (g.size() != times.size()) throw std::invalid_argument("monte_carlo_joint_cdf: threshold count");
  const std::size_t N = times.size(), G = grid.size();
  std::vector<std::uint64_t> hits(G, 0);
  auto tally = [&](const double* t, std::vector<std::uint64_t>& h) {
    for (std::size_t g = 0; g < G; ++g) {
      bool ok = true;
      for (std::size_t j = 0; j < N && ok; ++j) ok = t[j] <= grid[g][j];
      if (ok) ++h[g];
    }
  };
  const long long total = static_cast<long long>(samples);
  if (exec == Execution::Parallel) {
#pragma omp parallel
    {
      std::vector<long double> col(spec.rows());
      std::vector<double> t(N);
      std::vector<std::uint64_t> local(G, 0);
#pragma omp for schedule(static)
      for (long long s = 0; s < total; ++s) {
        lpp_sample(spec, times, seed, static_cast<std::uint64_t>(s), col, t.data());
        tally(t.data(), local);
      }
#pragma omp critical
      for (std::size_t g = 0; g < G; ++g) hits[g] += local[g];
    }
  } else {
    std::vector<long double> col(spec.rows());
    std::vector<double> t(N);
    for (long long s = 0; s < total; ++s) {
      lpp_sample(spec, times, seed, static_cast<std::uint64_t>(s), col, t.data());
      tally(t.data(), hits);
    }
  }
  std::vector<McEstimate> out(G);
  for (std::size_t g = 0; g < G; ++g)
    out[g] = {static_cast<double>(hits[g]) / static_cast<double>(samples), samples, dkw_band(samples), seed};
  return out;
}

McEstimate monte_carlo_joint_cdf(const LayeredSpec& spec, const std::vector<int>& times,
                                 const std::vector<double>& thresholds, std::uint64_t samples, std::uint64_t seed,
                                 Execution exec) {
  return monte_carlo_joint_cdf_grid(spec, times, {thresholds}, samples, seed, exec).front();
}

double single_row_lpp_cdf(const LayeredSpec& spec, int k, double s) {
  if (spec.rows() != 1) throw std::invalid_argument("single_row_lpp_cdf: environment must have one row");
  if (k < 1 || k > spec.blocks()) throw std::out_of_range("single_row_lpp_cdf: block index");
  if (s <= 0) return 0.0;
  const long long m = spec.width(k);
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(m, m);
  for (long long j = 0; j < m; ++j) {
    S(j, j) = -spec.rate(1, j + 1);
    if (j + 1 < m) S(j, j + 1) = spec.rate(1, j + 1);
  }
  const Eigen::MatrixXd E = (S * s).exp();
  return std::clamp(1.0 - E.row(0).sum(), 0.0, 1.0);
}

double critical_centering(int n, int nu, int ell, double t) {
  if (n < 1 || nu < 1 || ell < 1 || !(t > 0)) throw std::invalid_argument("critical_rescale: parameters");
  const double k = std::floor(t * nu + 1e-12);
  if (k < 1) throw std::domain_error("critical_rescale: [t nu] must be at least 1");
  return std::log(static_cast<double>(n)) +
         k * (std::log(static_cast<double>(nu + ell) / nu) + ell / (2.0 * nu * (nu + ell))) - 1.0 / (2.0 * n);
}

double critical_rescale(int n, int nu, int ell, double t, double raw_time) {
  return raw_time - critical_centering(n, nu, ell, t);
}

}  // namespace perclab
