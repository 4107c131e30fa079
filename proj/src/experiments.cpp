#include "perclab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "perclab/fredholm.hpp"
#include "perclab/kernels.hpp"
#include "perclab/rsk.hpp"
#include "perclab/schur.hpp"

namespace perclab {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void Table::add(std::vector<std::string> row) {
  if (row.size() != header.size()) throw std::logic_error("table row width differs from header");
  rows.push_back(std::move(row));
}

void Table::write_csv(std::ostream& os) const {
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

Table Table::read_csv(std::istream& is) {
  Table t;
  std::string text;
  if (!std::getline(is, text)) throw ConfigError("csv: empty file");
  if (!text.empty() && text.back() == '\r') text.pop_back();
  t.header = split(text, ',');
  while (std::getline(is, text)) {
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty()) continue;
    auto r = split(text, ',');
    if (r.size() != t.header.size()) throw ConfigError("csv: ragged row");
    t.rows.push_back(std::move(r));
  }
  return t;
}

int Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::write_summary(std::ostream& os) const {
  for (const Check& c : checks)
    os << (c.pass ? "PASS " : "FAIL ") << c.name << " [" << c.detail << "] value=" << fmt(c.value)
       << " reference=" << fmt(c.reference) << " tol=" << fmt(c.tol) << '\n';
  os << (passed() ? "PASS " : "FAIL ") << experiment << " (" << checks.size() << " checks)\n";
}

namespace {

std::vector<std::vector<double>> cartesian(const std::vector<std::vector<double>>& lists) {
  std::vector<std::vector<double>> out{{}};
  for (const auto& l : lists) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : out)
      for (double v : l) {
        auto p = prefix;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<std::vector<double>> sorted_grid(const Config& cfg, const std::string& key, std::size_t times) {
  auto lists = cfg.get_grid(key);
  if (lists.size() != times) throw ConfigError(key + ": need one threshold list per time");
  for (auto& l : lists) std::sort(l.begin(), l.end());
  return lists;
}

Backend parse_backend(const std::string& s) {
  if (s == "residue") return Backend::Residue;
  if (s == "quadrature") return Backend::Quadrature;
  throw ConfigError("unknown backend '" + s + "'");
}

std::string join_values(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt(v[i]);
  return s;
}

// Monotonicity of grid values in every coordinate (grid stored in cartesian order).
void monotone_checks(Report& rep, const std::vector<std::vector<double>>& lists, const std::vector<double>& values) {
  std::vector<std::size_t> stride(lists.size(), 1);
  for (int j = static_cast<int>(lists.size()) - 2; j >= 0; --j) stride[j] = stride[j + 1] * lists[j + 1].size();
  double worst = 0.0;
  for (std::size_t idx = 0; idx < values.size(); ++idx)
    for (std::size_t j = 0; j < lists.size(); ++j) {
      const std::size_t pos = (idx / stride[j]) % lists[j].size();
      if (pos + 1 < lists[j].size()) worst = std::max(worst, values[idx] - values[idx + stride[j]]);
    }
  rep.checks.push_back({"monotone in thresholds", "largest decrease", worst, 0.0, 1e-8, worst <= 1e-8});
}

void range_checks(Report& rep, const std::vector<double>& values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  rep.checks.push_back({"probability lower bound", "min", *lo, 0.0, 1e-8, *lo >= -1e-8});
  rep.checks.push_back({"probability upper bound", "max", *hi, 1.0, 1e-8, *hi <= 1.0 + 1e-8});
}

std::vector<int> ints(const std::vector<double>& v, const std::string& what) {
  std::vector<int> out;
  for (double x : v) {
    if (x != std::round(x)) throw ConfigError(what + ": expected integers");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

}  // namespace

Report run_gap(const Config& cfg, const RunOptions& opt) {
  Report rep;
  rep.experiment = "gap";
  const LayeredSpec spec = cfg.spec();
  const std::vector<int> times = cfg.get_int_list("gap.times");
  for (int t : times)
    if (t < 1 || t > spec.blocks()) throw ConfigError("gap.times: block index out of range");
  const auto lists = sorted_grid(cfg, "gap.thresholds", times.size());
  const std::string kind = cfg.get_string("gap.kernel", "log");
  if (kind != "log" && kind != "mult") throw ConfigError("gap.kernel: expected log or mult");
  const std::string reference = cfg.get_string("check.reference", "none");
  if (reference != "none" && reference != "exact" && reference != "series")
    throw ConfigError("check.reference: expected none, exact or series");
  if (reference == "exact" && (spec.rows() != 1 || times.size() != 1))
    throw ConfigError("check.reference = exact needs n = 1 and a single time");
  const double tol = opt.tol.value_or(cfg.get_double("check.tol", 1e-6));

  FredholmProblem p;
  p.kernel = kind == "log" ? make_truncated_unitary_log(spec.rows(), spec.nu_vec(), spec.ell_vec())
                           : make_truncated_unitary_mult(spec.rows(), spec.nu_vec(), spec.ell_vec());
  p.times.assign(times.begin(), times.end());
  p.backend = parse_backend(cfg.get_string("gap.backend", "residue"));
  p.parallel = opt.parallel;

  rep.table.header.clear();
  for (std::size_t j = 0; j < times.size(); ++j) rep.table.header.push_back("s" + std::to_string(j + 1));
  for (const char* h : {"probability", "est_error", "nodes", "runtime_ms"}) rep.table.header.push_back(h);
  if (reference != "none")
    for (const char* h : {"reference", "abs_error", "status"}) rep.table.header.push_back(h);

  std::vector<double> values;
  for (const auto& s : cartesian(lists)) {
    p.thresholds = s;
    const GapResult r = nystrom_gap_probability(p, std::min(tol, 1e-6));
    values.push_back(r.value);
    std::vector<std::string> row;
    for (double v : s) row.push_back(fmt(v));
    row.insert(row.end(), {fmt(r.value), fmt(r.est_error), std::to_string(r.nodes), fmt(r.runtime_ms)});
    if (reference != "none") {
      double ref = 0.0;
      if (reference == "exact") {
        ref = single_row_lpp_cdf(spec, times[0], s[0]);
      } else {
        const int order = std::min(3, spec.rows() * static_cast<int>(times.size()));
        ref = series_gap_probability(p, order, std::min(tol, 1e-6)).value;
      }
      const double err = std::abs(r.value - ref);
      row.insert(row.end(), {fmt(ref), fmt(err), err <= tol ? "PASS" : "FAIL"});
      rep.checks.push_back({"gap probability vs " + reference, "s=" + join_values(s), r.value, ref, tol, err <= tol});
    }
    rep.table.add(std::move(row));
  }
  range_checks(rep, values);
  monotone_checks(rep, lists, values);
  return rep;
}

Report run_simulate(const Config& cfg, const RunOptions& opt) {
  Report rep;
  rep.experiment = "simulate";
  const LayeredSpec spec = cfg.spec();
  const std::vector<int> times = cfg.get_int_list("simulate.times");
  for (int t : times)
    if (t < 1 || t > spec.blocks()) throw ConfigError("simulate.times: block index out of range");
  const auto lists = sorted_grid(cfg, "simulate.thresholds", times.size());
  const long long samples = cfg.get_int("simulate.samples", 100000);
  if (samples < 1) throw ConfigError("simulate.samples must be positive");
  const std::uint64_t seed = opt.seed.value_or(static_cast<std::uint64_t>(cfg.get_int("simulate.seed", 1)));
  const std::string compare = cfg.get_string("simulate.compare", "none");
  if (compare != "none" && compare != "fredholm") throw ConfigError("simulate.compare: expected none or fredholm");
  const double slack = opt.tol.value_or(cfg.get_double("check.tol", 1e-3));

  const auto grid = cartesian(lists);
  const auto mc = monte_carlo_joint_cdf_grid(spec, times, grid, static_cast<std::uint64_t>(samples), seed,
                                             opt.parallel ? Execution::Parallel : Execution::Serial);
  for (std::size_t j = 0; j < times.size(); ++j) rep.table.header.push_back("s" + std::to_string(j + 1));
  for (const char* h : {"mc", "dkw_band", "samples"}) rep.table.header.push_back(h);
  if (compare == "fredholm")
    for (const char* h : {"fredholm", "abs_error", "status"}) rep.table.header.push_back(h);

  FredholmProblem p;
  p.kernel = make_truncated_unitary_log(spec.rows(), spec.nu_vec(), spec.ell_vec());
  p.times.assign(times.begin(), times.end());
  p.parallel = opt.parallel;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::vector<std::string> row;
    for (double v : grid[g]) row.push_back(fmt(v));
    row.insert(row.end(), {fmt(mc[g].estimate), fmt(mc[g].dkw_band), std::to_string(mc[g].samples)});
    if (compare == "fredholm") {
      p.thresholds = grid[g];
      const double f = nystrom_gap_probability(p).value;
      const double err = std::abs(f - mc[g].estimate), bound = mc[g].dkw_band + slack;
      row.insert(row.end(), {fmt(f), fmt(err), err <= bound ? "PASS" : "FAIL"});
      rep.checks.push_back({"monte carlo vs fredholm", "s=" + join_values(grid[g]), mc[g].estimate, f, bound,
                            err <= bound});
    }
    rep.table.add(std::move(row));
  }
  if (cfg.has("simulate.dump")) {
    const std::string path = cfg.get_string("simulate.dump");
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    sample_exponential_blocks(spec, spec.blocks(), seed).write_csv(out);
  }
  return rep;
}

namespace {

KernelPtr kernel_from_config(const Config& cfg) {
  const std::string id = cfg.get_string("kernel.id");
  KernelOptions o;
  o.perturb = cfg.get_double("kernel.perturb", 1.0);
  o.sigma_abscissa = cfg.get_double("kernel.sigma_abscissa", -0.5);
  auto n = [&] { return static_cast<int>(cfg.get_int("kernel.n")); };
  try {
    if (id == "truncated-unitary-log")
      return make_truncated_unitary_log(n(), cfg.get_int_list("kernel.nu"), cfg.get_int_list("kernel.ell"), o);
    if (id == "truncated-unitary-mult")
      return make_truncated_unitary_mult(n(), cfg.get_int_list("kernel.nu"), cfg.get_int_list("kernel.ell"), o);
    if (id == "ginibre") return make_ginibre(n(), cfg.get_int_list("kernel.nu"), o);
    if (id == "hard-edge") return make_hard_edge(cfg.get_int_list("kernel.nu"), o);
    if (id == "critical") return make_critical(o);
    if (id == "scaled-critical")
      return make_scaled_critical(n(), static_cast<int>(cfg.get_int("kernel.nu")),
                               static_cast<int>(cfg.get_int("kernel.ell")), o);
    if (id == "scaled-hard-edge-tu")
      return make_scaled_hard_edge_tu(n(), cfg.get_int_list("kernel.nu"), cfg.get_int_list("kernel.ell"), o);
    if (id == "scaled-hard-to-soft") return make_scaled_hard_to_soft(static_cast<int>(cfg.get_int("kernel.nu")), o);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("kernel: ") + e.what());
  }
  throw ConfigError("unknown kernel id '" + id + "'");
}

}  // namespace

Report run_kernel_eval(const Config& cfg, const RunOptions& opt) {
  Report rep;
  rep.experiment = "kernel-eval";
  const KernelPtr k = kernel_from_config(cfg);
  const std::string backend = cfg.get_string("kernel.backend", "both");
  const double tol = opt.tol.value_or(cfg.get_double("check.tol", 1e-8));
  std::vector<Backend> backends;
  if (backend == "both") backends = {Backend::Quadrature, Backend::Residue};
  else backends = {parse_backend(backend)};
  rep.table.header = {"kernel", "parameters", "q", "x", "r", "y", "value", "backend", "est_error"};
  for (const auto& pt : split(cfg.get_string("kernel.points"), ',')) {
    const auto f = split(pt, ':');
    if (f.size() != 4) throw ConfigError("kernel.points: expected q:x:r:y, got '" + pt + "'");
    double v[4];
    for (int i = 0; i < 4; ++i) v[i] = parse_double(f[i], "kernel.points");
    std::vector<double> vals;
    for (Backend b : backends) {
      KernelValue kv;
      try {
        kv = (*k)(v[0], v[1], v[2], v[3], b);
      } catch (const std::out_of_range& e) {
        throw ConfigError(std::string("kernel.points: ") + e.what());
      } catch (const std::domain_error& e) {
        throw ConfigError(std::string("kernel.points: ") + e.what());
      }
      vals.push_back(kv.value);
      rep.table.add({kernel_name(k->id()), k->parameters(), fmt(v[0]), fmt(v[1]), fmt(v[2]), fmt(v[3]),
                     fmt(kv.value), backend_name(b), fmt(kv.est_error)});
    }
    if (vals.size() == 2) {
      const double rel = std::abs(vals[0] - vals[1]) / std::max(std::abs(vals[1]), 1e-300);
      rep.checks.push_back({"backend agreement (relative)", pt, vals[0], vals[1], tol, rel <= tol});
    }
  }
  return rep;
}

LimitKind parse_limit(const std::string& name) {
  if (name == "hard-edge") return LimitKind::HardEdge;
  if (name == "truncated-unitary") return LimitKind::TruncatedUnitary;
  if (name == "hard-to-soft") return LimitKind::HardToSoft;
  if (name == "critical") return LimitKind::Critical;
  throw ConfigError("unknown limit '" + name + "' (hard-edge, truncated-unitary, hard-to-soft, critical)");
}

const char* limit_name(LimitKind k) {
  switch (k) {
    case LimitKind::HardEdge: return "hard-edge";
    case LimitKind::TruncatedUnitary: return "truncated-unitary";
    case LimitKind::HardToSoft: return "hard-to-soft";
    case LimitKind::Critical: return "critical";
  }
  return "";
}

Report run_converge(LimitKind kind, const std::string& ladder, const RunOptions& opt) {
  Report rep;
  rep.experiment = std::string("converge ") + limit_name(kind);
  const std::size_t arity = kind == LimitKind::TruncatedUnitary ? 2 : kind == LimitKind::Critical ? 3 : 1;
  std::vector<std::vector<int>> rungs;
  for (const auto& r : split(ladder, ',')) {
    std::vector<double> v;
    for (const auto& f : split(r, ':')) v.push_back(parse_double(f, "ladder"));
    if (v.size() != arity) throw ConfigError("ladder rung '" + r + "' has the wrong number of fields");
    rungs.push_back(ints(v, "ladder"));
  }
  if (rungs.size() < 2) throw ConfigError("ladder needs at least two rungs");

  struct Point {
    double q, x, r, y;
  };
  std::vector<Point> points;
  switch (kind) {
    case LimitKind::HardEdge: points = {{1, 1, 1, 1}, {1, 1, 2, 2}}; break;
    case LimitKind::TruncatedUnitary: points = {{1, 1, 1, 1}}; break;
    case LimitKind::HardToSoft: points = {{1, 0, 2, 0}, {1, 1, 2, -1}}; break;
    case LimitKind::Critical: points = {{1, 0, 2, 0}}; break;
  }
  rep.table.header = {"rung"};
  for (std::size_t i = 0; i < points.size(); ++i) rep.table.header.push_back("error" + std::to_string(i + 1));

  std::vector<double> limit(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    if (kind == LimitKind::HardEdge) {
      limit[i] = k_hard_edge(std::vector<int>(2, 1), static_cast<int>(p.q), p.x, static_cast<int>(p.r), p.y).value;
    } else if (kind == LimitKind::TruncatedUnitary) {
      limit[i] = k_hard_edge({1}, static_cast<int>(p.q), p.x, static_cast<int>(p.r), p.y).value;
    } else {
      limit[i] = k_critical(p.q, p.x, p.r, p.y).value;
    }
  }
  std::vector<std::vector<double>> err(points.size());
  for (const auto& rung : rungs) {
    std::vector<std::string> row;
    std::string label;
    for (std::size_t f = 0; f < rung.size(); ++f) label += (f ? ":" : "") + std::to_string(rung[f]);
    row.push_back(label);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Point& p = points[i];
      const int q = static_cast<int>(p.q), r = static_cast<int>(p.r);
      double v = 0.0;
      switch (kind) {
        case LimitKind::HardEdge: {
          const int n = rung[0];
          v = k_ginibre(n, std::vector<int>(2, 1), q, p.x / n, r, p.y / n).value / n;
          break;
        }
        case LimitKind::TruncatedUnitary:
          v = scaled_hard_edge_tu_kernel(rung[0], {1}, {rung[1]}, q, p.x, r, p.y).value;
          break;
        case LimitKind::HardToSoft: v = scaled_hard_to_soft_kernel(rung[0], p.q, p.x, p.r, p.y).value; break;
        case LimitKind::Critical:
          v = scaled_critical_kernel(rung[0], rung[1], rung[2], p.q, p.x, p.r, p.y).value;
          break;
      }
      err[i].push_back(std::abs(v - limit[i]));
      row.push_back(fmt(err[i].back()));
    }
    rep.table.add(std::move(row));
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    const std::string where =
        "(" + fmt(p.q) + "," + fmt(p.x) + "," + fmt(p.r) + "," + fmt(p.y) + ")";
    double worst = -1e300;
    for (std::size_t k = 1; k < err[i].size(); ++k) worst = std::max(worst, err[i][k] - err[i][k - 1]);
    rep.checks.push_back({"error strictly decreasing", where + " largest step", worst, 0.0, 0.0, worst < 0.0});
    if (opt.tol)
      rep.checks.push_back({"error at last rung", where, err[i].back(), 0.0, *opt.tol, err[i].back() <= *opt.tol});
  }
  return rep;
}

Report run_rsk_check(int arrays, int rows, int cols, const RunOptions& opt) {
  Report rep;
  rep.experiment = "rsk-check";
  if (arrays < 1 || rows < 1 || cols < rows) throw ConfigError("rsk-check: need arrays >= 1 and cols >= rows >= 1");
  const LayeredSpec spec(rows, {1}, {cols});
  const std::vector<double> x(rows, std::sqrt(0.5));
  const GeometricY y{std::vector<double>(cols, std::sqrt(0.5))};
  const std::uint64_t seed = opt.seed.value_or(7);
  const bool brute = rows + cols - 2 <= 22;
  rep.table.header = {"array", "lambda1", "lpp", "equal"};
  if (brute) rep.table.header.push_back("path_enumeration");
  int equal = 0, brute_equal = 0;
  for (int a = 0; a < arrays; ++a) {
    const ClockArray arr = sample_geometric_blocks(spec, 1, x, y, seed * 1000003ULL + static_cast<std::uint64_t>(a));
    const RskPair pq = rsk_correspondence(arr);
    const double l1 = pq.P.outer()[0];
    const double lpp = last_passage_time(arr);
    equal += (l1 == lpp && pq.P.valid() && pq.Q.valid());
    std::vector<std::string> row{std::to_string(a), fmt(l1), fmt(lpp), l1 == lpp ? "1" : "0"};
    if (brute) {
      const double b = brute_force_lpp(arr);
      brute_equal += (b == lpp);
      row.push_back(fmt(b));
    }
    rep.table.add(std::move(row));
  }
  const std::string where = std::to_string(rows) + "x" + std::to_string(cols);
  rep.checks.push_back({"lambda1 equals last-passage time", where, static_cast<double>(equal),
                        static_cast<double>(arrays), 0.0, equal == arrays});
  if (brute)
    rep.checks.push_back({"dynamic programming equals path enumeration", where, static_cast<double>(brute_equal),
                          static_cast<double>(arrays), 0.0, brute_equal == arrays});
  return rep;
}

Report run_schur_check(const Config& cfg, const RunOptions& opt) {
  Report rep;
  rep.experiment = "schur-check";
  const int n = static_cast<int>(cfg.get_int("schur.n"));
  const std::vector<int> ell = cfg.get_int_list("schur.ell");
  const double a = cfg.get_double("schur.param", 0.3);
  const int max_weight = static_cast<int>(cfg.get_int("schur.max_weight", 30));
  const double min_mass = opt.tol ? 1.0 - *opt.tol : cfg.get_double("check.min_mass", 0.999);
  SchurProcessParams p;
  p.n = n;
  p.x.assign(n, a);
  for (int l : ell) p.y.emplace_back(l, a);
  try {
    p.validate();
  } catch (const std::logic_error& e) {
    throw ConfigError(std::string("schur: ") + e.what());
  }
  const NormalizationReport r = schur_process_normalization(p, max_weight);
  rep.table.header = {"weight", "stratum_mass", "partial_mass"};
  double acc = 0.0;
  for (std::size_t w = 0; w < r.stratum_mass.size(); ++w) {
    acc += r.stratum_mass[w];
    rep.table.add({std::to_string(w), fmt(r.stratum_mass[w]), fmt(acc)});
  }
  const std::string where = "n=" + std::to_string(n) + " q=" + std::to_string(ell.size()) + " param=" + fmt(a);
  rep.checks.push_back({"enumerated mass", where, r.mass, 1.0, 1.0 - min_mass, r.mass >= min_mass});
  const double total = r.mass + r.tail;
  rep.checks.push_back({"mass plus exact tail", where, total, 1.0, 1e-9, std::abs(total - 1.0) <= 1e-9});
  return rep;
}

}  // namespace perclab
