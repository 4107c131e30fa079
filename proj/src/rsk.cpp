#include "perclab/rsk.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace perclab {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw std::invalid_argument("Partition: negative part");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("Partition: parts must be weakly decreasing");
  }
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

long long Partition::weight() const {
  long long w = 0;
  for (int p : parts_) w += p;
  return w;
}

bool Partition::contains(const Partition& mu) const {
  if (mu.length() > length()) return false;
  for (int i = 0; i < mu.length(); ++i)
    if (mu[i] > parts_[i]) return false;
  return true;
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

Partition Partition::parse(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (tok.find_first_not_of(" \t", used) != std::string::npos)
      throw std::invalid_argument("Partition::parse: bad token '" + tok + "'");
    parts.push_back(v);
  }
  return Partition(std::move(parts));
}

Tableau::Tableau(Partition inner, std::vector<std::vector<int>> rows)
    : inner_(std::move(inner)), rows_(std::move(rows)) {
  while (!rows_.empty() && rows_.back().empty() && static_cast<int>(rows_.size()) > inner_.length())
    rows_.pop_back();
  if (!valid()) throw std::invalid_argument("Tableau: not a semi-standard skew tableau");
}

Partition Tableau::outer() const {
  const int r = std::max<int>(inner_.length(), static_cast<int>(rows_.size()));
  std::vector<int> parts(r);
  for (int i = 0; i < r; ++i)
    parts[i] = inner_[i] + (i < static_cast<int>(rows_.size()) ? static_cast<int>(rows_[i].size()) : 0);
  return Partition(parts);
}

std::vector<long long> Tableau::type() const {
  std::vector<long long> t(max_label(), 0);
  for (const auto& row : rows_)
    for (int v : row) ++t[v - 1];
  return t;
}

int Tableau::max_label() const {
  int m = 0;
  for (const auto& row : rows_)
    for (int v : row) m = std::max(m, v);
  return m;
}

bool Tableau::valid() const {
  const int r = static_cast<int>(rows_.size());
  std::vector<int> outer(std::max(r, inner_.length()));
  for (int i = 0; i < static_cast<int>(outer.size()); ++i)
    outer[i] = inner_[i] + (i < r ? static_cast<int>(rows_[i].size()) : 0);
  for (std::size_t i = 1; i < outer.size(); ++i)
    if (outer[i] > outer[i - 1]) return false;
  for (int i = 0; i < r; ++i) {
    const auto& row = rows_[i];
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] < 1) return false;
      if (c > 0 && row[c] < row[c - 1]) return false;
      // cell above: row i - 1, same absolute column
      if (i > 0) {
        const int col = inner_[i] + static_cast<int>(c);
        const int above = col - inner_[i - 1];
        if (above >= 0 && above < static_cast<int>(rows_[i - 1].size()) && rows_[i - 1][above] >= row[c])
          return false;
      }
    }
  }
  return true;
}

void Tableau::print(std::ostream& os) const {
  const int r = std::max<int>(inner_.length(), static_cast<int>(rows_.size()));
  for (int i = 0; i < r; ++i) {
    bool first = true;
    for (int c = 0; c < inner_[i]; ++c) {
      os << (first ? "" : " ") << '.';
      first = false;
    }
    if (i < static_cast<int>(rows_.size()))
      for (int v : rows_[i]) {
        os << (first ? "" : " ") << v;
        first = false;
      }
    os << '\n';
  }
}

std::string Tableau::to_string() const {
  std::ostringstream os;
  print(os);
  return os.str();
}

namespace {

// Mutating insertion on raw rows; returns the bumping path.
Path insert_rows(std::vector<std::vector<int>>& rows, int value) {
  if (value < 1) throw std::invalid_argument("row_insert: labels must be positive");
  Path path;
  int x = value;
  for (std::size_t i = 0;; ++i) {
    if (i == rows.size()) rows.emplace_back();
    auto& row = rows[i];
    auto it = std::upper_bound(row.begin(), row.end(), x);
    const int col = static_cast<int>(it - row.begin()) + 1;
    path.emplace_back(static_cast<int>(i) + 1, col);
    if (it == row.end()) {
      row.push_back(x);
      return path;
    }
    std::swap(x, *it);
  }
}

void require_straight(const Tableau& t) {
  if (!t.straight()) throw std::invalid_argument("row_insert: tableau must have straight shape");
}

}  // namespace

std::pair<Tableau, Path> row_insert(const Tableau& t, int value) {
  require_straight(t);
  auto rows = t.rows();
  Path path = insert_rows(rows, value);
  return {Tableau(Partition(), std::move(rows)), std::move(path)};
}

Tableau bounded_insert(const Tableau& t, int value, int bound) {
  require_straight(t);
  if (value > bound) return t;
  return row_insert(t, value).first;
}

Tableau erase_above(const Tableau& t, int k) {
  std::vector<std::vector<int>> rows;
  for (const auto& row : t.rows()) {
    auto end = std::upper_bound(row.begin(), row.end(), k);
    rows.emplace_back(row.begin(), end);
  }
  return Tableau(t.inner(), std::move(rows));
}

RskPair rsk_correspondence(const ClockArray& a) {
  if (a.mode() != ClockMode::Geometric) throw std::invalid_argument("rsk_correspondence: array must be integer valued");
  std::vector<std::vector<int>> P, Q;
  for (int i = 1; i <= a.rows(); ++i)
    for (long long j = 1; j <= a.cols(); ++j) {
      const long long m = a.count(i, j);
      for (long long c = 0; c < m; ++c) {
        const Path path = insert_rows(P, static_cast<int>(j));
        const auto [r, col] = path.back();
        if (r > static_cast<int>(Q.size())) Q.emplace_back();
        Q[r - 1].push_back(i);
        (void)col;
      }
    }
  return {Tableau(Partition(), std::move(P)), Tableau(Partition(), std::move(Q))};
}

bool restriction_commutes_check(const ClockArray& full, int k) {
  if (k < 1 || k + 1 > full.block_count())
    throw std::out_of_range("restriction_commutes_check: block k + 1 not present");
  const Tableau small = rsk_correspondence(full.prefix(k)).P;
  const Tableau big = rsk_correspondence(full.prefix(k + 1)).P;
  return small == erase_above(big, static_cast<int>(full.block_end(k)));
}

bool lambda1_equals_lpp_check(const ClockArray& a) {
  const Partition shape = rsk_correspondence(a).P.outer();
  return static_cast<double>(shape[0]) == last_passage_time(a);
}

}  // namespace perclab
