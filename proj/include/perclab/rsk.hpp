#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "perclab/env.hpp"

namespace perclab {

// Weakly decreasing, trailing zeros trimmed.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  long long weight() const;
  // parts[i], zero past the length; i is 0-based.
  int operator[](int i) const { return i < length() ? parts_[i] : 0; }
  bool empty() const { return parts_.empty(); }
  // mu is contained in *this.
  bool contains(const Partition& mu) const;

  std::string to_string() const;  // "3,2,1"
  static Partition parse(const std::string& text);

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

// Semi-standard skew tableau: rows[i] holds the labels of row i + 1,
// occupying columns inner[i] + 1 .. inner[i] + rows[i].size().
class Tableau {
 public:
  Tableau() = default;
  Tableau(Partition inner, std::vector<std::vector<int>> rows);

  const Partition& inner() const { return inner_; }
  Partition outer() const;
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  bool straight() const { return inner_.empty(); }
  // type[a - 1] = number of labels equal to a, up to the largest label.
  std::vector<long long> type() const;
  int max_label() const;
  // Row/column strictness and shape validity.
  bool valid() const;

  void print(std::ostream& os) const;
  std::string to_string() const;

  friend bool operator==(const Tableau&, const Tableau&) = default;

 private:
  Partition inner_;
  std::vector<std::vector<int>> rows_;
};

// 1-based (row, column) positions.
using Path = std::vector<std::pair<int, int>>;

std::pair<Tableau, Path> row_insert(const Tableau& t, int value);
Tableau bounded_insert(const Tableau& t, int value, int bound);
Tableau erase_above(const Tableau& t, int k);

struct RskPair {
  Tableau P;
  Tableau Q;
};
// Row-major traversal; column index j is inserted A_ij times.
RskPair rsk_correspondence(const ClockArray& a);

bool restriction_commutes_check(const ClockArray& full, int k);
bool lambda1_equals_lpp_check(const ClockArray& a);

}  // namespace perclab
