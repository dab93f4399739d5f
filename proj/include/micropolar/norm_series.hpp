#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace micropolar {

/// Time series of nonnegative diagnostics keyed by label ("u:m=0", "energy", ...).
///
/// Every record carries the same label set, fixed by the first record. Labels
/// iterate in lexicographic order.
class NormSeries {
 public:
  /// Append one record. Throws StructuralError if `t` does not increase, the
  /// label set differs from earlier records, or a value is negative or non-finite.
  void append(double t, const std::map<std::string, double>& values);

  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }
  const std::vector<double>& times() const noexcept { return times_; }

  bool has(const std::string& label) const { return columns_.count(label) != 0; }
  /// Column for `label`; StructuralError if absent.
  const std::vector<double>& column(const std::string& label) const;
  std::vector<std::string> labels() const;

  /// Label helpers, e.g. label("u", 1) == "u:m=1".
  static std::string label(const std::string& quantity, int order);

 private:
  std::vector<double> times_;
  std::map<std::string, std::vector<double>> columns_;
};

}  // namespace micropolar
