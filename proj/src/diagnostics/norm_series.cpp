#include "micropolar/norm_series.hpp"

#include <cmath>

#include "micropolar/errors.hpp"

namespace micropolar {

void NormSeries::append(double t, const std::map<std::string, double>& values) {
  if (!std::isfinite(t)) throw StructuralError("series time must be finite");
  if (!times_.empty() && !(t > times_.back())) {
    throw StructuralError("series times must be strictly increasing");
  }
  if (!times_.empty() && values.size() != columns_.size()) {
    throw StructuralError("series record has a different label set");
  }
  for (const auto& [label, v] : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw StructuralError("series value for '" + label + "' must be finite and nonnegative");
    }
    if (!times_.empty() && columns_.count(label) == 0) {
      throw StructuralError("series record introduces new label '" + label + "'");
    }
  }
  times_.push_back(t);
  for (const auto& [label, v] : values) columns_[label].push_back(v);
}

const std::vector<double>& NormSeries::column(const std::string& label) const {
  auto it = columns_.find(label);
  if (it == columns_.end()) throw StructuralError("series has no label '" + label + "'");
  return it->second;
}

std::vector<std::string> NormSeries::labels() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& [label, col] : columns_) out.push_back(label);
  return out;
}

std::string NormSeries::label(const std::string& quantity, int order) {
  return quantity + ":m=" + std::to_string(order);
}

}  // namespace micropolar
