/*
 * Copyright 2026 The textrait Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "textrait/features.hpp"

#include <algorithm>
#include <cmath>

#include "textrait/error.hpp"

namespace textrait {

double SparseVector::at(std::size_t i) const {
  auto it = std::lower_bound(index.begin(), index.end(), static_cast<std::uint32_t>(i));
  if (it == index.end() || *it != i) return 0.0;
  return value[static_cast<std::size_t>(it - index.begin())];
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> out(dim, 0.0);
  for (std::size_t k = 0; k < index.size(); ++k) out[index[k]] = value[k];
  return out;
}

FeatureMatrix FeatureMatrix::from_rows(std::span<const std::vector<double>> rows, std::size_t cols) {
  FeatureMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

FeatureMatrix FeatureMatrix::from_sparse_rows(std::span<const SparseVector> rows, std::size_t cols) {
  FeatureMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& v = rows[r];
    for (std::size_t k = 0; k < v.index.size(); ++k) {
      if (v.index[k] >= cols) throw InvariantError("sparse index out of range");
      m(r, v.index[k]) = v.value[k];
    }
  }
  return m;
}

std::vector<double> FeatureMatrix::row(std::size_t r) const {
  std::vector<double> out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = (*this)(r, c);
  return out;
}

void FeatureMatrix::set_row(std::size_t r, std::span<const double> values) {
  if (values.size() != cols_) {
    throw InvariantError("row width " + std::to_string(values.size()) + " != " + std::to_string(cols_));
  }
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = values[c];
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> rows) const {
  FeatureMatrix m(rows.size(), cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    for (std::size_t i = 0; i < rows.size(); ++i) m(i, c) = (*this)(rows[i], c);
  }
  return m;
}

bool FeatureMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace textrait
