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

#include "textrait/kernels.hpp"

namespace textrait::kernels::detail {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void topic_weights(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                   const std::int32_t* topic_total, double alpha, double beta, double vbeta,
                   double* out, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) {
    const double a = static_cast<double>(doc_topic[i]) + alpha;
    const double b = static_cast<double>(word_topic[i]) + beta;
    const double c = static_cast<double>(topic_total[i]) + vbeta;
    out[i] = a * b / c;
  }
}

}  // namespace

const Table& scalar_table() {
  static const Table table{&dot, &axpy, &scale, &topic_weights};
  return table;
}

}  // namespace textrait::kernels::detail
