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

// AArch64 Advanced SIMD variants. Only compiled on AArch64 targets, where
// NEON is part of the base ISA. Multiply and add stay separate (no vfmaq)
// so elementwise results match the scalar reference bit for bit.

#include <arm_neon.h>

#include "textrait/kernels.hpp"

namespace textrait::kernels::detail {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    acc1 = vaddq_f64(acc1, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

void topic_weights(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                   const std::int32_t* topic_total, double alpha, double beta, double vbeta,
                   double* out, std::size_t k) {
  const float64x2_t va = vdupq_n_f64(alpha);
  const float64x2_t vb = vdupq_n_f64(beta);
  const float64x2_t vv = vdupq_n_f64(vbeta);
  std::size_t i = 0;
  for (; i + 2 <= k; i += 2) {
    const float64x2_t a = vaddq_f64(vcvtq_f64_s64(vmovl_s32(vld1_s32(doc_topic + i))), va);
    const float64x2_t b = vaddq_f64(vcvtq_f64_s64(vmovl_s32(vld1_s32(word_topic + i))), vb);
    const float64x2_t c = vaddq_f64(vcvtq_f64_s64(vmovl_s32(vld1_s32(topic_total + i))), vv);
    vst1q_f64(out + i, vdivq_f64(vmulq_f64(a, b), c));
  }
  for (; i < k; ++i) {
    const double a = static_cast<double>(doc_topic[i]) + alpha;
    const double b = static_cast<double>(word_topic[i]) + beta;
    const double c = static_cast<double>(topic_total[i]) + vbeta;
    out[i] = a * b / c;
  }
}

}  // namespace

const Table* neon_table() {
  static const Table table{&dot, &axpy, &scale, &topic_weights};
  return &table;
}

}  // namespace textrait::kernels::detail
