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

#pragma once

// Data-parallel inner loops shared by the embedding, paragraph-vector and
// topic-model code. Every kernel has a scalar reference implementation and,
// where the build target allows it, an AVX2 (x86-64) or NEON (AArch64)
// variant. The variant is chosen once at startup from CPU features and can
// be pinned with the TEXTRAIT_ISA environment variable (`scalar`, `avx2`,
// `neon`) or set_isa().
//
// Elementwise kernels (axpy, scale, topic_weights) produce bitwise-identical
// results across variants: no variant uses fused multiply-add. Reductions
// (dot) differ only by summation order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace textrait::kernels {

enum class Isa { scalar, avx2, neon };

struct Table {
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // x[i] *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
  // out[k] = (doc_topic[k] + alpha) * (word_topic[k] + beta) / (topic_total[k] + vbeta)
  // The collapsed Gibbs full conditional, unnormalized.
  void (*topic_weights)(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                        const std::int32_t* topic_total, double alpha, double beta,
                        double vbeta, double* out, std::size_t k);
};

bool isa_available(Isa isa);
std::string_view isa_name(Isa isa);

// Kernel table for a specific variant; throws UsageError when the variant is
// not compiled in or not supported by this CPU.
const Table& table_for(Isa isa);

Isa active_isa();
// Process-wide switch. Not thread-safe against concurrent kernel calls.
void set_isa(Isa isa);
const Table& active();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void scale(double alpha, std::span<double> x) {
  active().scale(alpha, x.data(), x.size());
}

namespace detail {
const Table& scalar_table();
const Table* avx2_table();  // nullptr when not compiled in
const Table* neon_table();
}  // namespace detail

}  // namespace textrait::kernels
