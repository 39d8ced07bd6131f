// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

#include "infobid/linalg.hpp"

namespace infobid {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent sub-streams.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// A private stream keyed by (seed, key), e.g. (estimator seed, impression t).
inline Rng make_stream(std::uint64_t seed, std::uint64_t key = 0) {
  return Rng(mix64(mix64(seed) ^ mix64(key + 0x632be59bd9b4e019ULL)));
}

template <typename Scalar = double>
VectorX<Scalar> gaussian_vector(Eigen::Index n, Rng& rng) {
  std::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
  VectorX<Scalar> v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

// Uniform on the sphere of radius r via a normalized Gaussian draw.
template <typename Scalar = double>
VectorX<Scalar> sphere_vector(Eigen::Index n, Scalar radius, Rng& rng) {
  VectorX<Scalar> v = gaussian_vector<Scalar>(n, rng);
  Scalar norm = v.norm();
  while (norm == Scalar(0)) {
    v = gaussian_vector<Scalar>(n, rng);
    norm = v.norm();
  }
  return v * (radius / norm);
}

}  // namespace infobid
