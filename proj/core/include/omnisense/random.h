/* Copyright 2026 The OmniSense Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef OMNISENSE_RANDOM_H_
#define OMNISENSE_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace omnisense {

// Sequential generator. Only the raw mt19937_64 stream is used (its output is
// fixed by the standard); every derived distribution is implemented here so
// results do not depend on the standard library vendor.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  double normal();
  int poisson(double mean);
  // Number of Bernoulli(p) trials up to and including the first success.
  int geometric(double p);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Counter-based uniform in [0, 1): a pure function of the key tuple. Used
// where draws must line up across runs that visit objects in different
// orders.
double keyed_uniform(std::initializer_list<std::uint64_t> key);

}  // namespace omnisense

#endif  // OMNISENSE_RANDOM_H_
