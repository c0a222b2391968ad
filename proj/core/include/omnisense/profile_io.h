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

#ifndef OMNISENSE_PROFILE_IO_H_
#define OMNISENSE_PROFILE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "omnisense/model_profile.h"

namespace omnisense {

// Model-profile document (schema version 1):
//
//   {"version": 1, "categories": n,
//    "models": [{"name": ..., "input_side": 512, "placement": "remote",
//                "gav": [[small x n], [medium x n], [large x n]],
//                "infer_latency_s": ..., "projection_latency_s": {"512": ...},
//                "encode_latency_s": {"512": {"lossless": ..., ...}},
//                "bytes_per_pixel": {"lossless": 1.5, ...}}, ...]}
//
// The skip profile is implicit and becomes index 0; listed models take indices
// 1..m in order. Unknown fields, NaN and negative values are rejected with a
// ConfigError naming the field.
ModelSet parse_model_set(std::string_view json_text);
ModelSet load_model_set(const std::filesystem::path& path);
std::string serialize_model_set(const ModelSet& set);

}  // namespace omnisense

#endif  // OMNISENSE_PROFILE_IO_H_
