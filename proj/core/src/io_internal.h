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

#ifndef OMNISENSE_SRC_IO_INTERNAL_H_
#define OMNISENSE_SRC_IO_INTERNAL_H_

#include <filesystem>
#include <string>

#include "json_util.h"
#include "omnisense/model_profile.h"
#include "omnisense/trace.h"

namespace omnisense::detail {

ModelSet model_set_from_json(const json& root, const std::string& path);
json model_set_to_json(const ModelSet& set);
TraceParams trace_params_from_json(const json& root, const std::string& path);
std::string read_file(const std::filesystem::path& path);

}  // namespace omnisense::detail

#endif  // OMNISENSE_SRC_IO_INTERNAL_H_
