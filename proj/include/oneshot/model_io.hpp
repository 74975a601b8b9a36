// Copyright 2026 The oneshot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ONESHOT_MODEL_IO_HPP_
#define ONESHOT_MODEL_IO_HPP_

#include <string>
#include <string_view>
#include <variant>

#include "oneshot/quantum_model.hpp"

namespace oneshot {

using Model = std::variant<CQChannel, DensityOperator, KrausChannel, Precoder>;

// Throws ParseError on malformed text and ValidationError when a model
// invariant fails; both messages carry the offending entry path.
Model parse_model(std::string_view text);
Model load_model(const std::string& path);

std::string serialize_model(const Model& model);

// Typed loaders; throw ValidationError when the file holds another kind.
CQChannel load_cq_channel(const std::string& path);
DensityOperator load_density(const std::string& path);
KrausChannel load_kraus_channel(const std::string& path);
Precoder load_precoder(const std::string& path);

}  // namespace oneshot

#endif  // ONESHOT_MODEL_IO_HPP_
