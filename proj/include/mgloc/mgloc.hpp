// Copyright 2026 The mgloc Authors
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

#ifndef MGLOC_MGLOC_HPP
#define MGLOC_MGLOC_HPP

#include "mgloc/analysis.hpp"
#include "mgloc/errors.hpp"
#include "mgloc/evolution.hpp"
#include "mgloc/linalg.hpp"
#include "mgloc/majorana.hpp"
#include "mgloc/parallel.hpp"
#include "mgloc/scrambling.hpp"
#include "mgloc/truncation.hpp"

namespace mgloc {

inline constexpr const char *kVersion = "0.1.0";

}  // namespace mgloc

#endif  // MGLOC_MGLOC_HPP
