// Copyright 2026 The idface Authors
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

#ifndef IDFACE_TEMPLATE_IO_HPP_
#define IDFACE_TEMPLATE_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "idface/transform.hpp"

namespace idface::transform {

// One template per line, comma-separated decimals printed with 17
// significant digits so values roundtrip exactly. Blank lines are skipped.
void write_templates(std::ostream& out, const std::vector<FeatureTemplate>& templates);
std::vector<FeatureTemplate> read_templates(std::istream& in);

void write_templates_file(const std::string& path, const std::vector<FeatureTemplate>& templates);
std::vector<FeatureTemplate> read_templates_file(const std::string& path);

// Ternary lines look like "1,-1,0,0".
std::string format_ternary(const TernaryTemplate& z);
TernaryTemplate parse_ternary(const std::string& line);

}  // namespace idface::transform

#endif  // IDFACE_TEMPLATE_IO_HPP_
