// Copyright 2026 The GAM Authors.
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

#ifndef GAM_FORMAT_HPP_
#define GAM_FORMAT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gam {

// Fixed textual forms used by every writer so that outputs are
// byte-identical across runs.
std::string fmt_g9(double v);                      // %.9g
std::string fmt_fixed(double v, int decimals);     // %.<n>f
std::string fmt_opt(const std::optional<double>& v);  // empty when missing

// Rounds to 9 significant digits (for JSON emission).
double round_g9(double v);

// Strict numeric parsing of a whole field; nullopt on any trailing junk.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

std::string_view trim(std::string_view s);

// Splits one CSV line on commas. Quoting is not part of any format here.
std::vector<std::string_view> split_csv(std::string_view line);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

}  // namespace gam

#endif  // GAM_FORMAT_HPP_
