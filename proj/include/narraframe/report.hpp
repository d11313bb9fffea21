// Copyright 2026 The Narraframe Authors.
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

#ifndef NARRAFRAME_REPORT_HPP_
#define NARRAFRAME_REPORT_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "narraframe/umap.hpp"

namespace narraframe {

// Fixed-point with `decimals` digits; "-0.000000" is printed as "0.000000".
std::string format_fixed(double value, int decimals = 6);

// Replaces tabs, CR and LF so the value fits in one TSV cell.
std::string tsv_cell(std::string_view value);

// Header line plus rows, tab-separated, LF line endings.
std::string tsv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

// Writes bytes as-is; throws IoError on failure.
void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

std::string xml_escape(std::string_view text);

// Standalone SVG scatter plot: one circle per point filled by cluster
// (clusters may be empty for a single color) and one text label per point.
// Coordinates are printed with 6 decimals. Throws Error on empty input.
std::string scatter_svg(const std::vector<std::string>& labels,
                        const Eigen::Matrix<double, Eigen::Dynamic, 2>& coords,
                        const std::vector<int>& clusters, std::string_view title = {});

void emit_scatter_svg(const Projection<double>& points, const std::vector<int>& clusters,
                      const std::filesystem::path& path, std::string_view title = {});

}  // namespace narraframe

#endif  // NARRAFRAME_REPORT_HPP_
