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

#include "narraframe/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "narraframe/error.hpp"

namespace narraframe {

std::string format_fixed(double value, int decimals) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s(buf);
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string tsv_cell(std::string_view value) {
  std::string out(value);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::string tsv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out.push_back('\t');
      out += tsv_cell(cells[i]);
    }
    out.push_back('\n');
  };
  line(header);
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw Error("tsv_table: row width differs from header");
    line(row);
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default:
        // Control characters are not allowed in XML 1.0.
        if (static_cast<unsigned char>(c) >= 0x20 || c == '\t' || c == '\n') out.push_back(c);
    }
  }
  return out;
}

namespace {

constexpr const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
    "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939", "#8c6d31", "#843c39",
    "#7b4173", "#3182bd", "#e6550d", "#31a354", "#756bb1", "#636363",
};

}  // namespace

std::string scatter_svg(const std::vector<std::string>& labels,
                        const Eigen::Matrix<double, Eigen::Dynamic, 2>& coords,
                        const std::vector<int>& clusters, std::string_view title) {
  const Eigen::Index n = coords.rows();
  if (n == 0) throw Error("scatter_svg: nothing to plot");
  if (static_cast<Eigen::Index>(labels.size()) != n) throw Error("scatter_svg: label count mismatch");
  if (!clusters.empty() && static_cast<Eigen::Index>(clusters.size()) != n) {
    throw Error("scatter_svg: cluster count mismatch");
  }

  constexpr double kSize = 800.0;
  constexpr double kMargin = 60.0;
  const Eigen::Vector2d lo = coords.colwise().minCoeff();
  const Eigen::Vector2d hi = coords.colwise().maxCoeff();
  auto scale = [&](double v, int axis) {
    const double span = hi[axis] - lo[axis];
    const double t = span > 0 ? (v - lo[axis]) / span : 0.5;
    return axis == 0 ? kMargin + t * (kSize - 2 * kMargin)
                     : kSize - kMargin - t * (kSize - 2 * kMargin);
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"#ffffff\"/>\n";
  if (!title.empty()) {
    svg << "<text x=\"400.000000\" y=\"30.000000\" font-family=\"sans-serif\" font-size=\"18\" "
           "text-anchor=\"middle\">"
        << xml_escape(title) << "</text>\n";
  }
  constexpr size_t kColors = sizeof kPalette / sizeof kPalette[0];
  for (Eigen::Index i = 0; i < n; ++i) {
    const int c = clusters.empty() ? 0 : clusters[static_cast<size_t>(i)];
    const char* fill = kPalette[static_cast<size_t>(c < 0 ? 0 : c) % kColors];
    const std::string x = format_fixed(scale(coords(i, 0), 0));
    const std::string y = format_fixed(scale(coords(i, 1), 1));
    svg << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"5\" fill=\"" << fill
        << "\" fill-opacity=\"0.8\"/>\n";
    svg << "<text x=\"" << format_fixed(scale(coords(i, 0), 0) + 7.0) << "\" y=\"" << y
        << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << xml_escape(labels[static_cast<size_t>(i)]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_scatter_svg(const Projection<double>& points, const std::vector<int>& clusters,
                      const std::filesystem::path& path, std::string_view title) {
  write_file(path, scatter_svg(points.labels, points.coords, clusters, title));
}

}  // namespace narraframe
