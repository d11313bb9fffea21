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

#include <set>
#include <sstream>
#include <string>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "doctest.h"
#include "narraframe/error.hpp"
#include "narraframe/report.hpp"
#include "support.hpp"

using namespace narraframe;

namespace {

int occurrences(const std::string& s, const std::string& needle) {
  int n = 0;
  for (size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("fixed formatting") {
    CHECK(format_fixed(1.0) == "1.000000");
    CHECK(format_fixed(-0.0) == "0.000000");
    CHECK(format_fixed(-1e-9) == "0.000000");
    CHECK(format_fixed(0.4395, 2) == "0.44");
    CHECK(format_fixed(-2.5, 1) == "-2.5");
  }

  TEST_CASE("tsv table") {
    CHECK(tsv_table({"a", "b"}, {{"1", "x y"}, {"2", "tab\there"}}) == "a\tb\n1\tx y\n2\ttab here\n");
    CHECK(tsv_cell("line\nbreak") == "line break");
    CHECK_THROWS_AS(tsv_table({"a", "b"}, {{"1"}}), Error);
  }

  TEST_CASE("hashing") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(hex64(0xaf63dc4c8601ec8cULL) == "af63dc4c8601ec8c");
    CHECK(hex64(1) == "0000000000000001");
  }

  TEST_CASE("xml escaping") {
    CHECK(xml_escape("a<b & \"c\" > 'd'") == "a&lt;b &amp; &quot;c&quot; &gt; &apos;d&apos;");
  }

  TEST_CASE("scatter plot") {
    Eigen::Matrix<double, Eigen::Dynamic, 2> xy(3, 2);
    xy << 0, 0, 1, 2, -1, 0.5;
    const std::string svg = scatter_svg({"save", "lives & <jobs>", "stop"}, xy, {0, 1, 0}, "verbs");
    CHECK(occurrences(svg, "<circle") == 3);
    std::set<std::string> fills;
    for (size_t p = svg.find("<circle"); p != std::string::npos; p = svg.find("<circle", p + 1)) {
      const size_t f = svg.find("fill=\"", p) + 6;
      fills.insert(svg.substr(f, svg.find('"', f) - f));
    }
    CHECK(fills.size() == 2);
    std::istringstream in(svg);
    boost::property_tree::ptree tree;
    CHECK_NOTHROW(boost::property_tree::read_xml(in, tree));
    CHECK(tree.count("svg") == 1);
    CHECK(svg == scatter_svg({"save", "lives & <jobs>", "stop"}, xy, {0, 1, 0}, "verbs"));

    CHECK_THROWS_AS(scatter_svg({}, Eigen::Matrix<double, Eigen::Dynamic, 2>(0, 2), {}), Error);
    CHECK_THROWS_AS(scatter_svg({"a"}, xy, {0, 1, 0}), Error);
    CHECK_THROWS_AS(scatter_svg({"a", "b", "c"}, xy, {0}), Error);
  }

  TEST_CASE("file helpers") {
    const auto path = test::scratch("report") / "out.txt";
    write_file(path, "hello\n");
    CHECK(read_file(path) == "hello\n");
    CHECK_THROWS_AS(read_file(path.parent_path() / "missing.txt"), IoError);
  }
}
