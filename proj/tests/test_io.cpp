#include <doctest.h>

#include "rdgap/errors.hpp"
#include "rdgap/format.hpp"
#include "rdgap/io.hpp"

using namespace rdgap;

TEST_CASE("grid parsing") {
  CHECK(parse_grid("0.25:0.25:0.25") == std::vector<double>{0.25});
  CHECK(parse_grid("1:3:1") == std::vector<double>{1, 2, 3});
  const auto g = parse_grid("0.005:0.995:0.005");
  REQUIRE(g.size() == 199);
  CHECK(g[0] == 0.005);
  CHECK(g[2] == 0.015);
  CHECK(g[198] == 0.995);
  CHECK(format_short(g[56]) == "0.285");
  CHECK_THROWS_AS(parse_grid("1:2"), InvalidArgument);
  CHECK_THROWS_AS(parse_grid("1:2:0"), InvalidArgument);
  CHECK_THROWS_AS(parse_grid("2:1:0.5"), InvalidArgument);
  CHECK_THROWS_AS(parse_grid("a:1:0.5"), InvalidArgument);
}

TEST_CASE("number formatting") {
  CHECK(format_short(1.0) == "1.0");
  CHECK(format_short(0.25) == "0.25");
  CHECK(format_short(-0.0) == "0.0");
  CHECK(format_short(3.0) == "3.0");
  CHECK(format_fixed(-1e-9, 6) == "0.000000");
  CHECK(format_fixed(0.1081234, 6) == "0.108123");
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  CHECK(csv_row({"x", "1,2", ""}) == "x,\"1,2\",\n");
}

TEST_CASE("svg output") {
  const Plot plot{"gap <max> & more", "x", "y", {{"series \"a\"", {0, 1, 2}, {0.0, 0.5, 0.25}}}};
  const std::string svg = render_svg(plot);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
  CHECK(svg.find("gap &lt;max&gt; &amp; more") != std::string::npos);
  CHECK(svg.find("series &quot;a&quot;") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("href") == std::string::npos);
  CHECK(svg.substr(svg.size() - 7) == "</svg>\n");
  CHECK(render_svg(plot) == svg);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
