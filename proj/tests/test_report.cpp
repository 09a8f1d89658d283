#include <random>
#include <regex>

#include "doctest.h"
#include "halfturn/report.hpp"

using namespace halfturn;

namespace {

// Minimal XML well-formedness: balanced tags, quoted attributes, one root.
bool well_formed_xml(const std::string& s) {
  std::vector<std::string> stack;
  std::size_t pos = 0;
  int roots = 0;
  while ((pos = s.find('<', pos)) != std::string::npos) {
    const std::size_t end = s.find('>', pos);
    if (end == std::string::npos) return false;
    std::string tag = s.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    std::size_t quotes = std::count(tag.begin(), tag.end(), '"');
    if (quotes % 2) return false;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const bool self_closing = tag.back() == '/';
    const std::string name = tag.substr(0, tag.find_first_of(" /"));
    if (stack.empty()) ++roots;
    if (!self_closing) stack.push_back(name);
  }
  return stack.empty() && roots == 1;
}

Report sample_report() {
  Report r;
  r.command = "enumerate regular";
  r.config = Json{{"precision_bits", 256}};
  r.timestamp = "2000-01-01T00:00:00Z";
  r.summary["candidates"] = 2;
  r.results.push_back(Json{{"N", 1}, {"rho", "√-2"}, {"field", "Q(√-2)"}, {"note", "a, \"b\""}});
  r.results.push_back(Json{{"N", 2}, {"rho", "-1/2 + √-3/2"}, {"field", "Q(√-3)"}, {"note", "x|y"}});
  r.columns = {{"N", "N"}, {"rho", "ρ"}, {"field", "Field"}};
  return r;
}

}  // namespace

TEST_CASE("json round trip") {
  const Report r = sample_report();
  const std::string text = emit_report(r, OutputFormat::json);
  const Report back = Report::from_json(Json::parse(text));
  CHECK(back.to_json() == r.to_json());
  CHECK(emit_report(back, OutputFormat::json) == text);
}

TEST_CASE("markdown layout") {
  const std::string md = emit_report(sample_report(), OutputFormat::markdown);
  CHECK(md.find("N | ρ | Field\n--- | --- | ---\n") != std::string::npos);
  CHECK(md.find("1 | √-2 | Q(√-2)") != std::string::npos);
  CHECK(md.find("2 | -1/2 + √-3/2 | Q(√-3)") != std::string::npos);
}

TEST_CASE("csv rows") {
  const std::string csv = emit_report(sample_report(), OutputFormat::csv);
  CHECK(csv.rfind("N,rho,field,note\n", 0) == 0);
  CHECK(csv.find("1,√-2,Q(√-2),\"a, \"\"b\"\"\"\n") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("empty reports are valid documents") {
  Report r;
  r.command = "relators search";
  for (OutputFormat f : {OutputFormat::json, OutputFormat::csv, OutputFormat::markdown, OutputFormat::text}) {
    const std::string s = emit_report(r, f);
    if (f == OutputFormat::json) {
      const Json j = Json::parse(s);
      CHECK(j.at("results").empty());
    }
    if (f == OutputFormat::csv) CHECK(s.empty());
  }
  Report md;
  md.command = "enumerate regular";
  md.columns = {{"N", "N"}, {"rho", "ρ"}, {"field", "Field"}};
  CHECK(emit_report(md, OutputFormat::markdown).find("N | ρ | Field") != std::string::npos);
}

TEST_CASE("format names") {
  CHECK(parse_output_format("md") == OutputFormat::markdown);
  CHECK(to_string(parse_output_format("csv")) == "csv");
  CHECK_THROWS_AS(parse_output_format("xml"), ParseError);
}

TEST_CASE("circle plots") {
  SUBCASE("regular -7 draws the annulus") {
    const std::string svg = plot_circles(build_regular(ComplexBall::from_int(-7, 0, 128)));
    CHECK(well_formed_xml(svg));
    CHECK(svg.find("fill-rule=\"evenodd\"") != std::string::npos);
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 5);
  }
  SUBCASE("crossing circles for -1/2 + sqrt(-3)/2") {
    const FieldPtr f = NumberField::parse("t^2+3");
    const HalfTurnTriple t = build_regular(Params::regular(FieldElement::parse(f, "(-1+t)/2")), 128);
    const std::string svg = plot_circles(t);
    CHECK(well_formed_xml(svg));
    // parse the three circles back and confirm two of them cross
    std::regex re("<circle cx=\"([-0-9.e]+)\" cy=\"([-0-9.e]+)\" r=\"([-0-9.e]+)\" fill=\"none\"");
    std::vector<std::array<double, 3>> c;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it)
      c.push_back({std::stod((*it)[1]), std::stod((*it)[2]), std::stod((*it)[3])});
    REQUIRE(c.size() == 3);
    bool cross = false;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const double d = std::hypot(c[i][0] - c[j][0], c[i][1] - c[j][1]);
        cross = cross || (std::abs(c[i][2] - c[j][2]) < d && d < c[i][2] + c[j][2]);
      }
    CHECK(cross);
  }
  SUBCASE("random parameters give well-formed SVG") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-8, 8);
    for (int k = 0; k < 10; ++k) {
      const Params p = Params::numeric(ComplexBall::from_double(u(rng), u(rng), 128),
                                       ComplexBall::from_double(u(rng), u(rng), 128),
                                       ComplexBall::from_double(u(rng), u(rng), 128));
      CHECK(well_formed_xml(plot_circles(build_representation(p, 128))));
    }
  }
  SUBCASE("viewport covers the outer circle with margin") {
    const std::string svg = plot_circles(build_regular(ComplexBall::from_int(-7, 0, 128)), {400, false});
    CHECK(svg.find("viewBox=\"0 0 400 400\"") != std::string::npos);
    CHECK(svg.find("evenodd") == std::string::npos);
  }
}
