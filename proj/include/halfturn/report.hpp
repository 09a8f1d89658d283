#pragma once

// Report documents for the command line tool, their serializations, and
// static SVG pictures of the invariant circles.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "halfturn/klein.hpp"
#include "halfturn/rep.hpp"

namespace halfturn {

using Json = nlohmann::ordered_json;

enum class OutputFormat { json, csv, markdown, text };
OutputFormat parse_output_format(const std::string& s);
std::string to_string(OutputFormat f);

struct Report {
  std::string command;
  Json config = Json::object();
  std::string timestamp;            // excluded from determinism checks
  Json summary = Json::object();    // scalar facts about the run
  std::vector<Json> results;        // one object per item
  // Markdown table columns as (key, header); empty means every key.
  std::vector<std::pair<std::string, std::string>> columns;

  Json to_json() const;
  static Report from_json(const Json& j);
};

std::string emit_report(const Report& report, OutputFormat format);

// UTC time in ISO 8601.
std::string utc_timestamp();

struct PlotOptions {
  int size = 640;         // pixels
  bool draw_annulus = true;
};

// SVG with the three diameter circles, their fixed points, and for regular
// triples the annulus R1 <= |z| <= R2 that contains the third circle.
// Conjugates the triple when a circle passes through infinity (the annulus
// is then omitted since it refers to the original coordinates).
std::string plot_circles(const HalfTurnTriple& t, const PlotOptions& options = {});

}  // namespace halfturn
