#include "halfturn/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "halfturn/errors.hpp"

namespace halfturn {

OutputFormat parse_output_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  if (s == "markdown" || s == "md") return OutputFormat::markdown;
  if (s == "text") return OutputFormat::text;
  throw ParseError("unknown output format '" + s + "'");
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::markdown: return "markdown";
    case OutputFormat::text: return "text";
  }
  return "json";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

Json Report::to_json() const {
  Json j;
  j["command"] = command;
  j["config"] = config;
  j["timestamp"] = timestamp;
  j["summary"] = summary;
  j["results"] = Json::array();
  for (const auto& r : results) j["results"].push_back(r);
  if (!columns.empty()) {
    Json cols = Json::array();
    for (const auto& [k, h] : columns) cols.push_back(Json::array({k, h}));
    j["columns"] = cols;
  }
  return j;
}

Report Report::from_json(const Json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.config = j.at("config");
  r.timestamp = j.at("timestamp").get<std::string>();
  r.summary = j.at("summary");
  for (const auto& x : j.at("results")) r.results.push_back(x);
  if (j.contains("columns"))
    for (const auto& c : j.at("columns")) r.columns.emplace_back(c.at(0).get<std::string>(), c.at(1).get<std::string>());
  return r;
}

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string md_cell(std::string s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|') out += '\\';
    if (ch == '\n') {
      out += ' ';
      continue;
    }
    out += ch;
  }
  return out;
}

std::vector<std::string> all_keys(const std::vector<Json>& rows) {
  std::vector<std::string> keys;
  for (const auto& r : rows) {
    if (!r.is_object()) continue;
    for (auto it = r.begin(); it != r.end(); ++it)
      if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) keys.push_back(it.key());
  }
  return keys;
}

}  // namespace

std::string emit_report(const Report& report, OutputFormat format) {
  std::ostringstream out;
  switch (format) {
    case OutputFormat::json:
      out << report.to_json().dump(2) << "\n";
      break;
    case OutputFormat::csv: {
      const auto keys = all_keys(report.results);
      for (std::size_t k = 0; k < keys.size(); ++k) out << (k ? "," : "") << csv_cell(keys[k]);
      if (!keys.empty()) out << "\n";
      for (const auto& r : report.results) {
        for (std::size_t k = 0; k < keys.size(); ++k) {
          const Json v = r.is_object() && r.contains(keys[k]) ? r.at(keys[k]) : Json();
          out << (k ? "," : "") << csv_cell(scalar_text(v));
        }
        out << "\n";
      }
      break;
    }
    case OutputFormat::markdown: {
      out << "# " << report.command << "\n\n";
      for (auto it = report.summary.begin(); it != report.summary.end(); ++it)
        out << "- " << it.key() << ": " << md_cell(scalar_text(it.value())) << "\n";
      if (!report.summary.empty()) out << "\n";
      std::vector<std::pair<std::string, std::string>> cols = report.columns;
      if (cols.empty())
        for (const auto& k : all_keys(report.results)) cols.emplace_back(k, k);
      if (!cols.empty()) {
        std::string head, rule;
        for (std::size_t k = 0; k < cols.size(); ++k) {
          head += (k ? " | " : "") + cols[k].second;
          rule += (k ? " | " : "") + std::string("---");
        }
        out << head << "\n" << rule << "\n";
        for (const auto& r : report.results) {
          for (std::size_t k = 0; k < cols.size(); ++k) {
            const Json v = r.is_object() && r.contains(cols[k].first) ? r.at(cols[k].first) : Json();
            out << (k ? " | " : "") << md_cell(scalar_text(v));
          }
          out << "\n";
        }
      }
      break;
    }
    case OutputFormat::text: {
      out << report.command << "\n";
      for (auto it = report.summary.begin(); it != report.summary.end(); ++it)
        out << "  " << it.key() << ": " << scalar_text(it.value()) << "\n";
      for (std::size_t n = 0; n < report.results.size(); ++n) {
        out << "[" << n + 1 << "]";
        const Json& r = report.results[n];
        if (r.is_object()) {
          for (auto it = r.begin(); it != r.end(); ++it) out << " " << it.key() << "=" << scalar_text(it.value());
        } else {
          out << " " << scalar_text(r);
        }
        out << "\n";
      }
      break;
    }
  }
  return out.str();
}

// ------------------------------------------------------------------- SVG

namespace {

struct Disk {
  double cx, cy, r;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

}  // namespace

std::string plot_circles(const HalfTurnTriple& triple, const PlotOptions& options) {
  auto through_infinity = [](const HalfTurnTriple& t) {
    return t.A.m21.contains_zero() || t.B.m21.contains_zero() || t.C.m21.contains_zero();
  };
  HalfTurnTriple t = triple;
  bool conjugated = false;
  if (through_infinity(t)) {
    bool found = false;
    for (const Rational& s : {Rational(1, 3), Rational(-2, 5), Rational(3, 7), Rational(-5, 11)}) {
      HalfTurnTriple c = conjugate_lower(triple, ComplexBall::from_rational(s, Rational(1, 7), t.precision()));
      if (!through_infinity(c)) {
        t = std::move(c);
        found = true;
        break;
      }
    }
    if (!found) throw DegenerateCircle("cannot move the circles off infinity");
    conjugated = true;
  }
  const std::array<const LineMatrix*, 3> mats{&t.A, &t.B, &t.C};
  std::array<Disk, 3> disks{};
  std::vector<std::pair<double, double>> points;
  for (std::size_t k = 0; k < 3; ++k) {
    const GeneralizedCircle g = diameter_circle(*mats[k]);
    disks[k] = {g.center.mid_re().to_double(), g.center.mid_im().to_double(), g.radius.approx()};
    for (const auto& p : fixed_points(*mats[k]))
      if (!p.infinite) points.emplace_back(p.z.mid_re().to_double(), p.z.mid_im().to_double());
  }
  std::optional<std::pair<double, double>> annulus;
  if (t.regular && !conjugated && options.draw_annulus) {
    const RealBall b = t.beta.abs();
    if ((b - RealBall::from_int(1, b.precision())).certainly_positive()) {
      const AnnulusBounds ab = annulus_bounds(b);
      annulus = std::pair{std::max(0.0, ab.r1.approx()), ab.r2.approx()};
    }
  }
  // viewport: 1.2 times the smallest disk about the origin holding everything
  double extent = 0;
  for (const auto& d : disks) extent = std::max(extent, std::hypot(d.cx, d.cy) + d.r);
  if (annulus) extent = std::max(extent, annulus->second);
  extent = extent > 0 ? 1.2 * extent : 1;
  const double scale = options.size / (2 * extent);
  auto X = [&](double x) { return (x + extent) * scale; };
  auto Y = [&](double y) { return (extent - y) * scale; };

  std::ostringstream svg;
  const std::string sz = std::to_string(options.size);
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << sz << "\" height=\"" << sz
      << "\" viewBox=\"0 0 " << sz << " " << sz << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (annulus) {
    const double cx = X(0), cy = Y(0), r1 = annulus->first * scale, r2 = annulus->second * scale;
    svg << "  <path fill=\"#dde6f5\" fill-rule=\"evenodd\" stroke=\"#8aa0c8\" stroke-dasharray=\"4 3\" d=\""
        << "M " << fmt(cx + r2) << " " << fmt(cy) << " A " << fmt(r2) << " " << fmt(r2) << " 0 1 0 "
        << fmt(cx - r2) << " " << fmt(cy) << " A " << fmt(r2) << " " << fmt(r2) << " 0 1 0 " << fmt(cx + r2)
        << " " << fmt(cy) << " Z ";
    if (r1 > 0)
      svg << "M " << fmt(cx + r1) << " " << fmt(cy) << " A " << fmt(r1) << " " << fmt(r1) << " 0 1 0 "
          << fmt(cx - r1) << " " << fmt(cy) << " A " << fmt(r1) << " " << fmt(r1) << " 0 1 0 "
          << fmt(cx + r1) << " " << fmt(cy) << " Z";
    svg << "\"/>\n";
  }
  svg << "  <line x1=\"0\" y1=\"" << fmt(Y(0)) << "\" x2=\"" << sz << "\" y2=\"" << fmt(Y(0))
      << "\" stroke=\"#cccccc\"/>\n"
      << "  <line x1=\"" << fmt(X(0)) << "\" y1=\"0\" x2=\"" << fmt(X(0)) << "\" y2=\"" << sz
      << "\" stroke=\"#cccccc\"/>\n";
  const char* colors[] = {"#c0392b", "#27ae60", "#2c3e80"};
  const char* names[] = {"A", "B", "C"};
  for (std::size_t k = 0; k < 3; ++k) {
    svg << "  <circle cx=\"" << fmt(X(disks[k].cx)) << "\" cy=\"" << fmt(Y(disks[k].cy)) << "\" r=\""
        << fmt(disks[k].r * scale) << "\" fill=\"none\" stroke=\"" << colors[k] << "\" stroke-width=\"1.5\"/>\n";
    svg << "  <text x=\"" << fmt(X(disks[k].cx + disks[k].r * 0.71)) << "\" y=\""
        << fmt(Y(disks[k].cy + disks[k].r * 0.71)) << "\" font-size=\"12\" fill=\"" << colors[k] << "\">"
        << names[k] << "</text>\n";
  }
  for (const auto& [x, y] : points)
    svg << "  <circle cx=\"" << fmt(X(x)) << "\" cy=\"" << fmt(Y(y)) << "\" r=\"2.5\" fill=\"black\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace halfturn
