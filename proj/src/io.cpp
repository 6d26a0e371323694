#include "maxcov/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace maxcov {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view field, std::size_t line, const char* name) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw DataError(std::string("field ") + name + " is not a number: '" + std::string(field) +
                        "'",
                    line);
  }
  return v;
}

void check_point(const WeightedPoint& p, std::size_t line) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DataError("non-finite coordinate", line);
  if (!std::isfinite(p.w) || p.w < 0.0) throw DataError("weight must be finite and >= 0", line);
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  for (std::size_t k = 0; k < offset; ++k) {
    if (text[k] == '\n') ++line;
  }
  return line;
}

}  // namespace

std::vector<WeightedPoint> parse_points_csv(std::string_view text) {
  std::vector<WeightedPoint> out;
  std::size_t line = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view row = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line;
    row = trim(row);
    if (row.empty()) continue;
    if (!header_seen) {
      std::string compact;
      for (const char c : row) {
        if (c != ' ' && c != '\t') compact += c;
      }
      if (compact != "x,y,w") throw DataError("expected header 'x,y,w'", line);
      header_seen = true;
      continue;
    }
    std::string_view fields[3];
    std::size_t count = 0;
    std::string_view rest = row;
    for (;;) {
      const auto comma = rest.find(',');
      if (count == 3) throw DataError("expected 3 fields", line);
      fields[count++] = rest.substr(0, comma);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (count != 3) throw DataError("expected 3 fields", line);
    WeightedPoint p{parse_number(fields[0], line, "x"), parse_number(fields[1], line, "y"),
                    parse_number(fields[2], line, "w")};
    check_point(p, line);
    out.push_back(p);
  }
  return out;
}

std::vector<WeightedPoint> parse_points_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what(), line_of_offset(text, e.byte));
  }
  if (!doc.is_array()) throw DataError("expected an array of points", 1);
  std::vector<WeightedPoint> out;
  out.reserve(doc.size());
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const auto& rec = doc[k];
    auto field = [&](const char* name) {
      if (!rec.is_object() || !rec.contains(name) || !rec[name].is_number()) {
        throw DataError("record " + std::to_string(k) + " needs numeric '" + name + "'", 0);
      }
      return rec[name].get<double>();
    };
    WeightedPoint p{field("x"), field("y"), field("w")};
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !(p.w >= 0.0)) {
      throw DataError("record " + std::to_string(k) + " is out of range", 0);
    }
    out.push_back(p);
  }
  return out;
}

std::vector<WeightedPoint> parse_points(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') return parse_points_json(text);
  return parse_points_csv(text);
}

std::vector<WeightedPoint> read_points(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_points(buf.str());
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

void write_points_csv(std::ostream& out, std::span<const WeightedPoint> points) {
  out << "x,y,w\n";
  for (const auto& p : points) {
    out << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.w) << '\n';
  }
}

std::string report_to_json(const SolveReport& r, bool with_timings) {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["epsilon"] = r.requested_epsilon;
  doc["effective_epsilon"] = r.effective_epsilon;
  doc["m"] = r.m;
  doc["width"] = r.shape.a;
  doc["height"] = r.shape.b;
  doc["points"] = r.point_count;
  auto& places = doc["placements"] = nlohmann::ordered_json::array();
  for (const auto& p : r.placements) places.push_back({{"x", p.x}, {"y", p.y}});
  doc["weight"] = r.weight;
  doc["verified_weight"] = r.verified_weight;
  doc["estimate"] = r.estimate;
  if (r.grid_shift) {
    doc["grid_shift"] = {
        {"delta", r.grid_shift->delta}, {"ax", r.grid_shift->ax}, {"ay", r.grid_shift->ay}};
  } else {
    doc["grid_shift"] = nullptr;
  }
  doc["stats"] = {{"grids", r.stats.grids},
                  {"cells", r.stats.cells},
                  {"exact_cells", r.stats.exact_cells},
                  {"partitioned_cells", r.stats.partitioned_cells},
                  {"selected_cells", r.stats.selected_cells},
                  {"used_greedy", r.stats.used_greedy}};
  if (with_timings) {
    auto& t = doc["timings"] = nlohmann::ordered_json::object();
    for (const auto& [name, secs] : r.timings) t[name] = secs;
  }
  return doc.dump(2) + "\n";
}

SolveReport report_from_json(std::string_view text) {
  SolveReport r;
  try {
    const auto doc = nlohmann::json::parse(text.begin(), text.end());
    if (doc.at("schema").get<int>() != 1) throw DataError("unsupported schema", 0);
    r.requested_epsilon = doc.at("epsilon").get<double>();
    r.effective_epsilon = doc.at("effective_epsilon").get<double>();
    r.m = doc.at("m").get<std::size_t>();
    r.shape = {doc.at("width").get<double>(), doc.at("height").get<double>()};
    r.point_count = doc.at("points").get<std::size_t>();
    for (const auto& p : doc.at("placements")) {
      r.placements.push_back({p.at("x").get<double>(), p.at("y").get<double>()});
    }
    r.weight = doc.at("weight").get<double>();
    r.verified_weight = doc.at("verified_weight").get<double>();
    r.estimate = doc.at("estimate").get<double>();
    if (const auto& g = doc.at("grid_shift"); !g.is_null()) {
      r.grid_shift = GridSpec{g.at("delta").get<double>(), g.at("ax").get<double>(),
                              g.at("ay").get<double>()};
    }
    const auto& s = doc.at("stats");
    r.stats.grids = s.at("grids").get<std::size_t>();
    r.stats.cells = s.at("cells").get<std::size_t>();
    r.stats.exact_cells = s.at("exact_cells").get<std::size_t>();
    r.stats.partitioned_cells = s.at("partitioned_cells").get<std::size_t>();
    r.stats.selected_cells = s.at("selected_cells").get<std::size_t>();
    r.stats.used_greedy = s.at("used_greedy").get<bool>();
    if (doc.contains("timings")) {
      for (const auto& [name, secs] : doc["timings"].items()) {
        r.timings.emplace_back(name, secs.get<double>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad solve report: ") + e.what(), 0);
  }
  return r;
}

void write_svg(std::ostream& out, std::span<const WeightedPoint> points,
               std::span<const Placement> placements, const RectShape& shape) {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  bool first = true;
  auto grow = [&](double xa, double ya, double xb, double yb) {
    if (first) {
      x0 = xa, y0 = ya, x1 = xb, y1 = yb;
      first = false;
      return;
    }
    x0 = std::min(x0, xa), y0 = std::min(y0, ya);
    x1 = std::max(x1, xb), y1 = std::max(y1, yb);
  };
  double wmax = 0.0;
  for (const auto& p : points) {
    grow(p.x, p.y, p.x, p.y);
    wmax = std::max(wmax, p.w);
  }
  for (const auto& p : placements) grow(p.x, p.y, p.x + shape.a, p.y + shape.b);
  const double span = std::max({x1 - x0, y1 - y0, 1e-9});
  const double pad = 0.05 * span;
  const double scale = 800.0 / (span + 2 * pad);
  auto sx = [&](double x) { return (x - x0 + pad) * scale; };
  auto sy = [&](double y) { return (y1 - y + pad) * scale; };  // y up

  const double width = (x1 - x0 + 2 * pad) * scale;
  const double height = (y1 - y0 + 2 * pad) * scale;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(width)
      << "\" height=\"" << format_double(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& p : points) {
    const double r = wmax > 0.0 ? 1.0 + 5.0 * std::sqrt(p.w / wmax) : 1.5;
    out << "<circle cx=\"" << format_double(sx(p.x)) << "\" cy=\"" << format_double(sy(p.y))
        << "\" r=\"" << format_double(r) << "\" fill=\"steelblue\" fill-opacity=\"0.6\"/>\n";
  }
  for (const auto& p : placements) {
    out << "<rect x=\"" << format_double(sx(p.x)) << "\" y=\"" << format_double(sy(p.y + shape.b))
        << "\" width=\"" << format_double(shape.a * scale) << "\" height=\""
        << format_double(shape.b * scale)
        << "\" fill=\"none\" stroke=\"crimson\" stroke-width=\"2\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace maxcov
