#include "qdisc/cli/artifacts.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "qdisc/errors.hpp"

namespace qdisc::cli {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " to " + path.string());
  }
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string points_csv(const grover::SampleRun& run) {
  std::ostringstream os;
  os << "index,x,y,retries,oracle_calls_cumulative\n";
  for (std::size_t i = 0; i < run.points.size(); ++i) {
    const auto& p = run.points[i];
    os << i << ',' << p.point.x << ',' << p.point.y << ',' << p.retries << ',' << p.oracle_calls_cumulative << '\n';
  }
  return os.str();
}

std::string stats_csv(const RunSummary& s) {
  std::ostringstream os;
  os << "backend,p_exact,p_estimate,R,shots,oracle_calls,mean_calls_per_point\n";
  os << grover::to_string(s.backend) << ',' << (s.p_exact ? format_double(*s.p_exact) : "") << ','
     << format_double(s.p_estimate) << ',' << s.iterations << ',' << s.stats.shots << ',' << s.stats.oracle_calls
     << ',' << format_double(s.stats.mean_calls_per_point) << '\n';
  return os.str();
}

namespace {

constexpr int kMargin = 20;

struct Frame {
  std::int64_t side;
  double px(std::int64_t x) const { return kMargin + static_cast<double>(kPixelsPerUnit * x); }
  double py(std::int64_t y) const { return kMargin + static_cast<double>(kPixelsPerUnit * (side - y)); }
};

std::string num(double v) { return format_double(v); }

}  // namespace

std::string scene_svg(const geo::Scene& scene, std::span<const geo::GridPoint> points) {
  const Frame f{scene.side()};
  const auto size = 2 * kMargin + kPixelsPerUnit * f.side;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
     << size << ' ' << size << "\">\n";
  os << "<rect class=\"workspace\" x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << size - 2 * kMargin
     << "\" height=\"" << size - 2 * kMargin << "\" fill=\"white\" stroke=\"black\"/>\n";
  os << "<g class=\"grid\" stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (std::int64_t i = 1; i < f.side; ++i) {
    os << "<line x1=\"" << num(f.px(i)) << "\" y1=\"" << num(f.py(0)) << "\" x2=\"" << num(f.px(i)) << "\" y2=\""
       << num(f.py(f.side)) << "\"/>\n";
    os << "<line x1=\"" << num(f.px(0)) << "\" y1=\"" << num(f.py(i)) << "\" x2=\"" << num(f.px(f.side))
       << "\" y2=\"" << num(f.py(i)) << "\"/>\n";
  }
  os << "</g>\n<g class=\"obstacles\" fill=\"#c0392b\" fill-opacity=\"0.4\" stroke=\"#c0392b\">\n";
  for (const auto& r : scene.rectangles)
    os << "<rect class=\"obstacle\" x=\"" << num(f.px(r.a1)) << "\" y=\"" << num(f.py(r.b2)) << "\" width=\""
       << kPixelsPerUnit * (r.a2 - r.a1) << "\" height=\"" << kPixelsPerUnit * (r.b2 - r.b1) << "\"/>\n";
  for (const auto& c : scene.circles)
    os << "<circle class=\"obstacle\" cx=\"" << num(f.px(c.c1)) << "\" cy=\"" << num(f.py(c.c2)) << "\" r=\""
       << kPixelsPerUnit * c.r << "\"/>\n";
  for (const auto& p : scene.polygons) {
    os << "<path class=\"obstacle\" d=\"";
    for (std::size_t i = 0; i < p.size(); ++i)
      os << (i == 0 ? "M " : " L ") << num(f.px(p.vertices[i].x)) << ' ' << num(f.py(p.vertices[i].y));
    os << " Z\"/>\n";
  }
  os << "</g>\n<g class=\"points\" fill=\"#1f4e9c\">\n";
  for (const auto& p : points)
    os << "<circle class=\"point\" cx=\"" << num(f.px(p.x)) << "\" cy=\"" << num(f.py(p.y)) << "\" r=\"3\"/>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string bench_csv(std::span<const grover::SweepRow> rows) {
  std::ostringstream os;
  os << "p,R,classical_empirical,quantum_empirical,classical_analytic,quantum_analytic\n";
  for (const auto& r : rows)
    os << format_double(r.p) << ',' << r.iterations << ',' << format_double(r.classical_mean_calls) << ','
       << format_double(r.quantum_mean_calls) << ',' << format_double(r.classical_analytic) << ','
       << format_double(r.quantum_analytic) << '\n';
  return os.str();
}

std::string bench_svg(std::span<const grover::SweepRow> input, std::uint64_t m) {
  std::vector<grover::SweepRow> rows(input.begin(), input.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
  constexpr double W = 640, H = 420, L = 70, R = 180, T = 30, B = 50;
  double lo = 0, hi = 1, top = static_cast<double>(m);
  if (!rows.empty()) {
    lo = std::log2(rows.front().p);
    hi = std::log2(rows.back().p);
    for (const auto& r : rows)
      top = std::max({top, r.classical_mean_calls, r.quantum_mean_calls, r.classical_analytic, r.quantum_analytic});
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  top *= 1.1;
  auto X = [&](double p) { return L + (std::log2(p) - lo) / (hi - lo) * (W - L - R); };
  auto Y = [&](double v) { return H - B - v / top * (H - T - B); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (const auto& r : rows)
    os << "<text x=\"" << num(X(r.p)) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << num(r.p)
       << "</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = top / 1.1 * i / 4;
    os << "<text x=\"" << L - 6 << "\" y=\"" << num(Y(v) + 4) << "\" text-anchor=\"end\">" << std::llround(v)
       << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">feasible fraction p (M = "
     << m << ")</text>\n";
  os << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" transform=\"rotate(-90 16 " << (T + H - B) / 2
     << ")\" text-anchor=\"middle\">oracle calls</text>\n";

  struct Series {
    const char* name;
    const char* color;
    const char* dash;
    double grover::SweepRow::*field;
  };
  const Series series[] = {
      {"classical empirical", "#c0392b", "", &grover::SweepRow::classical_mean_calls},
      {"quantum empirical", "#1f4e9c", "", &grover::SweepRow::quantum_mean_calls},
      {"classical M/p", "#c0392b", "6 4", &grover::SweepRow::classical_analytic},
      {"quantum (R+1)M", "#1f4e9c", "6 4", &grover::SweepRow::quantum_analytic},
  };
  int k = 0;
  for (const auto& s : series) {
    os << "<polyline class=\"series\" data-name=\"" << s.name << "\" fill=\"none\" stroke=\"" << s.color
       << "\" stroke-width=\"2\"" << (*s.dash ? std::string(" stroke-dasharray=\"") + s.dash + "\"" : "")
       << " points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i)
      os << (i ? " " : "") << num(X(rows[i].p)) << ',' << num(Y(rows[i].*s.field));
    os << "\"/>\n";
    const double ly = T + 10 + 20 * k++;
    os << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 40 << "\" y2=\"" << ly
       << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
       << (*s.dash ? std::string(" stroke-dasharray=\"") + s.dash + "\"" : "") << "/>\n";
    os << "<text x=\"" << W - R + 46 << "\" y=\"" << ly + 4 << "\">" << s.name << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string manifest_json(const Manifest& m) {
  nlohmann::ordered_json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["command"] = m.command;
  if (!m.backend.empty()) doc["backend"] = m.backend;
  doc["seed"] = m.seed;
  doc["points"] = m.points;
  if (!m.seeds.empty()) doc["seeds"] = m.seeds;
  doc["scene_hashes"] = m.scene_hashes;
  doc["scenes"] = m.scenes;
  doc["files"] = m.files;
  return doc.dump(2) + "\n";
}

}  // namespace qdisc::cli
