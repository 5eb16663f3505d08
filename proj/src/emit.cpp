#include "skein/emit.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "skein/error.hpp"

namespace skein {

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

struct Xy {
  double x, y;
};

/// Polyline along a parametric curve over [t0,t1], broken nowhere.
void emit_polyline(std::ostream& os, const std::function<Xy(double)>& at, double t0, double t1,
                   int samples, const char* style) {
  os << "<polyline fill=\"none\" " << style << " points=\"";
  for (int s = 0; s <= samples; ++s) {
    double t = t0 + (t1 - t0) * s / samples;
    Xy p = at(t);
    os << fixed(p.x) << "," << fixed(p.y) << (s == samples ? "" : " ");
  }
  os << "\"/>\n";
}

/// Kept intervals of [0,l] after removing the gaps, in ascending order.
std::vector<std::pair<double, double>> kept_segments(const Thread& t) {
  std::vector<std::pair<double, double>> out;
  double cursor = 0.0;
  for (const auto& g : t.gaps()) {
    out.emplace_back(cursor, g.left.to_double());
    cursor = g.right.to_double();
  }
  out.emplace_back(cursor, t.length().to_double());
  return out;
}

}  // namespace

std::string thread_svg(const Thread& t) {
  std::ostringstream os;
  const double l = t.length().to_double();
  const double a = t.width().to_double();
  const double total = l + a;
  const double cx = 220, cy = 220, r = 170;
  // Coordinate u in [0,l] sits at angle for arc position a/2 + u, so the
  // width chord is centered at the bottom of the circle.
  auto angle = [&](double u) { return M_PI / 2 + 2 * M_PI * (a / 2 + u) / total; };
  auto at = [&](double u) {
    return Xy{cx + r * std::cos(angle(u)), cy + r * std::sin(angle(u))};
  };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"440\" height=\"440\" "
        "viewBox=\"0 0 440 440\">\n";
  for (const auto& [s0, s1] : kept_segments(t))
    emit_polyline(os, at, s0, s1, 96, "stroke=\"black\" stroke-width=\"2\"");
  Xy p0 = at(0.0), p1 = at(l);
  os << "<line x1=\"" << fixed(p0.x) << "\" y1=\"" << fixed(p0.y) << "\" x2=\"" << fixed(p1.x)
     << "\" y2=\"" << fixed(p1.y) << "\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n";
  os << "<circle cx=\"" << fixed(p0.x) << "\" cy=\"" << fixed(p0.y) << "\" r=\"4\"/>\n";
  os << "<circle cx=\"" << fixed(p1.x) << "\" cy=\"" << fixed(p1.y) << "\" r=\"4\"/>\n";
  os << "<text x=\"" << fixed(p0.x - 16) << "\" y=\"" << fixed(p0.y + 16) << "\">0</text>\n";
  os << "<text x=\"" << fixed(p1.x + 8) << "\" y=\"" << fixed(p1.y + 16) << "\">" << t.length().str()
     << "</text>\n";
  os << "<text x=\"" << fixed(cx - 10) << "\" y=\"" << fixed(cy + r - 14) << "\">a=" << t.width().str()
     << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

namespace {

void bundle_arcs(std::ostringstream& os, const Xy& pa, const Xy& pb,
                 const std::vector<std::pair<std::string, Thread>>& threads, double base_bulge) {
  for (std::size_t i = 0; i < threads.size(); ++i) {
    const Thread& t = threads[i].second;
    double bulge = base_bulge * (1.0 + 0.55 * static_cast<double>(i)) *
                   (i % 2 == 0 ? 1.0 : -1.0);
    double mx = (pa.x + pb.x) / 2, my = (pa.y + pb.y) / 2;
    double dx = (pb.x - pa.x) / 2, dy = (pb.y - pa.y) / 2;
    double len = std::sqrt(dx * dx + dy * dy);
    double nx = len == 0 ? 0 : -dy / len, ny = len == 0 ? 0 : dx / len;
    auto at = [&](double u) {
      double phi = M_PI * (1.0 - u);  // u=0 at pa, u=1 at pb
      return Xy{mx - dx * std::cos(M_PI - phi) + nx * bulge * std::sin(phi),
                my - dy * std::cos(M_PI - phi) + ny * bulge * std::sin(phi)};
    };
    for (const auto& [s0, s1] : kept_segments(t))
      emit_polyline(os, at, s0, s1, 96, "stroke=\"black\" stroke-width=\"1.4\"");
  }
}

}  // namespace

std::string threading_svg(const ThreadingSpace& ts) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"560\" height=\"420\" "
        "viewBox=\"0 0 560 420\">\n";
  Xy pa{90, 260}, pb{470, 260};
  bundle_arcs(os, pa, pb, ts.threads(), 120);
  os << "<line x1=\"" << fixed(pa.x) << "\" y1=\"" << fixed(pa.y) << "\" x2=\"" << fixed(pb.x)
     << "\" y2=\"" << fixed(pb.y) << "\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n";
  os << "<circle cx=\"" << fixed(pa.x) << "\" cy=\"" << fixed(pa.y) << "\" r=\"5\"/>\n";
  os << "<circle cx=\"" << fixed(pb.x) << "\" cy=\"" << fixed(pb.y) << "\" r=\"5\"/>\n";
  os << "<text x=\"" << fixed(pa.x - 22) << "\" y=\"" << fixed(pa.y + 6) << "\">A</text>\n";
  os << "<text x=\"" << fixed(pb.x + 10) << "\" y=\"" << fixed(pb.y + 6) << "\">B</text>\n";
  os << "<text x=\"" << fixed((pa.x + pb.x) / 2 - 30) << "\" y=\"" << fixed(pa.y + 22)
     << "\">a=" << ts.width().str() << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string skein_svg(const SkeinTruncation& tr) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"760\" height=\"560\" "
        "viewBox=\"0 0 760 560\">\n";
  std::vector<Xy> pos(tr.points().size());
  pos[0] = {120, 420};
  pos[1] = {640, 420};
  // Place inner points along their instance's arc; instances draw in registry
  // order, so parents are always placed before their children.
  std::vector<double> bulge(tr.threads().size());
  for (std::size_t i = 0; i < tr.threads().size(); ++i) {
    const auto& inst = tr.threads()[i];
    const Xy& pa = pos[inst.anchor1];
    const Xy& pb = pos[inst.anchor2];
    double dx = (pb.x - pa.x) / 2, dy = (pb.y - pa.y) / 2;
    double len = std::sqrt(dx * dx + dy * dy);
    int order = tr.points()[inst.points.empty() ? inst.anchor1 : inst.points.front()].order;
    bulge[i] = (len * 0.65 + 16.0) / (1.0 + 0.35 * order) * (i % 2 == 0 ? 1.0 : -1.0);
    double mx = (pa.x + pb.x) / 2, my = (pa.y + pb.y) / 2;
    double nx = len == 0 ? 0 : -dy / len, ny = len == 0 ? 0 : dx / len;
    auto at = [&](double u) {
      double phi = M_PI * (1.0 - u);
      return Xy{mx - dx * std::cos(M_PI - phi) + nx * bulge[i] * std::sin(phi),
                my - dy * std::cos(M_PI - phi) + ny * bulge[i] * std::sin(phi)};
    };
    for (const auto& [s0, s1] : kept_segments(inst.thread))
      emit_polyline(os, at, s0, s1, 64, "stroke=\"black\" stroke-width=\"1\"");
    for (int p : inst.points) pos[p] = at(tr.points()[p].coordinate.to_double());
  }
  for (std::size_t i = 0; i < pos.size(); ++i) {
    os << "<circle cx=\"" << fixed(pos[i].x) << "\" cy=\"" << fixed(pos[i].y)
       << "\" r=\"" << (tr.points()[i].base ? 5 : 2) << "\"/>\n";
  }
  os << "<text x=\"" << fixed(pos[0].x - 22) << "\" y=\"" << fixed(pos[0].y + 6) << "\">A</text>\n";
  os << "<text x=\"" << fixed(pos[1].x + 10) << "\" y=\"" << fixed(pos[1].y + 6) << "\">B</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string thread_distance_csv(const Thread& t, const Rational& grid) {
  std::vector<Rational> pts = t.support_points(grid);
  std::ostringstream os;
  os << "d";
  for (const auto& p : pts) os << "," << p.str();
  os << "\n";
  for (const auto& p : pts) {
    os << p.str();
    for (const auto& q : pts) os << "," << t.distance(p, q).str();
    os << "\n";
  }
  return os.str();
}

}  // namespace skein
