#include "stackyfan/svg.hpp"

#include "stackyfan/error.hpp"

#include <algorithm>
#include <sstream>

namespace stackyfan {

namespace {

constexpr int kUnit = 40;  // pixels per lattice unit

// Decimal with three fractional digits, rounded half up, computed exactly.
std::string fixed3(const Rat& x) {
  Rat scaled = x * 1000 + Rat(1, 2);
  Int q = floor_rat(scaled);
  bool neg = q < 0;
  Int a = neg ? Int(-q) : q;
  Int ip = a / 1000, fp = a % 1000;
  std::string frac = fp.get_str();
  while (frac.size() < 3) frac = "0" + frac;
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string s = (neg ? "-" : "") + ip.get_str();
  if (!frac.empty()) s += "." + frac;
  return s == "-0" ? "0" : s;
}

struct Frame {
  Int xmin, xmax, ymin, ymax;  // lattice box
  Rat px(const Rat& x) const { return (x - xmin + 1) * kUnit; }
  Rat py(const Rat& y) const { return (ymax - y + 1) * kUnit; }
  Int width() const { return (xmax - xmin + 2) * kUnit; }
  Int height() const { return (ymax - ymin + 2) * kUnit; }
};

std::string pt(const Frame& f, const Rat& x, const Rat& y) { return fixed3(f.px(x)) + "," + fixed3(f.py(y)); }

void header(std::ostringstream& os, const Int& w, const Int& h) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
     << " " << h << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
}

void grid(std::ostringstream& os, const Frame& f) {
  os << "<g fill=\"#999\">\n";
  for (Int x = f.xmin; x <= f.xmax; ++x)
    for (Int y = f.ymin; y <= f.ymax; ++y)
      os << "<circle cx=\"" << fixed3(f.px(x)) << "\" cy=\"" << fixed3(f.py(y)) << "\" r=\"2\"/>\n";
  os << "</g>\n";
  if (f.xmin <= 0 && 0 <= f.xmax)
    os << "<line x1=\"" << fixed3(f.px(0)) << "\" y1=\"" << fixed3(f.py(f.ymax)) << "\" x2=\"" << fixed3(f.px(0))
       << "\" y2=\"" << fixed3(f.py(f.ymin)) << "\" stroke=\"#ccc\"/>\n";
  if (f.ymin <= 0 && 0 <= f.ymax)
    os << "<line x1=\"" << fixed3(f.px(f.xmin)) << "\" y1=\"" << fixed3(f.py(0)) << "\" x2=\"" << fixed3(f.px(f.xmax))
       << "\" y2=\"" << fixed3(f.py(0)) << "\" stroke=\"#ccc\"/>\n";
}

// Counter-clockwise order around the centroid, exact.
std::vector<RatVec> cyclic_order(std::vector<RatVec> pts) {
  if (pts.size() < 3) return pts;
  Rat cx = 0, cy = 0;
  for (const auto& p : pts) {
    cx += p[0];
    cy += p[1];
  }
  cx /= static_cast<long>(pts.size());
  cy /= static_cast<long>(pts.size());
  auto half = [&](const RatVec& p) { return (p[1] - cy > 0 || (p[1] == cy && p[0] - cx > 0)) ? 0 : 1; };
  std::sort(pts.begin(), pts.end(), [&](const RatVec& a, const RatVec& b) {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    Rat cross = (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx);
    return cross > 0;
  });
  return pts;
}

const char* kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5"};

void require_rank2(std::size_t n, const char* what) {
  if (n != 2) throw Error(ErrorCode::InvalidInput, std::string(what) + ": SVG output needs rank 2, got rank " + std::to_string(n));
}

void polygon(std::ostringstream& os, const Frame& f, const std::vector<RatVec>& verts, const char* style) {
  std::vector<RatVec> cyc = cyclic_order(verts);
  if (cyc.size() == 1) {
    os << "<circle cx=\"" << fixed3(f.px(cyc[0][0])) << "\" cy=\"" << fixed3(f.py(cyc[0][1])) << "\" r=\"4\" " << style
       << "/>\n";
    return;
  }
  os << "<polygon points=\"";
  for (std::size_t i = 0; i < cyc.size(); ++i) os << (i ? " " : "") << pt(f, cyc[i][0], cyc[i][1]);
  os << "\" " << style << "/>\n";
}

}  // namespace

std::string render_fan_svg(const WeightedFan& fan) {
  require_rank2(fan.rank(), "fan");
  Int R = 1;
  for (const auto& r : fan.rays())
    for (const auto& x : r.generator) R = std::max(R, Int(abs(x)));
  R += 1;
  Frame f{-R, R, -R, R};
  std::ostringstream os;
  header(os, f.width(), f.height());
  // Far point along a ray: scaled to the box boundary in the max norm.
  auto far = [&](std::size_t ray) {
    const IntVec& g = fan.rays()[ray].generator;
    Int m = std::max(Int(abs(g[0])), Int(abs(g[1])));
    Rat s = Rat(R) / m;
    return RatVec{g[0] * s, g[1] * s};
  };
  os << "<g stroke=\"none\" fill-opacity=\"0.6\">\n";
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    const ConeRef& cone = fan.max_cones()[c];
    if (cone.size() != 2) continue;
    RatVec a = far(cone[0]), b = far(cone[1]);
    os << "<polygon points=\"" << pt(f, 0, 0) << " " << pt(f, a[0], a[1]) << " " << pt(f, b[0], b[1]) << "\" fill=\""
       << kPalette[c % 8] << "\"/>\n";
  }
  os << "</g>\n";
  grid(os, f);
  for (std::size_t r = 0; r < fan.num_rays(); ++r) {
    RatVec a = far(r);
    const IntVec& g = fan.rays()[r].generator;
    os << "<line x1=\"" << fixed3(f.px(0)) << "\" y1=\"" << fixed3(f.py(0)) << "\" x2=\"" << fixed3(f.px(a[0]))
       << "\" y2=\"" << fixed3(f.py(a[1])) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    os << "<circle cx=\"" << fixed3(f.px(g[0])) << "\" cy=\"" << fixed3(f.py(g[1])) << "\" r=\"4\" fill=\"black\"/>\n";
    os << "<text x=\"" << fixed3(f.px(g[0]) + 6) << "\" y=\"" << fixed3(f.py(g[1]) - 6)
       << "\" font-family=\"sans-serif\" font-size=\"12\">w=" << fan.rays()[r].weight << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_polytope_svg(const HPolytope& P, const std::vector<RatVec>& marks) {
  require_rank2(P.rank(), "polytope");
  std::vector<RatVec> verts = vertices(P);
  Int xmin = -1, xmax = 1, ymin = -1, ymax = 1;
  auto widen = [&](const RatVec& v) {
    xmin = std::min(xmin, floor_rat(v[0]));
    xmax = std::max(xmax, ceil_rat(v[0]));
    ymin = std::min(ymin, floor_rat(v[1]));
    ymax = std::max(ymax, ceil_rat(v[1]));
  };
  for (const auto& v : verts) widen(v);
  for (const auto& m : marks) widen(m);
  Frame f{xmin, xmax, ymin, ymax};
  std::ostringstream os;
  header(os, f.width(), f.height());
  grid(os, f);
  if (!verts.empty()) {
    polygon(os, f, verts, "fill=\"#80b1d3\" fill-opacity=\"0.5\" stroke=\"black\" stroke-width=\"2\"");
    os << "<g fill=\"black\">\n";
    for (const auto& p : lattice_points(P))
      os << "<circle cx=\"" << fixed3(f.px(p[0])) << "\" cy=\"" << fixed3(f.py(p[1])) << "\" r=\"4\"/>\n";
    os << "</g>\n";
  }
  for (const auto& m : marks)
    os << "<circle cx=\"" << fixed3(f.px(m[0])) << "\" cy=\"" << fixed3(f.py(m[1]))
       << "\" r=\"7\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string render_reduction_svg(const ReductionReport& report, std::size_t ambient_rank) {
  if (report.image.rank() != 1 || ambient_rank != 3)
    throw Error(ErrorCode::InvalidInput, "reduction strip needs a one-dimensional subtorus of a rank-3 torus");
  // Common lattice box over all slices.
  Int xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  std::vector<std::vector<RatVec>> slices;
  for (const auto& leaf : report.leaves) {
    std::vector<RatVec> v;
    if (leaf.slice) v = vertices(leaf.slice->polytope);
    for (const auto& p : v) {
      xmin = std::min(xmin, floor_rat(p[0]));
      xmax = std::max(xmax, ceil_rat(p[0]));
      ymin = std::min(ymin, floor_rat(p[1]));
      ymax = std::max(ymax, ceil_rat(p[1]));
    }
    slices.push_back(v);
  }
  Frame f{xmin, xmax, ymin, ymax};
  const Int pw = f.width(), ph = f.height() + 20;
  std::ostringstream os;
  header(os, pw * static_cast<long>(std::max<std::size_t>(report.leaves.size(), 1)), ph);
  for (std::size_t i = 0; i < report.leaves.size(); ++i) {
    const Leaf& leaf = report.leaves[i];
    os << "<g transform=\"translate(" << pw * static_cast<long>(i) << ",0)\">\n";
    os << "<rect x=\"1\" y=\"1\" width=\"" << pw - 2 << "\" height=\"" << ph - 2
       << "\" fill=\"none\" stroke=\"#ddd\"/>\n";
    grid(os, f);
    if (!slices[i].empty()) {
      polygon(os, f, slices[i], leaf.regular ? "fill=\"#b3de69\" fill-opacity=\"0.6\" stroke=\"black\""
                                             : "fill=\"#fb8072\" fill-opacity=\"0.6\" stroke=\"black\"");
      os << "<g fill=\"black\">\n";
      for (const auto& p : lattice_points(leaf.slice->polytope))
        os << "<circle cx=\"" << fixed3(f.px(p[0])) << "\" cy=\"" << fixed3(f.py(p[1])) << "\" r=\"3\"/>\n";
      os << "</g>\n";
    }
    os << "<text x=\"" << pw / 2 << "\" y=\"" << ph - 6
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">&#945;=" << leaf.alpha[0]
       << " h0=" << leaf.h0 << "</text>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace stackyfan
