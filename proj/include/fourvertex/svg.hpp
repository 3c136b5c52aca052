#pragma once

// Minimal SVG builder. Geometry is given in math coordinates (y up); the
// document flips y and sizes its viewBox to everything drawn.

#include <algorithm>
#include <cstdio>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fourvertex/geometry.hpp"

namespace fourvertex::svg {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

inline std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

class Document {
 public:
  void polyline(std::span<const Point> pts, const std::string& stroke, double width, bool closed = false) {
    if (pts.empty()) return;
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      d += (i == 0 ? "M" : " L") + num(pts[i].real()) + " " + num(-pts[i].imag());
      grow(pts[i], width);
    }
    if (closed) d += " Z";
    body_ += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) +
             "\" stroke-linejoin=\"round\"/>\n";
  }

  void circle(Point c, double r, const std::string& stroke, double width, const std::string& fill = "none") {
    body_ += "<circle cx=\"" + num(c.real()) + "\" cy=\"" + num(-c.imag()) + "\" r=\"" + num(r) + "\" fill=\"" +
             fill + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"/>\n";
    grow(c + Point(r, r), width);
    grow(c - Point(r, r), width);
  }

  void line(Point a, Point b, const std::string& stroke, double width, bool dashed = false) {
    body_ += "<line x1=\"" + num(a.real()) + "\" y1=\"" + num(-a.imag()) + "\" x2=\"" + num(b.real()) + "\" y2=\"" +
             num(-b.imag()) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"" +
             (dashed ? " stroke-dasharray=\"" + num(4 * width) + "\"" : "") + "/>\n";
    grow(a, width);
    grow(b, width);
  }

  void arrow(Point from, Point to, const std::string& stroke, double width) {
    line(from, to, stroke, width);
    const Point d = to - from;
    const double len = std::abs(d);
    if (len == 0.0) return;
    const Point u = d / len;
    const double head = std::min(0.3 * len, 6.0 * width);
    line(to, to - head * u * unit(0.4), stroke, width);
    line(to, to - head * u * unit(-0.4), stroke, width);
  }

  void dot(Point c, double r, const std::string& fill) { circle(c, r, "none", 0.0, fill); }

  void text(Point at, const std::string& s, double size, const std::string& fill = "black") {
    body_ += "<text x=\"" + num(at.real()) + "\" y=\"" + num(-at.imag()) + "\" font-size=\"" + num(size) +
             "\" font-family=\"sans-serif\" fill=\"" + fill + "\">" + escape(s) + "</text>\n";
    grow(at, 0.0);
    grow(at + Point(0.6 * size * static_cast<double>(s.size()), size), 0.0);
  }

  std::string str(double margin_fraction = 0.05) const {
    double x0 = lo_.real(), x1 = hi_.real(), y0 = lo_.imag(), y1 = hi_.imag();
    if (!(x1 >= x0)) x0 = y0 = -1.0, x1 = y1 = 1.0;
    const double pad = margin_fraction * std::max({x1 - x0, y1 - y0, 1e-9});
    x0 -= pad;
    x1 += pad;
    y0 -= pad;
    y1 += pad;
    const double w = x1 - x0, h = y1 - y0;
    const double px = 800.0;
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           num(px) + "\" height=\"" + num(px * h / w) + "\" viewBox=\"" + num(x0) + " " + num(-y1) + " " + num(w) +
           " " + num(h) + "\">\n<rect x=\"" + num(x0) + "\" y=\"" + num(-y1) + "\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" fill=\"white\"/>\n" + body_ + "</svg>\n";
  }

  /// Bounding box in math coordinates.
  Point lower() const { return lo_; }
  Point upper() const { return hi_; }

 private:
  void grow(Point p, double w) {
    lo_ = Point(std::min(lo_.real(), p.real() - w), std::min(lo_.imag(), p.imag() - w));
    hi_ = Point(std::max(hi_.real(), p.real() + w), std::max(hi_.imag(), p.imag() + w));
  }

  std::string body_;
  Point lo_{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi_{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
};

}  // namespace fourvertex::svg
