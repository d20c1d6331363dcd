#include "trapid/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "trapid/errors.hpp"

namespace trapid::svg {

namespace {

struct Axis {
  double lo, hi;
  bool log;
  double map(double v, double px0, double px1) const {
    const double t = log ? (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo))
                         : (v - lo) / (hi - lo);
    return px0 + t * (px1 - px0);
  }
  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::floor(std::log10(lo)); e <= std::ceil(std::log10(hi)); e += 1.0) {
        const double v = std::pow(10.0, e);
        if (v >= lo * (1 - 1e-12) && v <= hi * (1 + 1e-12)) out.push_back(v);
      }
      return out;
    }
    const double span = hi - lo;
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      if (m * mag >= raw) {
        step = m * mag;
        break;
      }
    }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) {
      out.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
    }
    return out;
  }
};

Axis make_axis(const std::vector<const std::vector<double>*>& data, std::vector<double> extra,
               bool log) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto take = [&](double v) {
    if (!std::isfinite(v) || (log && v <= 0.0)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  for (const auto* d : data) std::for_each(d->begin(), d->end(), take);
  std::for_each(extra.begin(), extra.end(), take);
  if (!(lo <= hi)) throw DomainError("svg: no drawable data");
  if (lo == hi) {
    const double pad = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
    lo = log ? lo / 2.0 : lo - pad;
    hi = log ? hi * 2.0 : hi + pad;
  } else if (!log) {
    const double pad = 0.04 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  return {lo, hi, log};
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render(const Chart& c) {
  std::vector<const std::vector<double>*> xs, ys;
  for (const auto& s : c.series) {
    xs.push_back(&s.x);
    ys.push_back(&s.y);
  }
  std::vector<double> hl;
  for (const auto& h : c.hlines) hl.push_back(h.y);
  const Axis ax = make_axis(xs, {}, c.log_x);
  const Axis ay = make_axis(ys, hl, c.log_y);

  const double left = 80, right = c.width - 20.0, top = 40, bottom = c.height - 55.0;
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\" font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      c.width, c.height, c.width, c.height);
  out += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                     c.width / 2, escape(c.title));
  out += fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", left,
      top, right - left, bottom - top);

  for (double t : ax.ticks()) {
    const double px = ax.map(t, left, right);
    out += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"#ddd\"/>\n"
        "<text x=\"{0:.2f}\" y=\"{3}\" text-anchor=\"middle\">{4:.4g}</text>\n",
        px, top, bottom, bottom + 16, t);
  }
  for (double t : ay.ticks()) {
    const double py = ay.map(t, bottom, top);
    out += fmt::format(
        "<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"#ddd\"/>\n"
        "<text x=\"{3}\" y=\"{4:.2f}\" text-anchor=\"end\">{5:.4g}</text>\n",
        left, py, right, left - 6, py + 4, t);
  }
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                     (left + right) / 2, c.height - 15, escape(c.x_label));
  out += fmt::format(
      "<text x=\"18\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0})\">{1}</text>\n",
      (top + bottom) / 2, escape(c.y_label));

  for (const auto& h : c.hlines) {
    const double py = ay.map(h.y, bottom, top);
    out += fmt::format(
        "<line x1=\"{}\" y1=\"{:.2f}\" x2=\"{}\" y2=\"{:.2f}\" stroke=\"{}\" "
        "stroke-dasharray=\"6 4\"/>\n",
        left, py, right, py, h.color);
  }

  for (const auto& s : c.series) {
    std::string pts;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if ((c.log_x && s.x[i] <= 0.0) || (c.log_y && s.y[i] <= 0.0)) continue;
      pts += fmt::format("{:.2f},{:.2f} ", ax.map(s.x[i], left, right), ay.map(s.y[i], bottom, top));
    }
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                       s.color, pts);
  }

  double ly = top + 16;
  auto legend = [&](const std::string& label, const std::string& color, bool dashed) {
    if (label.empty()) return;
    out += fmt::format(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"{}/>\n"
        "<text x=\"{}\" y=\"{}\">{}</text>\n",
        right - 170, ly, right - 145, ly, color, dashed ? " stroke-dasharray=\"6 4\"" : "",
        right - 140, ly + 4, escape(label));
    ly += 16;
  };
  for (const auto& s : c.series) legend(s.label, s.color, false);
  for (const auto& h : c.hlines) legend(h.label, h.color, true);
  out += "</svg>\n";
  return out;
}

}  // namespace trapid::svg
