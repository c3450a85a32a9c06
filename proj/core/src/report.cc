// Copyright 2026 The onebit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "onebit/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "onebit/errors.h"

namespace onebit {
namespace {

std::string Num(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

void WriteFile(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << body;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string XmlEscape(const std::string& s) {
  std::string out;
  for (char ch : s) {
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

}  // namespace

std::string FormatCsv(const BerCurves& curves) {
  std::string out = "snr_db,precoder,bits,bit_errors,ber,avg_margin,avg_mults,wallclock_ms\n";
  for (const BerPoint& p : curves.points) {
    out += Num("%.10g", p.snr_db);
    out += ',' + p.precoder;
    out += ',' + std::to_string(p.bits);
    out += ',' + std::to_string(p.bit_errors);
    out += ',' + Num("%.12g", p.ber);
    out += ',' + Num("%.12g", p.avg_margin);
    out += ',' + Num("%.12g", p.avg_mults);
    out += ',' + Num("%.3f", p.wallclock_ms);
    out += '\n';
  }
  return out;
}

std::string FormatJson(const BerCurves& curves) {
  const SimConfig& cfg = curves.config;
  nlohmann::ordered_json j;
  j["config"] = {
      {"nt", cfg.nt},
      {"k", cfg.k},
      {"modulation", cfg.modulation},
      {"snr_db", cfg.snr_db},
      {"slots", cfg.slots},
      {"seed", cfg.master_seed},
      {"precoders", cfg.precoders},
      {"pt", cfg.pt},
      {"snr_definition", "pt / sigma2 (total transmit power over per-user noise variance)"},
      {"channel", "i.i.d. Rayleigh CN(0,1), independent per slot"},
      {"qam_receiver_scaling", "genie: divide by g * beta from the precoder outcome"},
      {"options",
       {{"c2po_iterations", cfg.options.c2po_iterations},
        {"squid_iterations", cfg.options.squid_iterations},
        {"ss_max_passes", cfg.options.ss_max_passes},
        {"pbb_fix_threshold", cfg.options.pbb_fix_threshold},
        {"pbb_node_limit", cfg.options.pbb_node_limit}}},
  };
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const BerPoint& p : curves.points) {
    pts.push_back({{"precoder", p.precoder},
                   {"snr_db", p.snr_db},
                   {"bits", p.bits},
                   {"bit_errors", p.bit_errors},
                   {"ber", p.ber},
                   {"ber_ci95", {p.ci_low, p.ci_high}},
                   {"avg_margin", p.avg_margin},
                   {"avg_mults", p.avg_mults},
                   {"wallclock_ms", p.wallclock_ms}});
  }
  j["points"] = std::move(pts);
  return j.dump(2) + "\n";
}

std::string FormatSvgPlot(const BerCurves& curves) {
  constexpr double kWidth = 800, kHeight = 600;
  constexpr double kLeft = 80, kRight = 170, kTop = 30, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  std::map<std::string, std::vector<const BerPoint*>> series;
  double xmin = INFINITY, xmax = -INFINITY, ymin_ber = 1.0;
  for (const BerPoint& p : curves.points) {
    series[p.precoder].push_back(&p);
    xmin = std::min(xmin, p.snr_db);
    xmax = std::max(xmax, p.snr_db);
    if (p.ber > 0.0) ymin_ber = std::min(ymin_ber, p.ber);
  }
  if (!(xmax > xmin)) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  const double ytop = 0.0;  // log10(1)
  const double ybot = std::min(-1.0, std::floor(std::log10(ymin_ber)));
  auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  auto sy = [&](double lg) { return kTop + (ytop - lg) / (ytop - ybot) * plot_h; };

  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#ff7f0e", "#9467bd", "#8c564b",
                                            "#e377c2", "#7f7f7f", "#bcbd22",
                                            "#17becf"};
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n";
  svg += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  svg += "<rect x=\"" + Num("%.1f", kLeft) + "\" y=\"" + Num("%.1f", kTop) +
         "\" width=\"" + Num("%.1f", plot_w) + "\" height=\"" +
         Num("%.1f", plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int d = static_cast<int>(ytop); d >= static_cast<int>(ybot); --d) {
    const double y = sy(d);
    svg += "<line x1=\"" + Num("%.1f", kLeft) + "\" y1=\"" + Num("%.1f", y) +
           "\" x2=\"" + Num("%.1f", kLeft + plot_w) + "\" y2=\"" +
           Num("%.1f", y) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + Num("%.1f", kLeft - 8) + "\" y=\"" +
           Num("%.1f", y + 4) + "\" font-size=\"12\" text-anchor=\"end\">1e" +
           std::to_string(d) + "</text>\n";
  }
  const int xticks = 5;
  for (int i = 0; i <= xticks; ++i) {
    const double v = xmin + (xmax - xmin) * i / xticks;
    svg += "<text x=\"" + Num("%.1f", sx(v)) + "\" y=\"" +
           Num("%.1f", kTop + plot_h + 18) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + Num("%.4g", v) +
           "</text>\n";
  }
  svg += "<text x=\"" + Num("%.1f", kLeft + plot_w / 2) +
         "\" y=\"590\" font-size=\"14\" text-anchor=\"middle\">SNR (dB)</text>\n";
  svg += "<text x=\"20\" y=\"" + Num("%.1f", kTop + plot_h / 2) +
         "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
         Num("%.1f", kTop + plot_h / 2) + ")\">uncoded BER</text>\n";

  int idx = 0;
  for (const auto& [name, pts] : series) {
    const char* color = kColors[idx % 10];
    std::string poly;
    for (const BerPoint* p : pts) {
      if (p->ber <= 0.0) continue;  // not representable on a log axis
      poly += Num("%.2f", sx(p->snr_db)) + "," + Num("%.2f", sy(std::log10(p->ber))) + " ";
    }
    if (!poly.empty()) {
      poly.pop_back();
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"2\" points=\"" + poly + "\"/>\n";
    }
    const double ly = kTop + 20 + 20 * idx;
    svg += "<line x1=\"" + Num("%.1f", kLeft + plot_w + 15) + "\" y1=\"" +
           Num("%.1f", ly) + "\" x2=\"" + Num("%.1f", kLeft + plot_w + 40) +
           "\" y2=\"" + Num("%.1f", ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + Num("%.1f", kLeft + plot_w + 45) + "\" y=\"" +
           Num("%.1f", ly + 4) + "\" font-size=\"12\">" + XmlEscape(name) +
           "</text>\n";
    ++idx;
  }
  svg += "</svg>\n";
  return svg;
}

void EmitCsv(const BerCurves& curves, const std::string& path) {
  if (curves.points.empty()) throw ParameterError("EmitCsv: no data");
  WriteFile(path, FormatCsv(curves));
}

void EmitJson(const BerCurves& curves, const std::string& path) {
  if (curves.points.empty()) throw ParameterError("EmitJson: no data");
  WriteFile(path, FormatJson(curves));
}

void EmitPlot(const BerCurves& curves, const std::string& path) {
  if (curves.points.empty()) throw ParameterError("EmitPlot: no data");
  WriteFile(path, FormatSvgPlot(curves));
}

}  // namespace onebit
