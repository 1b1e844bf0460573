// Copyright 2026 The Ganon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ganon/svg_plot.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_replace.h"

namespace ganon {

namespace {

constexpr double kMarginLeft = 56.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 32.0;
constexpr double kMarginBottom = 32.0;

std::string Escape(absl::string_view text) {
  return absl::StrReplaceAll(text, {{"&", "&amp;"},
                                    {"<", "&lt;"},
                                    {">", "&gt;"},
                                    {"\"", "&quot;"}});
}

}  // namespace

std::string RenderBarChart(std::span<const double> values,
                           const BarChartOptions& options) {
  const double plot_w = options.width - kMarginLeft - kMarginRight;
  const double plot_h = options.height - kMarginTop - kMarginBottom;
  double lo = 0.0;
  double hi = 0.0;
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi - lo > 0.0 ? hi - lo : 1.0;
  auto y_of = [&](double v) {
    return kMarginTop + (hi - v) / span * plot_h;
  };
  const double zero_y = y_of(0.0);

  size_t peak = values.size();
  for (size_t i = 0; i < values.size(); ++i) {
    if (peak == values.size() || values[i] > values[peak]) peak = i;
  }
  if (peak < values.size() && values[peak] <= 0.0) peak = values.size();

  std::string svg = absl::StrFormat(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
      "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\" font-family=\"sans-serif\" "
      "font-size=\"11\">\n",
      options.width, options.height, options.width, options.height);
  absl::StrAppend(&svg, "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n");
  if (!options.title.empty()) {
    absl::StrAppend(&svg,
                    absl::StrFormat("<text x=\"%.2f\" y=\"20\" "
                                    "text-anchor=\"middle\" font-size=\"14\">"
                                    "%s</text>\n",
                                    options.width / 2, Escape(options.title)));
  }
  absl::StrAppend(
      &svg, absl::StrFormat("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">"
                            "%.4f</text>\n",
                            kMarginLeft - 6, y_of(hi) + 4, hi));
  absl::StrAppend(
      &svg, absl::StrFormat("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">"
                            "%.4f</text>\n",
                            kMarginLeft - 6, y_of(lo) + 4, lo));

  const double slot = values.empty() ? plot_w : plot_w / values.size();
  const double bar_w = slot * 0.7;
  for (size_t i = 0; i < values.size(); ++i) {
    const double x = kMarginLeft + slot * i + (slot - bar_w) / 2;
    const double y = std::min(zero_y, y_of(values[i]));
    const double h = std::abs(y_of(values[i]) - zero_y);
    absl::StrAppend(
        &svg,
        absl::StrFormat("<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" "
                        "height=\"%.2f\" fill=\"%s\"><title>%d: %.4f</title>"
                        "</rect>\n",
                        x, y, bar_w, h, i == peak ? "#d62728" : "#4e79a7",
                        i + 1, values[i]));
    absl::StrAppend(
        &svg, absl::StrFormat("<text x=\"%.2f\" y=\"%.2f\" "
                              "text-anchor=\"middle\">%d</text>\n",
                              x + bar_w / 2, options.height - 12, i + 1));
  }
  absl::StrAppend(
      &svg, absl::StrFormat("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" "
                            "y2=\"%.2f\" stroke=\"#333\"/>\n",
                            kMarginLeft, zero_y, kMarginLeft + plot_w, zero_y));
  absl::StrAppend(&svg, "</svg>\n");
  return svg;
}

}  // namespace ganon
