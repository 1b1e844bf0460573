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


#ifndef GANON_SVG_PLOT_H_
#define GANON_SVG_PLOT_H_

#include <span>
#include <string>

namespace ganon {

struct BarChartOptions {
  std::string title;
  double width = 720.0;
  double height = 360.0;
};

// Bars are labelled 1..n and drawn from a shared zero line; the largest value
// is filled in a highlight colour. Output depends only on the inputs.
std::string RenderBarChart(std::span<const double> values,
                           const BarChartOptions& options);

}  // namespace ganon

#endif  // GANON_SVG_PLOT_H_
