// Copyright 2026 The pnmt Authors.
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


// Text, JSON and CSV renderings of analysis and evaluation results. Every
// JSON document carries a "schema" field.

#ifndef PNMT_REPORT_H_
#define PNMT_REPORT_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pnmt/evaluate.h"
#include "pnmt/geometry.h"

namespace pnmt {

enum class ReportFormat { kText, kJson, kCsv };

struct ReportDoc {
  std::string text;
  std::string json;
  std::string csv;

  const std::string& Get(ReportFormat format) const;
};

// Shortest decimal that round-trips.
std::string FormatDouble(double value);

ReportDoc GammaDoc(const GammaReport& report);
ReportDoc DensityDoc(const DensityReport& report);
ReportDoc CdfDoc(const std::vector<std::pair<double, double>>& cdf);
ReportDoc CoverageDoc(const std::vector<std::pair<int, double>>& curve, uint64_t order_seed);
ReportDoc BleuDoc(const BleuReport& report);
ReportDoc VocabDoc(const std::map<std::string, VocabReport>& streams);

}  // namespace pnmt

#endif  // PNMT_REPORT_H_
