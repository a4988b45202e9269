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


#include "pnmt/report.h"

#include <charconv>

#include "json.hpp"

namespace pnmt {

using nlohmann::json;

const std::string& ReportDoc::Get(ReportFormat format) const {
  switch (format) {
    case ReportFormat::kJson: return json;
    case ReportFormat::kCsv: return csv;
    case ReportFormat::kText: break;
  }
  return text;
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

namespace {

json PointJson(const Point2& p) { return json::array({p.x, p.y}); }

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

ReportDoc GammaDoc(const GammaReport& r) {
  ReportDoc doc;
  doc.text = FormatDouble(r.gamma) + "\n";
  json centroids = json::array();
  for (const Point2& c : r.centroids) centroids.push_back(PointJson(c));
  doc.json = Dump({{"schema", "pnmt.gamma.v1"},
                   {"gamma", r.gamma},
                   {"numerator", r.numerator},
                   {"denominator", r.denominator},
                   {"num_groups", r.num_groups},
                   {"group_sizes", r.group_sizes},
                   {"centroids", centroids}});
  doc.csv = "gamma,numerator,denominator,num_groups\n" + FormatDouble(r.gamma) + "," +
            FormatDouble(r.numerator) + "," + FormatDouble(r.denominator) + "," +
            std::to_string(r.num_groups) + "\n";
  return doc;
}

ReportDoc DensityDoc(const DensityReport& r) {
  ReportDoc doc;
  doc.text = "i\tmax\tsum\tmean\n";
  doc.csv = "i,max,sum,mean\n";
  json rows = json::array();
  for (size_t i = 0; i < r.max_density.size(); ++i) {
    const std::string idx = std::to_string(i + 1);
    doc.text += idx + "\t" + FormatDouble(r.max_density[i]) + "\t" +
                FormatDouble(r.sum_density[i]) + "\t" + FormatDouble(r.mean_density[i]) + "\n";
    doc.csv += idx + "," + FormatDouble(r.max_density[i]) + "," +
               FormatDouble(r.sum_density[i]) + "," + FormatDouble(r.mean_density[i]) + "\n";
    rows.push_back({{"i", i + 1},
                    {"max", r.max_density[i]},
                    {"sum", r.sum_density[i]},
                    {"mean", r.mean_density[i]}});
  }
  doc.text += "samples_used=" + std::to_string(r.samples_used) +
              " converged=" + (r.converged ? "true" : "false") + "\n";
  json corners = json::array();
  for (const Point2& p : r.hull_corners) corners.push_back(PointJson(p));
  doc.json = Dump({{"schema", "pnmt.density.v1"},
                   {"density", rows},
                   {"converge_threshold", r.converge_threshold},
                   {"samples_used", r.samples_used},
                   {"converged", r.converged},
                   {"chosen_groups", r.chosen_groups},
                   {"reference_size", r.reference_size},
                   {"hull_corners", corners}});
  return doc;
}

ReportDoc CdfDoc(const std::vector<std::pair<double, double>>& cdf) {
  ReportDoc doc;
  doc.csv = "volume,cdf\n";
  json points = json::array();
  for (const auto& [v, f] : cdf) {
    doc.text += FormatDouble(v) + "\t" + FormatDouble(f) + "\n";
    doc.csv += FormatDouble(v) + "," + FormatDouble(f) + "\n";
    points.push_back({v, f});
  }
  doc.json = Dump({{"schema", "pnmt.cdf.v1"}, {"points", points}});
  return doc;
}

ReportDoc CoverageDoc(const std::vector<std::pair<int, double>>& curve, uint64_t order_seed) {
  ReportDoc doc;
  doc.csv = "step,volume\n";
  json points = json::array();
  for (const auto& [t, v] : curve) {
    doc.text += std::to_string(t) + "\t" + FormatDouble(v) + "\n";
    doc.csv += std::to_string(t) + "," + FormatDouble(v) + "\n";
    points.push_back({t, v});
  }
  doc.json = Dump({{"schema", "pnmt.coverage.v1"}, {"order_seed", order_seed}, {"curve", points}});
  return doc;
}

ReportDoc BleuDoc(const BleuReport& r) {
  ReportDoc doc;
  doc.text = r.ToLine() + "\n";
  doc.json = Dump({{"schema", "pnmt.bleu.v1"},
                   {"bleu", r.bleu},
                   {"precisions", r.precisions},
                   {"matches", r.matches},
                   {"totals", r.totals},
                   {"brevity_penalty", r.brevity_penalty},
                   {"ratio", r.ratio},
                   {"hyp_length", r.hyp_length},
                   {"ref_length", r.ref_length}});
  doc.csv = "bleu,p1,p2,p3,p4,bp,ratio,hyp_len,ref_len\n" + FormatDouble(r.bleu);
  for (double p : r.precisions) doc.csv += "," + FormatDouble(p);
  doc.csv += "," + FormatDouble(r.brevity_penalty) + "," + FormatDouble(r.ratio) + "," +
             std::to_string(r.hyp_length) + "," + std::to_string(r.ref_length) + "\n";
  return doc;
}

ReportDoc VocabDoc(const std::map<std::string, VocabReport>& streams) {
  ReportDoc doc;
  doc.csv = "stream,unique,total\n";
  json entries = json::object();
  for (const auto& [name, r] : streams) {
    doc.text += name + "\tunique=" + std::to_string(r.unique) +
                "\ttotal=" + std::to_string(r.total) + "\n";
    doc.csv += name + "," + std::to_string(r.unique) + "," + std::to_string(r.total) + "\n";
    entries[name] = {{"unique", r.unique}, {"total", r.total}};
  }
  doc.json = Dump({{"schema", "pnmt.vocab.v1"}, {"streams", entries}});
  return doc;
}

}  // namespace pnmt
