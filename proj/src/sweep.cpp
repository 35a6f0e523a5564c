/*
 * Copyright 2026 The vsoc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "vsoc/sweep.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "vsoc/error.hpp"
#include "vsoc/extrapolation.hpp"

namespace vsoc {

std::vector<SweepRow> run_sweep(const SweepInputs& in, const std::vector<int>& ews) {
  if (ews.empty()) throw validation_error("no extrapolation windows requested");
  std::set<int> windows{1};
  for (int ew : ews) {
    if (ew < 1) throw validation_error(fmt::format("extrapolation window {} must be >= 1", ew));
    windows.insert(ew);
  }
  if (in.truth.size() != in.seq.size()) throw validation_error("track length mismatch");

  const TrafficReport traffic = simulate_network_traffic(in.net, in.mem_cfg);
  MotionFieldCache fields(in.seq, in.motion);

  std::vector<SweepRow> rows;
  double baseline_iou = 0.0;
  for (int ew : windows) {
    try {
      DetectionOracle oracle(in.oracle_track);
      const PipelineResult result = run_pipeline(in.seq, oracle, ExtrapolationWindow(ew), fields.source());
      const AccuracyReport accuracy = sequence_accuracy(result, in.truth, in.iou_threshold);
      const EnergySummary energy = sequence_energy(in.energy_cfg, result, traffic);
      if (ew == 1) baseline_iou = accuracy.mean_iou;

      SweepRow row;
      row.ew = ew;
      row.inferences = oracle.inference_count();
      row.mean_iou = accuracy.mean_iou;
      row.accuracy_loss_pp = ew == 1 ? 0.0 : accuracy_loss_pp(baseline_iou, accuracy.mean_iou);
      row.energy_total = energy.total;
      row.saving_fraction = energy.saving_fraction;
      rows.push_back(row);
    } catch (const Error& e) {
      throw Error(e.kind(), fmt::format("ew={}: {}", ew, e.what()));
    }
  }
  return rows;
}

void emit_csv(std::vector<SweepRow> rows, std::ostream& out) {
  if (rows.empty()) throw validation_error("no sweep rows to write");
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.ew < b.ew; });
  out << "ew,inferences,mean_iou,accuracy_loss_pp,energy_total,saving_fraction\n";
  for (const SweepRow& r : rows) {
    out << fmt::format("{},{},{:.6f},{:.6f},{:.6f},{:.6f}\n", r.ew, r.inferences, r.mean_iou, r.accuracy_loss_pp,
                       r.energy_total, r.saving_fraction);
  }
}

void emit_csv(std::vector<SweepRow> rows, const std::filesystem::path& out_path) {
  if (rows.empty()) throw validation_error("no sweep rows to write");
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw io_error(fmt::format("cannot write output {}", out_path.string()));
  emit_csv(std::move(rows), out);
  out.flush();
  if (!out) throw io_error(fmt::format("cannot write output {}", out_path.string()));
}

}  // namespace vsoc
