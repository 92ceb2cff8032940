/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#ifndef EHB_EXPERIMENTS_H_
#define EHB_EXPERIMENTS_H_

#include <string>
#include <utility>
#include <vector>

#include "ehb/codec.h"
#include "ehb/metrics.h"

namespace ehb {

struct ReportRow {
  int index = 0;
  char type = 'I';          // 'I' or 'P'
  std::string layer = "-";  // Key / High / Low / -
  double omega = 1.0;
  uint64_t bits = 0;
  double psnr = 0.0;
  bool flagged = false;  // excluded from summaries (e.g. the corrupted frame)
};

// Per-frame rows plus named summary values; round-trips losslessly
// through CSV.
struct ExperimentReport {
  std::vector<ReportRow> rows;
  std::vector<std::pair<std::string, double>> summary;

  void add_summary(const std::string &key, double value) {
    summary.emplace_back(key, value);
  }
  double summary_value(const std::string &key) const;

  std::string to_csv() const;
  static ExperimentReport from_csv(const std::string &csv);
};

ExperimentReport report_from_stats(const std::vector<FrameStats> &stats);

// Encodes the sequence at every base step and returns the RD curve plus
// one per-frame report per step.
struct SweepResult {
  RdCurve curve;
  std::vector<ExperimentReport> reports;
};

SweepResult run_rd_sweep(const Sequence &seq,
                         const std::vector<double> &base_steps,
                         const CodecConfig &config_template);

// Replaces the source frame at corrupt_index with constant 128, encodes,
// and reports per-frame PSNR against the original frames. The corrupted
// frame's own row is flagged. Summaries compare the post-corruption window
// (corrupt_index+2 .. corrupt_index+8) against a clean control run.
ExperimentReport run_no_information_test(const Sequence &seq,
                                         int corrupt_index,
                                         const CodecConfig &config);

// Per-frame PSNR trace plus per-layer mean PSNR summary and an
// ordering_ok flag (Key > High > Low). Degenerate sequences set
// ordering_checked = 0.
ExperimentReport run_quality_structure_report(const Sequence &seq,
                                              const CodecConfig &config);

}  // namespace ehb

#endif  // EHB_EXPERIMENTS_H_
