/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include "ehb/experiments.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ehb {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

double ExperimentReport::summary_value(const std::string &key) const {
  for (const auto &[k, v] : summary)
    if (k == key) return v;
  throw Error(ErrorKind::kBadArgument, "no summary entry: " + key);
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream os;
  os << "record,index,type,layer,omega,bits,psnr,flagged\n";
  for (const ReportRow &r : rows)
    os << "frame," << r.index << ',' << r.type << ',' << r.layer << ','
       << format_double(r.omega) << ',' << r.bits << ','
       << format_double(r.psnr) << ',' << (r.flagged ? 1 : 0) << '\n';
  for (const auto &[key, value] : summary)
    os << "summary," << key << ',' << format_double(value) << '\n';
  return os.str();
}

ExperimentReport ExperimentReport::from_csv(const std::string &csv) try {
  ExperimentReport report;
  std::istringstream is(csv);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("record,", 0) == 0) continue;
    }
    std::vector<std::string> f = split_csv_line(line);
    if (f[0] == "frame") {
      if (f.size() != 8)
        throw Error(ErrorKind::kMalformed, "bad frame row: " + line);
      ReportRow r;
      r.index = std::stoi(f[1]);
      r.type = f[2].empty() ? '?' : f[2][0];
      r.layer = f[3];
      r.omega = std::stod(f[4]);
      r.bits = std::stoull(f[5]);
      r.psnr = std::stod(f[6]);
      r.flagged = f[7] == "1";
      report.rows.push_back(std::move(r));
    } else if (f[0] == "summary") {
      if (f.size() != 3)
        throw Error(ErrorKind::kMalformed, "bad summary row: " + line);
      report.add_summary(f[1], std::stod(f[2]));
    } else {
      throw Error(ErrorKind::kMalformed, "unknown record kind: " + line);
    }
  }
  return report;
} catch (const Error &) {
  throw;
} catch (const std::exception &e) {
  throw Error(ErrorKind::kMalformed, std::string("bad report CSV: ") + e.what());
}

ExperimentReport report_from_stats(const std::vector<FrameStats> &stats) {
  ExperimentReport report;
  for (const FrameStats &s : stats) {
    ReportRow r;
    r.index = s.index;
    r.type = s.type == FrameType::kIntra ? 'I' : 'P';
    r.layer = s.layer ? layer_name(s.layer->id) : "-";
    r.omega = s.omega;
    r.bits = s.bits;
    r.psnr = s.psnr;
    report.rows.push_back(std::move(r));
  }
  return report;
}

SweepResult run_rd_sweep(const Sequence &seq,
                         const std::vector<double> &base_steps,
                         const CodecConfig &config_template) {
  if (base_steps.size() < 4)
    throw Error(ErrorKind::kBadArgument, "RD sweep needs at least 4 steps");
  std::vector<RdPoint> points;
  std::vector<ExperimentReport> reports;
  for (double step : base_steps) {
    CodecConfig config = config_template;
    config.structure.base_step = step;
    config.structure.n_frames = int(seq.frames.size());
    EncodeResult enc = encode_sequence(seq, config);
    points.push_back(enc.rd);
    ExperimentReport report = report_from_stats(enc.stats);
    report.add_summary("base_step", step);
    report.add_summary("bpp", enc.rd.bpp);
    report.add_summary("mean_psnr", enc.rd.psnr);
    reports.push_back(std::move(report));
  }
  return {RdCurve(std::move(points)), std::move(reports)};
}

ExperimentReport run_no_information_test(const Sequence &seq,
                                         int corrupt_index,
                                         const CodecConfig &config_in) {
  CodecConfig config = config_in;
  config.structure.n_frames = int(seq.frames.size());
  std::vector<FrameSchedule> schedule = build_schedule(config.structure);
  if (corrupt_index < 0 || corrupt_index >= int(seq.frames.size()))
    throw Error(ErrorKind::kBadArgument, "corrupt index out of range");
  if (schedule[corrupt_index].frame_type != FrameType::kInter)
    throw Error(ErrorKind::kBadArgument,
                "corrupt index must be an inter frame");

  Sequence corrupted = seq;
  corrupted.frames[corrupt_index] =
      Frame(seq.frames[0].width(), seq.frames[0].height(), 128);

  EncodeResult clean = encode_sequence(seq, config);
  EncodeResult broken = encode_sequence(corrupted, config);

  ExperimentReport report;
  for (size_t i = 0; i < broken.stats.size(); ++i) {
    ReportRow r;
    r.index = int(i);
    r.type = broken.stats[i].type == FrameType::kIntra ? 'I' : 'P';
    r.layer = broken.stats[i].layer ? layer_name(broken.stats[i].layer->id)
                                    : "-";
    r.omega = broken.stats[i].omega;
    r.bits = broken.stats[i].bits;
    // Quality against the original, uncorrupted source.
    r.psnr = std::min(psnr(seq.frames[i], broken.reconstructions[i]), 99.0);
    r.flagged = int(i) == corrupt_index;
    report.rows.push_back(std::move(r));
  }

  int lo = corrupt_index + 2;
  int hi = std::min<int>(corrupt_index + 8, int(seq.frames.size()) - 1);
  double post = 0.0, control = 0.0;
  int count = 0;
  for (int i = lo; i <= hi; ++i) {
    post += report.rows[i].psnr;
    control += std::min(clean.stats[i].psnr, 99.0);
    ++count;
  }
  if (count > 0) {
    post /= count;
    control /= count;
  }
  uint64_t clean_bits = 0, broken_bits = 0;
  for (const FrameStats &s : clean.stats) clean_bits += s.bits;
  for (const FrameStats &s : broken.stats) broken_bits += s.bits;

  report.add_summary("corrupt_index", corrupt_index);
  report.add_summary("post_window_lo", lo);
  report.add_summary("post_window_hi", hi);
  report.add_summary("mean_psnr_post", post);
  report.add_summary("mean_psnr_control", control);
  report.add_summary("recovery_gap_db", control - post);
  report.add_summary("total_bits", double(broken_bits));
  report.add_summary("control_total_bits", double(clean_bits));
  return report;
}

ExperimentReport run_quality_structure_report(const Sequence &seq,
                                              const CodecConfig &config_in) {
  CodecConfig config = config_in;
  config.structure.n_frames = int(seq.frames.size());
  EncodeResult enc = encode_sequence(seq, config);
  ExperimentReport report = report_from_stats(enc.stats);

  double sums[3] = {0, 0, 0};
  int counts[3] = {0, 0, 0};
  for (const FrameStats &s : enc.stats) {
    if (!s.layer) continue;
    int idx = s.layer->id == LayerId::kKey ? 0
            : s.layer->id == LayerId::kHigh ? 1
                                            : 2;
    sums[idx] += std::min(s.psnr, 99.0);
    ++counts[idx];
  }
  bool checkable = counts[0] > 0 && counts[1] > 0 && counts[2] > 0;
  report.add_summary("ordering_checked", checkable ? 1.0 : 0.0);
  if (checkable) {
    double key = sums[0] / counts[0];
    double high = sums[1] / counts[1];
    double low = sums[2] / counts[2];
    report.add_summary("mean_psnr_key", key);
    report.add_summary("mean_psnr_high", high);
    report.add_summary("mean_psnr_low", low);
    report.add_summary("ordering_ok", key > high && high > low ? 1.0 : 0.0);
  } else {
    // Not enough inter frames to populate every layer; flag the rows so a
    // reader knows the ordering statistics were skipped.
    for (ReportRow &r : report.rows) r.flagged = r.type == 'P';
  }
  report.add_summary("bpp", enc.rd.bpp);
  report.add_summary("mean_psnr", enc.rd.psnr);
  return report;
}

}  // namespace ehb
