/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include "ehb/cli.h"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ehb/codec.h"
#include "ehb/experiments.h"
#include "ehb/synthetic.h"
#include "ehb/y4m.h"

namespace ehb {

namespace {

std::vector<uint8_t> read_binary(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::kIo, "cannot open " + path);
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(is),
                              std::istreambuf_iterator<char>());
}

void write_binary(const std::string &path, const std::vector<uint8_t> &bytes) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
  os.write(reinterpret_cast<const char *>(bytes.data()),
           std::streamsize(bytes.size()));
  if (!os) throw Error(ErrorKind::kIo, "short write to " + path);
}

void write_text(const std::string &path, const std::string &text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
  os << text;
  if (!os) throw Error(ErrorKind::kIo, "short write to " + path);
}

struct EncodeOptions {
  double base_step = 16.0;
  int intra_period = -1;
  bool no_lookahead = false;
  double lookahead_strength = 0.4;
  std::string omega_mode = "off";
  uint64_t seed = 1;
  bool adj_only = false;
  double lambda = 0.1;
  std::vector<double> weights;
};

void add_encode_options(CLI::App *cmd, EncodeOptions &opts) {
  cmd->add_option("--base-step", opts.base_step,
                  "base quantizer step (default 16)");
  cmd->add_option("--intra-period", opts.intra_period,
                  "intra frame spacing, -1 = first frame only");
  cmd->add_flag("--no-lookahead", opts.no_lookahead,
                "disable the one-frame lookahead");
  cmd->add_option("--lookahead-strength", opts.lookahead_strength,
                  "lookahead propagation strength in [0,1]");
  cmd->add_option("--omega-mode", opts.omega_mode,
                  "off | random-key: random quality scale on key frames")
      ->check(CLI::IsMember({"off", "random-key"}));
  cmd->add_option("--seed", opts.seed, "seed for the random quality scale");
  cmd->add_flag("--adj-only", opts.adj_only,
                "ablation: disable the key-frame reference");
  cmd->add_option("--lambda", opts.lambda,
                  "mode decision lambda coefficient (lambda * step^2)");
  cmd->add_option("--weights", opts.weights,
                  "four hierarchical layer weights")
      ->expected(4);
}

CodecConfig config_from_options(const EncodeOptions &opts, int n_frames) {
  CodecConfig config;
  config.structure.n_frames = n_frames;
  config.structure.intra_period = opts.intra_period;
  config.structure.base_step = opts.base_step;
  config.structure.lambda_base = opts.lambda;
  if (!opts.weights.empty())
    for (int i = 0; i < 4; ++i) config.structure.weights[i] = opts.weights[i];
  config.lookahead_enabled = !opts.no_lookahead;
  config.lookahead_strength = opts.lookahead_strength;
  config.omega_mode =
      opts.omega_mode == "random-key" ? OmegaMode::kRandomKey : OmegaMode::kOff;
  config.random_omega_seed = opts.seed;
  config.use_key_reference = !opts.adj_only;
  return config;
}

int run(int argc, const char *const *argv) {
  CLI::App app{"ehb: hierarchical-reference block video codec and test bench"};
  app.require_subcommand(1);

  // encode
  auto *encode = app.add_subcommand("encode", "encode a Y4M file to .ehb");
  std::string enc_in, enc_out, enc_csv;
  EncodeOptions enc_opts;
  encode->add_option("input", enc_in, "input .y4m")->required();
  encode->add_option("output", enc_out, "output .ehb")->required();
  add_encode_options(encode, enc_opts);
  encode->add_option("--csv", enc_csv, "write per-frame stats CSV");

  // decode
  auto *decode = app.add_subcommand("decode", "decode an .ehb file to Y4M");
  std::string dec_in, dec_out, dec_csv;
  decode->add_option("input", dec_in, "input .ehb")->required();
  decode->add_option("output", dec_out, "output .y4m")->required();
  decode->add_option("--csv", dec_csv, "write per-frame status CSV");

  // schedule
  auto *schedule = app.add_subcommand("schedule", "dump the coding plan CSV");
  int sch_frames = 9;
  EncodeOptions sch_opts;
  std::string sch_csv;
  schedule->add_option("--frames", sch_frames, "number of frames")->required();
  add_encode_options(schedule, sch_opts);
  schedule->add_option("--csv", sch_csv, "also write the CSV to a file");

  // synth
  auto *synth = app.add_subcommand("synth", "write a synthetic Y4M sequence");
  std::string synth_out;
  SyntheticSpec spec;
  std::string pattern_name = "mixed";
  std::vector<int> motion;
  synth->add_option("output", synth_out, "output .y4m")->required();
  synth->add_option("--seed", spec.seed, "generator seed");
  synth->add_option("--width", spec.width, "frame width (>= 32)");
  synth->add_option("--height", spec.height, "frame height (>= 32)");
  synth->add_option("--frames", spec.n_frames, "frame count");
  synth->add_option("--motion", motion, "per-frame translation dx dy")
      ->expected(2);
  synth->add_option("--sigma", spec.noise_sigma, "Gaussian noise sigma");
  synth->add_option("--pattern", pattern_name, "gradient | checker | mixed")
      ->check(CLI::IsMember({"gradient", "checker", "mixed"}));

  // sweep
  auto *sweep = app.add_subcommand("sweep", "encode at several steps, "
                                            "print the RD curve");
  std::string sweep_in, sweep_csv, sweep_report_prefix;
  std::vector<double> sweep_steps;
  EncodeOptions sweep_opts;
  sweep->add_option("input", sweep_in, "input .y4m")->required();
  sweep->add_option("--steps", sweep_steps, "base steps (>= 4)")
      ->required()
      ->expected(-4);
  add_encode_options(sweep, sweep_opts);
  sweep->add_option("--csv", sweep_csv, "write step,bpp,psnr rows");
  sweep->add_option("--report-prefix", sweep_report_prefix,
                    "write per-step report CSVs to <prefix><step>.csv");
  std::string sweep_anchor;
  sweep->add_option("--anchor-csv", sweep_anchor,
                    "step,bpp,psnr curve to compare against (prints BD-rate)");

  // robustness
  auto *robust = app.add_subcommand(
      "robustness", "no-information-frame test: corrupt one source frame");
  std::string rob_in, rob_csv;
  int rob_index = 10;
  EncodeOptions rob_opts;
  robust->add_option("input", rob_in, "input .y4m")->required();
  robust->add_option("--corrupt-index", rob_index,
                     "frame replaced by constant 128");
  add_encode_options(robust, rob_opts);
  robust->add_option("--csv", rob_csv, "write the report CSV");

  // quality-report
  auto *quality = app.add_subcommand(
      "quality-report", "per-frame PSNR trace and layer ordering summary");
  std::string qual_in, qual_csv;
  EncodeOptions qual_opts;
  quality->add_option("input", qual_in, "input .y4m")->required();
  add_encode_options(quality, qual_opts);
  quality->add_option("--csv", qual_csv, "write the report CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (encode->parsed()) {
    Sequence seq = read_y4m_file(enc_in);
    CodecConfig config = config_from_options(enc_opts, int(seq.frames.size()));
    EncodeResult result = encode_sequence(seq, config);
    write_binary(enc_out, result.bitstream);
    if (!enc_csv.empty()) {
      ExperimentReport report = report_from_stats(result.stats);
      report.add_summary("bpp", result.rd.bpp);
      report.add_summary("mean_psnr", result.rd.psnr);
      write_text(enc_csv, report.to_csv());
    }
    std::printf("encoded %zu frames, %zu bytes, %.4f bpp, %.2f dB\n",
                seq.frames.size(), result.bitstream.size(), result.rd.bpp,
                result.rd.psnr);
    return 0;
  }

  if (decode->parsed()) {
    std::vector<uint8_t> bytes = read_binary(dec_in);
    DecodeResult result = decode_sequence(bytes);
    if (result.error)
      throw Error(result.error->kind, result.error->message);
    write_y4m_file(dec_out, result.sequence);
    if (!dec_csv.empty()) {
      ExperimentReport report;
      for (size_t i = 0; i < result.sequence.frames.size(); ++i) {
        ReportRow r;
        r.index = int(i);
        r.flagged = !result.frame_ok[i];
        report.rows.push_back(r);
      }
      write_text(dec_csv, report.to_csv());
    }
    std::printf("decoded %zu frames\n", result.sequence.frames.size());
    return 0;
  }

  if (schedule->parsed()) {
    CodecConfig config = config_from_options(sch_opts, sch_frames);
    std::string csv = schedule_to_csv(build_schedule(config.structure));
    std::fputs(csv.c_str(), stdout);
    if (!sch_csv.empty()) write_text(sch_csv, csv);
    return 0;
  }

  if (synth->parsed()) {
    if (!motion.empty()) {
      spec.motion_dx = motion[0];
      spec.motion_dy = motion[1];
    }
    spec.pattern = pattern_from_name(pattern_name);
    write_y4m_file(synth_out, gen_synthetic(spec));
    std::printf("wrote %d frames of %dx%d to %s\n", spec.n_frames, spec.width,
                spec.height, synth_out.c_str());
    return 0;
  }

  if (sweep->parsed()) {
    Sequence seq = read_y4m_file(sweep_in);
    CodecConfig config =
        config_from_options(sweep_opts, int(seq.frames.size()));
    SweepResult result = run_rd_sweep(seq, sweep_steps, config);
    std::ostringstream os;
    os << "step,bpp,psnr\n";
    for (size_t i = 0; i < sweep_steps.size(); ++i) {
      const ExperimentReport &rep = result.reports[i];
      os << sweep_steps[i] << ',' << rep.summary_value("bpp") << ','
         << rep.summary_value("mean_psnr") << '\n';
    }
    std::fputs(os.str().c_str(), stdout);
    if (!sweep_anchor.empty()) {
      std::ifstream is(sweep_anchor);
      if (!is) throw Error(ErrorKind::kIo, "cannot open " + sweep_anchor);
      std::vector<RdPoint> pts;
      std::string line;
      std::getline(is, line);  // header
      while (std::getline(is, line)) {
        if (line.empty()) continue;
        double step_v, bpp_v, psnr_v;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &step_v, &bpp_v,
                        &psnr_v) != 3)
          throw Error(ErrorKind::kMalformed, "bad curve row: " + line);
        pts.push_back({bpp_v, psnr_v});
      }
      double bd = bd_rate(RdCurve(std::move(pts)), result.curve);
      std::printf("bd-rate vs anchor: %+.2f%%\n", bd);
    }
    if (!sweep_csv.empty()) write_text(sweep_csv, os.str());
    if (!sweep_report_prefix.empty())
      for (size_t i = 0; i < sweep_steps.size(); ++i) {
        std::ostringstream name;
        name << sweep_report_prefix << sweep_steps[i] << ".csv";
        write_text(name.str(), result.reports[i].to_csv());
      }
    return 0;
  }

  if (robust->parsed()) {
    Sequence seq = read_y4m_file(rob_in);
    CodecConfig config = config_from_options(rob_opts, int(seq.frames.size()));
    ExperimentReport report = run_no_information_test(seq, rob_index, config);
    std::printf("post-corruption mean PSNR %.2f dB (control %.2f dB, gap "
                "%.2f dB)\n",
                report.summary_value("mean_psnr_post"),
                report.summary_value("mean_psnr_control"),
                report.summary_value("recovery_gap_db"));
    if (!rob_csv.empty()) write_text(rob_csv, report.to_csv());
    return 0;
  }

  if (quality->parsed()) {
    Sequence seq = read_y4m_file(qual_in);
    CodecConfig config =
        config_from_options(qual_opts, int(seq.frames.size()));
    ExperimentReport report = run_quality_structure_report(seq, config);
    if (report.summary_value("ordering_checked") != 0.0)
      std::printf("layer means: Key %.2f dB, High %.2f dB, Low %.2f dB "
                  "(ordering %s)\n",
                  report.summary_value("mean_psnr_key"),
                  report.summary_value("mean_psnr_high"),
                  report.summary_value("mean_psnr_low"),
                  report.summary_value("ordering_ok") != 0.0 ? "ok" : "BROKEN");
    else
      std::printf("sequence too short for layer ordering statistics\n");
    if (!qual_csv.empty()) write_text(qual_csv, report.to_csv());
    return 0;
  }

  return 1;
}

}  // namespace

int cli_main(int argc, const char *const *argv) {
  try {
    return run(argc, argv);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
}

}  // namespace ehb
