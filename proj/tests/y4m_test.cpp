/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include <doctest.h>

#include <string>

#include "ehb/y4m.h"

using namespace ehb;

namespace {

std::vector<uint8_t> bytes_of(const std::string &s) {
  return std::vector<uint8_t>(s.begin(), s.end());
}

}  // namespace

TEST_CASE("minimal hand-built 2x2 stream parses") {
  std::string data = "YUV4MPEG2 W2 H2 F25:1 Ip A1:1 C420\nFRAME\n";
  data += std::string("\x10\x20\x30\x40", 4);  // Y
  data += '\x80';                              // U
  data += '\x7f';                              // V
  Sequence seq = parse_y4m(bytes_of(data));
  REQUIRE(seq.frames.size() == 1);
  CHECK(seq.frames[0].width() == 2);
  CHECK(seq.frames[0].height() == 2);
  CHECK(seq.fps_num == 25);
  CHECK(seq.frames[0].at(0, 0) == 0x10);
  CHECK(seq.frames[0].at(1, 1) == 0x40);
  CHECK(seq.frames[0].has_chroma());
  CHECK(seq.frames[0].chroma_u()[0] == 0x80);
}

TEST_CASE("write then parse then write is byte-identical") {
  Sequence seq;
  seq.fps_num = 30;
  seq.fps_den = 1;
  for (int t = 0; t < 3; ++t) {
    Frame f(34, 18);  // odd-ish dims exercise chroma rounding
    for (int y = 0; y < 18; ++y)
      for (int x = 0; x < 34; ++x) f.set(x, y, uint8_t((x * y + t) % 256));
    seq.frames.push_back(std::move(f));
  }
  std::vector<uint8_t> first = write_y4m(seq);
  Sequence parsed = parse_y4m(first);
  std::vector<uint8_t> second = write_y4m(parsed);
  CHECK(first == second);
  REQUIRE(parsed.frames.size() == 3);
  CHECK(parsed.frames[1].luma() == seq.frames[1].luma());
}

TEST_CASE("unsupported colorspace is a distinct error") {
  std::string data = "YUV4MPEG2 W2 H2 F25:1 C444\nFRAME\n";
  try {
    parse_y4m(bytes_of(data));
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kUnsupported);
  }
}

TEST_CASE("truncated frame data is a distinct error") {
  std::string data = "YUV4MPEG2 W4 H4 F25:1 C420\nFRAME\n";
  data += std::string(10, '\x55');  // needs 16 + 4 + 4
  try {
    parse_y4m(bytes_of(data));
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kTruncated);
  }
}

TEST_CASE("missing required parameters are rejected") {
  CHECK_THROWS_AS(parse_y4m(bytes_of("YUV4MPEG2 W2 H2\nFRAME\n")), Error);
  CHECK_THROWS_AS(parse_y4m(bytes_of("YUV4MPEG2 H2 F25:1\nFRAME\n")), Error);
  CHECK_THROWS_AS(parse_y4m(bytes_of("MPEG W2 H2 F25:1\n")), Error);
}

TEST_CASE("FRAME parameters are tolerated") {
  std::string data = "YUV4MPEG2 W2 H2 F25:1\nFRAME Xsome param\n";
  data += std::string(6, '\x22');
  Sequence seq = parse_y4m(bytes_of(data));
  CHECK(seq.frames.size() == 1);
}
