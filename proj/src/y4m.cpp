/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include "ehb/y4m.h"

#include <cstdio>
#include <cstring>
#include <sstream>

namespace ehb {

namespace {

// Splits a header line into space-separated parameter tokens.
std::vector<std::string> split_tokens(const std::string &line) {
  std::vector<std::string> tokens;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) tokens.push_back(tok);
  return tokens;
}

long parse_number(const std::string &s, const char *what) {
  if (s.empty()) throw Error(ErrorKind::kMalformed, std::string("empty ") + what);
  char *end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || v <= 0)
    throw Error(ErrorKind::kMalformed, std::string("bad ") + what + ": " + s);
  return v;
}

}  // namespace

Sequence parse_y4m(std::span<const uint8_t> bytes) {
  size_t pos = 0;
  auto read_line = [&]() {
    std::string line;
    while (pos < bytes.size() && bytes[pos] != '\n') {
      line.push_back(char(bytes[pos++]));
      if (line.size() > 512)
        throw Error(ErrorKind::kMalformed, "unterminated Y4M header line");
    }
    if (pos >= bytes.size())
      throw Error(ErrorKind::kTruncated, "missing newline in Y4M header");
    ++pos;  // consume '\n'
    return line;
  };

  std::string header = read_line();
  const std::string magic = "YUV4MPEG2";
  if (header.compare(0, magic.size(), magic) != 0)
    throw Error(ErrorKind::kBadMagic, "not a YUV4MPEG2 stream");

  int width = 0, height = 0, fps_num = 0, fps_den = 0;
  bool have_chroma_tag = false;
  std::string chroma_tag;
  for (const std::string &tok : split_tokens(header.substr(magic.size()))) {
    switch (tok[0]) {
      case 'W': width = int(parse_number(tok.substr(1), "width")); break;
      case 'H': height = int(parse_number(tok.substr(1), "height")); break;
      case 'F': {
        size_t colon = tok.find(':');
        if (colon == std::string::npos)
          throw Error(ErrorKind::kMalformed, "bad frame rate: " + tok);
        fps_num = int(parse_number(tok.substr(1, colon - 1), "frame rate"));
        fps_den = int(parse_number(tok.substr(colon + 1), "frame rate"));
        break;
      }
      case 'C':
        have_chroma_tag = true;
        chroma_tag = tok;
        break;
      case 'I':
        if (tok != "Ip" && tok != "I?")
          throw Error(ErrorKind::kUnsupported,
                      "interlaced Y4M is not supported: " + tok);
        break;
      default:
        break;  // aspect ratio and extensions are ignored
    }
  }
  if (width == 0 || height == 0)
    throw Error(ErrorKind::kMalformed, "Y4M header missing W or H");
  if (width > 32768 || height > 32768)
    throw Error(ErrorKind::kUnsupported, "Y4M dimensions too large");
  if (fps_num == 0 || fps_den == 0)
    throw Error(ErrorKind::kMalformed, "Y4M header missing F");
  if (have_chroma_tag && chroma_tag.rfind("C420", 0) != 0)
    throw Error(ErrorKind::kUnsupported,
                "unsupported colorspace: " + chroma_tag);

  Sequence seq;
  seq.fps_num = fps_num;
  seq.fps_den = fps_den;
  const size_t y_size = size_t(width) * height;
  const size_t c_size = size_t((width + 1) / 2) * ((height + 1) / 2);

  while (pos < bytes.size()) {
    std::string marker = read_line();
    if (marker.compare(0, 5, "FRAME") != 0)
      throw Error(ErrorKind::kMalformed, "expected FRAME marker");
    if (bytes.size() - pos < y_size + 2 * c_size)
      throw Error(ErrorKind::kTruncated, "truncated Y4M frame data");
    Frame f(width, height,
            std::vector<uint8_t>(bytes.begin() + pos,
                                 bytes.begin() + pos + y_size));
    pos += y_size;
    std::vector<uint8_t> u(bytes.begin() + pos, bytes.begin() + pos + c_size);
    pos += c_size;
    std::vector<uint8_t> v(bytes.begin() + pos, bytes.begin() + pos + c_size);
    pos += c_size;
    f.set_chroma(std::move(u), std::move(v));
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

std::vector<uint8_t> write_y4m(const Sequence &seq) {
  if (seq.frames.empty())
    throw Error(ErrorKind::kBadArgument, "cannot write empty sequence");
  const Frame &first = seq.frames[0];
  char header[96];
  int n = std::snprintf(header, sizeof header,
                        "YUV4MPEG2 W%d H%d F%d:%d Ip A1:1 C420jpeg\n",
                        first.width(), first.height(), seq.fps_num,
                        seq.fps_den);
  std::vector<uint8_t> out(header, header + n);
  const size_t c_size =
      size_t(first.chroma_width()) * first.chroma_height();
  for (const Frame &f : seq.frames) {
    if (!f.same_dimensions(first))
      throw Error(ErrorKind::kBadArgument, "frames differ in size");
    const char *marker = "FRAME\n";
    out.insert(out.end(), marker, marker + 6);
    out.insert(out.end(), f.luma().begin(), f.luma().end());
    if (f.has_chroma()) {
      out.insert(out.end(), f.chroma_u().begin(), f.chroma_u().end());
      out.insert(out.end(), f.chroma_v().begin(), f.chroma_v().end());
    } else {
      out.insert(out.end(), c_size, 128);
      out.insert(out.end(), c_size, 128);
    }
  }
  return out;
}

Sequence read_y4m_file(const std::string &path) {
  std::FILE *fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::vector<uint8_t> bytes;
  uint8_t buf[65536];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, fp)) > 0)
    bytes.insert(bytes.end(), buf, buf + n);
  std::fclose(fp);
  return parse_y4m(bytes);
}

void write_y4m_file(const std::string &path, const Sequence &seq) {
  std::vector<uint8_t> bytes = write_y4m(seq);
  std::FILE *fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
  size_t written = std::fwrite(bytes.data(), 1, bytes.size(), fp);
  std::fclose(fp);
  if (written != bytes.size())
    throw Error(ErrorKind::kIo, "short write to " + path);
}

}  // namespace ehb
