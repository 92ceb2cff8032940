/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#ifndef EHB_COMMON_H_
#define EHB_COMMON_H_

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ehb {

enum class ErrorKind {
  kBadArgument,    // precondition violated by the caller
  kBadMagic,       // stream does not start with the expected magic
  kTruncated,      // ran out of bytes mid-stream
  kMalformed,      // syntactically invalid stream content
  kOmegaRange,     // transmitted quality scale outside [0.8, 1.2]
  kUnsupported,    // valid input using a feature we do not handle
  kIo,             // file system failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Single rounding rule used everywhere a real must become an integer:
// round half away from zero.
inline int64_t round_half_away(double v) {
  return static_cast<int64_t>(v < 0 ? std::ceil(v - 0.5) : std::floor(v + 0.5));
}

inline uint8_t clamp_pixel(double v) {
  if (v <= 0.0) return 0;
  if (v >= 255.0) return 255;
  return static_cast<uint8_t>(round_half_away(v));
}

}  // namespace ehb

#endif  // EHB_COMMON_H_
