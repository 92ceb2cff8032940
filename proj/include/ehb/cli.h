/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#ifndef EHB_CLI_H_
#define EHB_CLI_H_

namespace ehb {

// Entry point behind the ehb tool. Exit codes: 0 success, 1 usage error,
// 2 data/processing error.
int cli_main(int argc, const char *const *argv);

}  // namespace ehb

#endif  // EHB_CLI_H_
