//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RSMILES_CLI_H_
#define RSMILES_CLI_H_

namespace rsmiles {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

/// Entry point of the `rsmiles` executable.
int run_cli(int argc, char **argv);

}  // namespace rsmiles

#endif  // RSMILES_CLI_H_
