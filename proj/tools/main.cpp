//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rsmiles/cli.h"

int main(int argc, char **argv) {
  return rsmiles::run_cli(argc, argv);
}
