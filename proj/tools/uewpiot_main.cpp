// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

#include "uewpiot/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return uewpiot::cli::run_cli(argc, argv, std::cout, std::cerr); }
