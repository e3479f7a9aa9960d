// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

// Re-derives the shipped channel defaults: the LoS excess loss that puts the
// 400 MHz / 32 element / 10 m hover EH distance at 13 m, and the receiver
// noise figure that gives 65 Mbit/s at 900 MHz / 32 elements / 10 m.

#include "uewpiot/linkbudget.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

int main(int argc, char** argv) {
    namespace lb = uewpiot::linkbudget;
    lb::CalibrationTargets targets;

    CLI::App app{"Calibrate excess loss and noise figure against the EH-distance and rate targets"};
    app.add_option("--eh-distance", targets.eh_distance_m, "target EH distance at 400 MHz [m]");
    app.add_option("--rate", targets.rate_bps, "target uplink rate at 900 MHz [bit/s]");
    app.add_option("--nlos-penalty", targets.nlos_penalty_db, "NLoS excess above LoS excess [dB]");
    CLI11_PARSE(app, argc, argv);

    const auto result = lb::calibrate(targets);
    fmt::print("link.excess_los_db = {:.4f}\n", result.excess.los_db);
    fmt::print("link.excess_nlos_db = {:.4f}\n", result.excess.nlos_db);
    fmt::print("link.noise_figure_db = {:.4f}\n", result.noise_figure_db);
    fmt::print("# eh_distance_m = {:.4f}, rate_bps = {:.1f}\n", result.eh_distance_m, result.rate_bps);
    return 0;
}
