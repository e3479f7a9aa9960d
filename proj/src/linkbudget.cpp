// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

#include "uewpiot/linkbudget.hpp"

#include "uewpiot/error.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace uewpiot::linkbudget {

namespace {

struct BandThreshold {
    double band_hz;
    double threshold_dbm;
};

// Rectifier sensitivities of commercial harvesters per band.
constexpr std::array<BandThreshold, 3> kBandThresholds{{
    {400e6, -20.0},
    {900e6, -23.0},
    {2.4e9, -50.0},
}};

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ConfigError(fmt::format("{} must be positive and finite, got {}", what, value));
    }
}

} // namespace

RadioEnvironment::RadioEnvironment(double carrier_frequency_hz, LosParameters los,
                                   ExcessLoss excess)
    : frequency_(carrier_frequency_hz), los_(los), excess_(excess) {
    require_positive(frequency_, "carrier frequency");
    require_positive(los_.a, "LoS parameter a");
    require_positive(los_.b, "LoS parameter b");
    if (!(excess_.los_db >= 0.0)) {
        throw ConfigError(fmt::format("LoS excess loss must be >= 0 dB, got {}", excess_.los_db));
    }
    if (!(excess_.nlos_db >= excess_.los_db)) {
        throw ConfigError(fmt::format(
            "NLoS excess loss ({} dB) below LoS excess loss ({} dB): path loss would not "
            "be monotone in distance",
            excess_.nlos_db, excess_.los_db));
    }
}

AntennaArray::AntennaArray(int rows, int cols, double spacing_wavelengths)
    : rows_(rows), cols_(cols), spacing_(spacing_wavelengths) {
    if (rows_ < 1 || cols_ < 1) {
        throw ConfigError(fmt::format("array layout {}x{} needs at least one element", rows_, cols_));
    }
    require_positive(spacing_, "element spacing");
}

EhCircuit::EhCircuit(double band_hz, double conversion_efficiency,
                     std::optional<double> input_threshold_dbm)
    : band_(band_hz), efficiency_(conversion_efficiency), threshold_(input_threshold_dbm) {
    require_positive(band_, "harvester band");
    if (!(efficiency_ > 0.0 && efficiency_ <= 1.0)) {
        throw ConfigError(
            fmt::format("conversion efficiency must lie in (0, 1], got {}", efficiency_));
    }
}

LinkGeometry LinkGeometry::from_slant(double uav_height_m, double slant_distance_m) {
    if (!(uav_height_m >= 0.0) || !std::isfinite(uav_height_m)) {
        throw GeometryError(fmt::format("UAV height must be >= 0, got {}", uav_height_m));
    }
    if (!(slant_distance_m >= uav_height_m) || !std::isfinite(slant_distance_m)) {
        throw GeometryError(fmt::format("slant distance {} m shorter than UAV height {} m",
                                        slant_distance_m, uav_height_m));
    }
    if (slant_distance_m == 0.0) {
        throw GeometryError("zero slant distance: path loss is singular");
    }
    return LinkGeometry(uav_height_m, slant_distance_m);
}

LinkGeometry LinkGeometry::from_ground(double uav_height_m, double ground_distance_m) {
    if (!(ground_distance_m >= 0.0)) {
        throw GeometryError(fmt::format("ground distance must be >= 0, got {}", ground_distance_m));
    }
    return from_slant(uav_height_m, std::hypot(uav_height_m, ground_distance_m));
}

double LinkGeometry::ground_distance_m() const {
    return std::sqrt(std::max(0.0, slant_ * slant_ - height_ * height_));
}

double LinkGeometry::elevation_deg() const {
    const double ratio = std::min(1.0, height_ / slant_);
    return std::asin(ratio) * 180.0 / std::numbers::pi;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double wavelength(const RadioEnvironment& env) {
    return RadioEnvironment::speed_of_light() / env.carrier_frequency_hz();
}

ArraySize upa_physical_size(const RadioEnvironment& env, int rows, int cols,
                            double spacing_wavelengths) {
    const AntennaArray layout(rows, cols, spacing_wavelengths);
    return upa_physical_size(env, layout);
}

ArraySize upa_physical_size(const RadioEnvironment& env, const AntennaArray& array) {
    const double pitch = array.spacing_wavelengths() * wavelength(env);
    return {(array.rows() - 1) * pitch, (array.cols() - 1) * pitch};
}

double array_gain_db(const AntennaArray& array) {
    return 10.0 * std::log10(static_cast<double>(array.elements()));
}

double los_probability(const RadioEnvironment& env, const LinkGeometry& geom) {
    const auto& p = env.los();
    return 1.0 / (1.0 + p.a * std::exp(-p.b * (geom.elevation_deg() - p.a)));
}

double free_space_path_loss_db(const RadioEnvironment& env, double slant_distance_m) {
    if (!(slant_distance_m > 0.0)) {
        throw GeometryError("free-space path loss is singular at zero distance");
    }
    return 20.0 * std::log10(4.0 * std::numbers::pi * slant_distance_m *
                             env.carrier_frequency_hz() / RadioEnvironment::speed_of_light());
}

double expected_path_loss_db(const RadioEnvironment& env, const LinkGeometry& geom) {
    const double p_los = los_probability(env, geom);
    return free_space_path_loss_db(env, geom.slant_distance_m()) +
           p_los * env.excess().los_db + (1.0 - p_los) * env.excess().nlos_db;
}

double received_power_dbm(double tx_power_w, const AntennaArray& array,
                          const RadioEnvironment& env, const LinkGeometry& geom) {
    require_positive(tx_power_w, "transmit power");
    return watts_to_dbm(tx_power_w) + array_gain_db(array) - expected_path_loss_db(env, geom);
}

double harvested_power_dbm(double tx_power_w, const AntennaArray& array,
                           const EhCircuit& circuit, const RadioEnvironment& env,
                           const LinkGeometry& geom) {
    return received_power_dbm(tx_power_w, array, env, geom) +
           10.0 * std::log10(circuit.conversion_efficiency());
}

double eh_input_threshold_dbm(const EhCircuit& circuit) {
    if (circuit.explicit_threshold_dbm()) {
        return *circuit.explicit_threshold_dbm();
    }
    for (const auto& entry : kBandThresholds) {
        if (std::abs(circuit.band_hz() - entry.band_hz) <= 1e-6 * entry.band_hz) {
            return entry.threshold_dbm;
        }
    }
    throw ConfigError(fmt::format(
        "no harvester threshold known for band {} Hz; configure one explicitly", circuit.band_hz()));
}

std::optional<double> achievable_eh_distance(double tx_power_w, const AntennaArray& array,
                                             const EhCircuit& circuit,
                                             const RadioEnvironment& env, double uav_height_m,
                                             const EhSearch& search) {
    if (!(uav_height_m >= 0.0)) {
        throw GeometryError(fmt::format("UAV height must be >= 0, got {}", uav_height_m));
    }
    const double threshold = eh_input_threshold_dbm(circuit);
    auto margin = [&](double d) {
        const auto geom = LinkGeometry::from_slant(uav_height_m, d);
        const double p = search.reference == ThresholdReference::Harvested
                             ? harvested_power_dbm(tx_power_w, array, circuit, env, geom)
                             : received_power_dbm(tx_power_w, array, env, geom);
        return p - threshold;
    };

    double lo = std::max(uav_height_m, search.min_distance_m);
    double hi = std::max(lo, search.max_distance_m);
    if (margin(lo) < 0.0) {
        return std::nullopt;
    }
    if (margin(hi) >= 0.0) {
        return hi;
    }
    // Invariant: margin(lo) >= 0 > margin(hi).
    while (hi - lo > 1e-7 * std::max(1.0, lo)) {
        const double mid = 0.5 * (lo + hi);
        if (margin(mid) >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

double noise_power_dbm(double bandwidth_hz, double noise_figure_db) {
    require_positive(bandwidth_hz, "bandwidth");
    return kThermalNoiseDbmPerHz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double shannon_rate(double bandwidth_hz, double snr_linear) {
    require_positive(bandwidth_hz, "bandwidth");
    if (snr_linear <= 0.0) {
        return 0.0;
    }
    return bandwidth_hz * std::log2(1.0 + snr_linear);
}

double uplink_snr_db(const LinkGeometry& geom, const RadioEnvironment& env,
                     const AntennaArray& array, const EhCircuit& circuit, double tx_power_w,
                     double bandwidth_hz, double noise_figure_db) {
    const double node_tx_dbm = harvested_power_dbm(tx_power_w, array, circuit, env, geom);
    const double at_uav_dbm = node_tx_dbm + array_gain_db(array) - expected_path_loss_db(env, geom);
    return at_uav_dbm - noise_power_dbm(bandwidth_hz, noise_figure_db);
}

double achievable_data_rate(const LinkGeometry& geom, const RadioEnvironment& env,
                            const AntennaArray& array, const EhCircuit& circuit,
                            double tx_power_w, double bandwidth_hz, double noise_figure_db) {
    const double snr_db =
        uplink_snr_db(geom, env, array, circuit, tx_power_w, bandwidth_hz, noise_figure_db);
    return shannon_rate(bandwidth_hz, std::pow(10.0, snr_db / 10.0));
}

namespace {

// Root of a monotone function on [lo, hi] by bisection; `increasing` tells the
// direction.
template <typename F>
double bisect(F&& f, double lo, double hi, bool increasing) {
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        const bool below = f(mid) < 0.0;
        if (below == increasing) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

CalibrationResult calibrate(const CalibrationTargets& t) {
    const EhCircuit eh_circuit(t.eh_frequency_hz, t.efficiency);
    const AntennaArray eh_array = AntennaArray::linear(t.eh_elements);

    auto environment_for = [&](double freq, double los_db) {
        return RadioEnvironment(freq, kSuburbanLos, ExcessLoss{los_db, los_db + t.nlos_penalty_db});
    };

    // EH distance shrinks as the excess loss grows.
    auto eh_error = [&](double los_db) {
        const auto env = environment_for(t.eh_frequency_hz, los_db);
        const auto d = achievable_eh_distance(t.tx_power_w, eh_array, eh_circuit, env, t.eh_height_m);
        return (d ? *d : 0.0) - t.eh_distance_m;
    };
    const double los_db = bisect(eh_error, 0.0, 100.0, false);
    const ExcessLoss excess{los_db, los_db + t.nlos_penalty_db};

    const auto rate_env = environment_for(t.rate_frequency_hz, los_db);
    const EhCircuit rate_circuit(t.rate_frequency_hz, t.efficiency);
    const AntennaArray rate_array = AntennaArray::linear(t.rate_elements);
    const auto rate_geom = LinkGeometry::from_slant(t.rate_distance_m, t.rate_distance_m);
    auto rate_error = [&](double nf_db) {
        return achievable_data_rate(rate_geom, rate_env, rate_array, rate_circuit, t.tx_power_w,
                                    t.bandwidth_hz, nf_db) -
               t.rate_bps;
    };
    const double nf_db = bisect(rate_error, -30.0, 60.0, false);

    const auto env = environment_for(t.eh_frequency_hz, los_db);
    const auto d = achievable_eh_distance(t.tx_power_w, eh_array, eh_circuit, env, t.eh_height_m);
    return {excess, nf_db, d.value_or(0.0),
            achievable_data_rate(rate_geom, rate_env, rate_array, rate_circuit, t.tx_power_w,
                                 t.bandwidth_hz, nf_db)};
}

} // namespace uewpiot::linkbudget
