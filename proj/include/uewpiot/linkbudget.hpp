// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

#ifndef UEWPIOT_LINKBUDGET_HPP
#define UEWPIOT_LINKBUDGET_HPP

#include <optional>

namespace uewpiot::linkbudget {

/// Fixed at 3e8 m/s so array sizes come out in round wavelength fractions.
inline constexpr double kSpeedOfLight = 3.0e8;

/// Thermal noise density at 290 K.
inline constexpr double kThermalNoiseDbmPerHz = -174.0;

inline constexpr double kDefaultEfficiency = 0.3;
inline constexpr double kDefaultNoiseFigureDb = 5.1;

/// Sigmoid LoS-probability parameters, P = 1 / (1 + a exp(-b (theta - a))),
/// theta in degrees.
struct LosParameters {
    double a = 4.88;
    double b = 0.43;
};

/// Mean excess path loss on top of free space for LoS and NLoS links.
struct ExcessLoss {
    double los_db = 0.0;
    double nlos_db = 0.0;
};

inline constexpr LosParameters kSuburbanLos{4.88, 0.43};

/// Textbook suburban excess losses.
inline constexpr ExcessLoss kSuburbanExcess{0.1, 21.0};

/// Shipped defaults, produced by `uewpiot-calibrate`. LoS excess is solved so
/// the 400 MHz / 32 element / 10 m hover EH distance is 13 m; the NLoS value
/// keeps the suburban 20.9 dB NLoS penalty on top of it.
inline constexpr ExcessLoss kCalibratedExcess{23.06, 43.96};

/// Carrier and channel parameterization of the air-to-ground link.
class RadioEnvironment {
public:
    /// Throws ConfigError on f <= 0, a <= 0, b <= 0 or
    /// nlos < los, los < 0 (a channel whose loss is not monotone in distance).
    explicit RadioEnvironment(double carrier_frequency_hz,
                              LosParameters los = kSuburbanLos,
                              ExcessLoss excess = kCalibratedExcess);

    static RadioEnvironment suburban(double carrier_frequency_hz) {
        return RadioEnvironment(carrier_frequency_hz, kSuburbanLos, kSuburbanExcess);
    }
    static RadioEnvironment calibrated(double carrier_frequency_hz) {
        return RadioEnvironment(carrier_frequency_hz, kSuburbanLos, kCalibratedExcess);
    }
    static RadioEnvironment free_space(double carrier_frequency_hz) {
        return RadioEnvironment(carrier_frequency_hz, kSuburbanLos, ExcessLoss{0.0, 0.0});
    }

    RadioEnvironment with_frequency(double carrier_frequency_hz) const {
        return RadioEnvironment(carrier_frequency_hz, los_, excess_);
    }

    double carrier_frequency_hz() const { return frequency_; }
    const LosParameters& los() const { return los_; }
    const ExcessLoss& excess() const { return excess_; }
    static constexpr double speed_of_light() { return kSpeedOfLight; }

private:
    double frequency_;
    LosParameters los_;
    ExcessLoss excess_;
};

/// Uniform planar array of rows x cols elements.
class AntennaArray {
public:
    AntennaArray(int rows, int cols, double spacing_wavelengths = 0.5);

    /// Single-row layout for an arbitrary element count.
    static AntennaArray linear(int elements) { return AntennaArray(1, elements); }
    static AntennaArray omni() { return AntennaArray(1, 1); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int elements() const { return rows_ * cols_; }
    double spacing_wavelengths() const { return spacing_; }

private:
    int rows_;
    int cols_;
    double spacing_;
};

/// Energy harvester front end for one carrier band.
class EhCircuit {
public:
    /// Threshold left empty falls back to the band default table.
    explicit EhCircuit(double band_hz,
                       double conversion_efficiency = kDefaultEfficiency,
                       std::optional<double> input_threshold_dbm = std::nullopt);

    double band_hz() const { return band_; }
    double conversion_efficiency() const { return efficiency_; }
    const std::optional<double>& explicit_threshold_dbm() const { return threshold_; }

private:
    double band_;
    double efficiency_;
    std::optional<double> threshold_;
};

/// UAV-to-node geometry. Distances are slant range unless stated otherwise.
class LinkGeometry {
public:
    /// Throws GeometryError unless slant >= height >= 0 and slant > 0.
    static LinkGeometry from_slant(double uav_height_m, double slant_distance_m);
    static LinkGeometry from_ground(double uav_height_m, double ground_distance_m);

    double uav_height_m() const { return height_; }
    double slant_distance_m() const { return slant_; }
    double ground_distance_m() const;
    double elevation_deg() const;

private:
    LinkGeometry(double h, double d) : height_(h), slant_(d) {}
    double height_;
    double slant_;
};

struct ArraySize {
    double width_m;
    double height_m;
};

/// Which side of the rectifier the harvester threshold is compared against.
enum class ThresholdReference { Harvested, Received };

struct EhSearch {
    double min_distance_m = 1e-3;
    double max_distance_m = 1e5;
    ThresholdReference reference = ThresholdReference::Harvested;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

double wavelength(const RadioEnvironment& env);

/// Aperture extent ((rows-1) s lambda, (cols-1) s lambda).
ArraySize upa_physical_size(const RadioEnvironment& env, int rows, int cols,
                            double spacing_wavelengths = 0.5);
ArraySize upa_physical_size(const RadioEnvironment& env, const AntennaArray& array);

/// Ideal steered gain 10 log10(N).
double array_gain_db(const AntennaArray& array);

double los_probability(const RadioEnvironment& env, const LinkGeometry& geom);
double free_space_path_loss_db(const RadioEnvironment& env, double slant_distance_m);

/// FSPL plus the LoS-probability weighted mix of excess losses.
double expected_path_loss_db(const RadioEnvironment& env, const LinkGeometry& geom);

/// RF input power at the node: P_tx + G - PL.
double received_power_dbm(double tx_power_w, const AntennaArray& array,
                          const RadioEnvironment& env, const LinkGeometry& geom);

/// DC power after conversion: received + 10 log10(efficiency).
double harvested_power_dbm(double tx_power_w, const AntennaArray& array,
                           const EhCircuit& circuit, const RadioEnvironment& env,
                           const LinkGeometry& geom);

/// Throws ConfigError when the band has no default and none was configured.
double eh_input_threshold_dbm(const EhCircuit& circuit);

/// Largest slant distance at hover height H whose power still meets the
/// harvester threshold. Empty when even d = H falls short. Capped at
/// `search.max_distance_m`.
std::optional<double> achievable_eh_distance(double tx_power_w, const AntennaArray& array,
                                             const EhCircuit& circuit,
                                             const RadioEnvironment& env, double uav_height_m,
                                             const EhSearch& search = {});

double noise_power_dbm(double bandwidth_hz, double noise_figure_db);

/// B log2(1 + snr).
double shannon_rate(double bandwidth_hz, double snr_linear);

/// Node transmits with its instantaneous harvested power; the uplink sees the
/// same array gain and path loss as the downlink.
double uplink_snr_db(const LinkGeometry& geom, const RadioEnvironment& env,
                     const AntennaArray& array, const EhCircuit& circuit, double tx_power_w,
                     double bandwidth_hz, double noise_figure_db);

double achievable_data_rate(const LinkGeometry& geom, const RadioEnvironment& env,
                            const AntennaArray& array, const EhCircuit& circuit,
                            double tx_power_w, double bandwidth_hz, double noise_figure_db);

// Calibration of shipped defaults.

struct CalibrationTargets {
    double eh_frequency_hz = 400e6;
    int eh_elements = 32;
    double eh_height_m = 10.0;
    double eh_distance_m = 13.0;
    double rate_frequency_hz = 900e6;
    int rate_elements = 32;
    double rate_distance_m = 10.0;
    double rate_bps = 65e6;
    double tx_power_w = 10.0;
    double efficiency = kDefaultEfficiency;
    double bandwidth_hz = 15e6;
    /// NLoS excess is held this far above the calibrated LoS excess.
    double nlos_penalty_db = kSuburbanExcess.nlos_db - kSuburbanExcess.los_db;
};

struct CalibrationResult {
    ExcessLoss excess;
    double noise_figure_db;
    double eh_distance_m;
    double rate_bps;
};

/// Solves the LoS excess loss for the EH-distance target, then the noise
/// figure for the rate target. The rate link has the UAV overhead at d.
CalibrationResult calibrate(const CalibrationTargets& targets = {});

} // namespace uewpiot::linkbudget

#endif
