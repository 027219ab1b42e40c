/*
 * Copyright 2026 the mrsnn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace mrsnn {

/// Programming polarity of an RRAM cell: LTP raises conductance toward
/// g_max, LTD lowers it toward g_min.
enum class Polarity { LTP, LTD };

/// How a real-valued pulse count is quantized to hardware pulses.
enum class Rounding { Nearest, Floor, Stochastic };

/// Fitted parameters of the asymmetric exponential conductance-update model
///
///   G_ltp(n) = g_max - beta_p * exp(-alpha_p * n)
///   G_ltd(n) = g_min + beta_d * exp(-alpha_d * n)
///
/// All conductances are in nanosiemens, rates are per pulse. beta may exceed
/// g_max - g_min (the -3 V depression fit does); raw curve values are always
/// clamped to [g_min, g_max].
struct DeviceParams {
    double g_max;    // nS
    double g_min;    // nS
    double alpha_p;  // 1/pulse
    double alpha_d;  // 1/pulse
    double beta_p;   // nS
    double beta_d;   // nS
    double v_p;      // programming voltage magnitude, V

    bool valid() const {
        return g_max > g_min && g_min > 0.0 && alpha_p > 0.0 &&
               alpha_d > 0.0 && beta_p > 0.0 && beta_d > 0.0;
    }
    /// Throws ConfigError if the invariants do not hold.
    void validate() const;

    double delta_g() const { return g_max - g_min; }
};

/// Device-to-device variation tolerances (std/mean of a Gaussian source).
/// beta variation is folded into alpha: the update term is
/// beta*exp(-alpha*n) = exp(log(beta) - alpha*n), so a Gaussian spread on
/// log(beta) and one on alpha add into a single Gaussian on alpha.
struct VariationSpec {
    double alpha_tolerance = 0.0;
    double gmax_tolerance = 0.0;
    double gmin_tolerance = 0.0;
    bool write_verify = false;
    double verify_tolerance = 0.0;  // nS

    bool valid() const {
        return alpha_tolerance >= 0.0 && alpha_tolerance < 1.0 &&
               gmax_tolerance >= 0.0 && gmax_tolerance < 1.0 &&
               gmin_tolerance >= 0.0 && gmin_tolerance < 1.0 &&
               verify_tolerance >= 0.0;
    }
};

/// Live state of one RRAM cell. Value-semantic: every operation takes a cell
/// and returns the updated copy.
struct DeviceCell {
    double conductance;  // nS, always within [params.g_min, params.g_max]
    DeviceParams params;
    std::uint64_t write_count = 0;
    std::optional<std::uint64_t> endurance_limit;
    /// Set once write_count exceeds endurance_limit; the conductance is
    /// frozen from then on. This is device state, not an error.
    bool endurance_exhausted = false;
};

/// Make a cell pinned at a given conductance (clamped into range).
DeviceCell make_cell(const DeviceParams& params, double conductance,
                     std::optional<std::uint64_t> endurance_limit = {});

/// Nonlinearity factors of the update curves at half the full-swing pulse
/// budget N, measured on the (G - g_min)/(g_max - g_min) normalized,
/// unclamped curves. Under that normalization anl == panl + danl exactly.
struct AsymmetryFactors {
    double panl;
    double danl;
    double anl;
};

/// Conductance after n pulses of one polarity starting from the fresh end of
/// the curve (n need not be integral). Result clamped to [g_min, g_max].
double conductance_after_pulses(const DeviceParams& params, Polarity polarity,
                                double n);

/// dG/dn of the (unclamped) update curve; negative for LTD.
double conductance_slope(const DeviceParams& params, Polarity polarity,
                         double n);

/// PANL/DANL/ANL for a total pulse budget of n_total (> 0).
AsymmetryFactors asymmetry_factors(const DeviceParams& params,
                                   double n_total);

/// Advance a conductance along the polarity's curve by a real pulse count
/// d_n >= 0, starting from wherever G currently sits on that curve:
///   LTP: G' = g_max - (g_max - G) * exp(-alpha_p * d_n)
///   LTD: G' = g_min + (G - g_min) * exp(-alpha_d * d_n)
/// This is the closed form of "invert the curve for the current position,
/// add d_n, evaluate" and is exact for interleaved LTP/LTD sequences.
double advance_conductance(const DeviceParams& params, double g,
                           Polarity polarity, double d_n);

/// Signed pulse count that realizes a signed conductance change delta_g from
/// the cell's current state. Positive result = LTP pulses, negative = LTD
/// pulses (magnitude is the depression count). Throws HeadroomExceeded when
/// |delta_g| is not strictly inside the available headroom.
double pulses_for_delta_exact(const DeviceCell& cell, double delta_g);

/// First-order (linearized) version of pulses_for_delta_exact; valid for
/// |delta_g| much smaller than the headroom. Throws DivisionDegenerate when
/// the headroom is exactly zero.
double pulses_for_delta_linearized(const DeviceCell& cell, double delta_g);

/// Apply n pulses (rounded per `rounding`; stochastic rounding draws from
/// rng_seed) of the given polarity. write_noise_std, when nonzero, perturbs
/// the applied pulse count multiplicatively: d_n_eff = k * (1 + std * xi),
/// clamped at 0. write_count grows by the integer count; once it exceeds
/// endurance_limit the cell freezes.
DeviceCell apply_pulses(DeviceCell cell, Polarity polarity, double n,
                        Rounding rounding, std::uint64_t rng_seed,
                        double write_noise_std = 0.0);

/// Draw a device instance around `nominal`: alpha_p/alpha_d from Gaussians
/// with std = alpha_tolerance * mean, g_max/g_min with their tolerances,
/// betas kept nominal (folded convention, see VariationSpec). Redraws until
/// the DeviceParams invariants hold; throws ResampleLimit after 1000 tries.
DeviceParams sample_params(const DeviceParams& nominal,
                           const VariationSpec& spec, std::uint64_t rng_seed);

/// One polarity's fitted parameters interpolated over programming voltage.
struct CurveFit {
    double g_bound;  // g_max (LTP) or g_min (LTD), nS
    double alpha;    // 1/pulse
    double beta;     // nS
    /// True when |v_p| fell outside the fitted [2, 3] V range and the
    /// formulas were extrapolated.
    bool extrapolated;
};

/// Evaluate the voltage-interpolation fits for one polarity at programming
/// voltage v_p (sign ignored; depression formulas are evaluated at -|v_p|
/// per the table convention).
CurveFit interpolate_params(double v_p, Polarity polarity);

struct WriteVerifyResult {
    DeviceCell cell;
    int iterations;
};

/// Program-read-correct loop: repeatedly convert the residual to pulses,
/// apply them (with optional write noise), and re-read, until the cell is
/// within `tolerance` of `target` or max_iters passes have run. Throws
/// TargetOutOfRange / NotConverged.
WriteVerifyResult write_verify(DeviceCell cell, double target,
                               double tolerance, int max_iters,
                               std::uint64_t rng_seed,
                               double write_noise_std = 0.0);

/// Named nominal parameter sets of the Mo/TiOx/TiN device at the three
/// reported programming voltages. Note the 2 V set pairs a potentiation
/// ceiling (83.38 nS) below the depression floor (340.5 nS): the two
/// per-polarity fits are mutually inconsistent at that voltage, so the
/// preset exists for curve inspection but fails DeviceParams::validate().
const std::map<std::string, DeviceParams>& device_presets();

/// Lookup helper; throws ConfigError for unknown names.
const DeviceParams& device_preset(const std::string& name);

}  // namespace mrsnn
