// Copyright 2026 The coordcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COORDCERT_INEQUALITIES_H
#define COORDCERT_INEQUALITIES_H

#include <array>
#include <map>
#include <string>
#include <vector>

#include "coordcert/behavior.h"
#include "coordcert/optimize.h"
#include "coordcert/realization.h"
#include "coordcert/simulate.h"

namespace coordcert {

/// 3 sqrt(3) / 2.
double ineq1_constant();

struct Ineq1Report {
    Correlators correlators;
    double lhs = 0;
    double rhs = 0;
    double violation = 0;
    bool violated = false;
};

/// <AB> + <BC> + <CD> against <A><D>/2 + 3 sqrt(3)/2.
Ineq1Report eval_ineq1(const Behavior &behavior, double tol = 1e-9);

/// Signs applied to <A0B0>, <A0B1>, <A1B0>, <A1B1>.
struct ChshVariant {
    std::array<int, 4> signs{1, 1, 1, -1};

    /// Parses "++-+" or "+,+,-,+"; throws unless exactly one or three signs
    /// are negative.
    static ChshVariant parse(const std::string &text);
    std::string to_string() const;
    bool valid() const;
    bool operator==(const ChshVariant &) const = default;
};

ChshVariant default_variant_plus();
ChshVariant default_variant_minus();

/// p(C1 * D1 = branch) with outcomes mapped to signs by o -> (-1)^o.
double branch_probability(const SettingsBehavior &sb, int branch);

/// CHSH combination of <A^x B^y> on the behavior conditioned on C1 * D1 =
/// branch. Parties are A, B, C, D in that order with C and D at setting 1.
double conditioned_chsh(const SettingsBehavior &sb, int branch, const ChshVariant &variant);

struct Ineq2Report {
    double p_plus = 0;
    double p_minus = 0;
    double chsh_plus = 0;
    double chsh_minus = 0;
    double sigma = 0;
    double lhs = 0;
    double bound = 16;
    bool precondition = false;
    bool violated = false;
};

/// Chain term, branch terms and the full left-hand side as printed; the
/// violation flag needs the equal-branch precondition (1e-6).
Ineq2Report eval_ineq2(const SettingsBehavior &sb, const ChshVariant &plus = default_variant_plus(),
                       const ChshVariant &minus = default_variant_minus());

/// Assembles a report from raw correlators; shared by the fast noisy-GHZ
/// path and the table-based evaluation.
struct Ineq2Terms {
    /// <A^x B^y> and <A^x B^y C^1 D^1> for x in {0,1}, y in {0,1}.
    std::array<double, 4> ab{};
    std::array<double, 4> abcd{};
    double cd11 = 0;
    double a0b2 = 0, b2c0 = 0, c0d0 = 0;
};
Ineq2Report ineq2_from_terms(const Ineq2Terms &t, const ChshVariant &plus, const ChshVariant &minus);

struct BlochSetting {
    double theta = 0;
    double phi = 0;
};

/// Per party, one Bloch direction per setting.
struct MeasurementSettings {
    std::map<std::string, std::vector<BlochSetting>> parties;

    SettingsMap families() const;
    std::vector<double> to_params() const;
    static MeasurementSettings from_params(const std::vector<double> &params);
};

/// A0 = B2 = C0 = D0 = Z, C1 = D1 = A1 = X, B0 = (Z + X)/sqrt 2,
/// B1 = (Z - X)/sqrt 2.
MeasurementSettings documented_ghz_settings();

/// The single-source GHZ circuit carrying noisy_ghz4(v).
QuantumRealization ghz4_realization(double v);

SettingsBehavior ghz4_settings_behavior(double v, const MeasurementSettings &settings);

/// Closed-form correlators of noisy_ghz4(v) for Bloch observables, used by
/// the threshold search; agrees with ghz4_settings_behavior.
Ineq2Terms noisy_ghz_terms(double v, const MeasurementSettings &settings);

struct ThresholdOptions {
    double v_min = 0.85;
    double v_max = 1.0;
    /// Bisection stops once the bracket is this narrow.
    double bracket = 0.002;
    /// Spacing of the plotted curve; zero disables the grid.
    double grid_step = 0.01;
    OptimizerOptions optimizer{64, 200, 1e-5, 1e-10, 0, 1};
    ChshVariant plus = default_variant_plus();
    ChshVariant minus = default_variant_minus();
};

struct ThresholdPoint {
    double v = 0;
    Ineq2Report report;
    MeasurementSettings settings;
    /// Printed violation restricted to the certified regime: precondition
    /// met, 3 Sigma >= 8 and lhs > 16.
    bool violated = false;
};

struct ThresholdReport {
    double v_star = 0;
    double bracket_low = 0;
    double bracket_high = 0;
    /// Best settings at bracket_high.
    MeasurementSettings settings;
    std::vector<ThresholdPoint> curve;
};

/// Settings maximizing the GHZ-type inequality left-hand side at visibility v, subject to
/// the equal-branch precondition and a non-negative chain term 3 Sigma - 8.
ThresholdPoint optimize_ineq2(double v, const ThresholdOptions &options);

/// Bisection over v in [v_min, v_max] on the optimized violation flag.
/// Throws SolverError if v_max is not violated.
ThresholdReport visibility_threshold(const ThresholdOptions &options);

/// CSV with columns v, lhs, chsh_minus, chsh_plus, sigma, violated.
std::string threshold_csv(const std::vector<ThresholdPoint> &curve);

struct CalibrationOptions {
    /// Restrict to commuting diagonal observables.
    bool classical = false;
    int iterations = 200;
    int restarts = 8;
    uint64_t seed = 0;
};

/// Maximum of <A0B0> + <A0B1> + <A1B0> - <A1B1> over Bloch settings on
/// (|00> + |11>)/sqrt 2.
double chsh_tsirelson_calibration(const CalibrationOptions &options = {});

struct SearchOptions {
    int wire_dim = 2;
    int restarts = 32;
    int iterations = 25;
    uint64_t seed = 0;
    int jobs = 1;
};

struct SearchResult {
    QuantumRealization realization;
    Behavior behavior;
    double score = 0;
    int restart = 0;
};

/// 1 - |P - P_coord|_1 / 2 against the shared random bit.
double coordination_score(const Behavior &behavior);

/// Multi-start maximization of the coordination score over fig1
/// realizations with uniform wire dimension.
SearchResult max_coordination_search(const SearchOptions &options);

}  // namespace coordcert

#endif
