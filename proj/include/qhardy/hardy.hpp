#pragma once

// The theta-parameterized entangled pair state whose joint statistics carry
// three forced-zero cells, the four named measurement settings, and the
// letter table tying outcome names to (setting, sign) pairs.

#include <array>
#include <utility>

#include "qhardy/qcore.hpp"

namespace qhardy {

// State-family parameter, radians, open interval (-pi/2, pi/2).
class Theta {
public:
    explicit Theta(double radians);
    double value() const { return value_; }

private:
    double value_;
};

// L1 = sigma_z on the left wing, L2 = sigma_x on the left wing,
// R1 = sigma_z on the right wing, R2 = sigma_theta on the right wing.
enum class SettingLabel { L1, L2, R1, R2 };

// Outcome letters: a=(L1,-) b=(L1,+) c=(L2,+) d=(L2,-)
//                  e=(R1,-) f=(R1,+) g=(R2,+) h=(R2,-)
enum class OutcomeLabel { a, b, c, d, e, f, g, h };

inline constexpr std::array<SettingLabel, 4> kAllSettings = {
    SettingLabel::L1, SettingLabel::L2, SettingLabel::R1, SettingLabel::R2};
inline constexpr std::array<OutcomeLabel, 8> kAllOutcomeLabels = {
    OutcomeLabel::a, OutcomeLabel::b, OutcomeLabel::c, OutcomeLabel::d,
    OutcomeLabel::e, OutcomeLabel::f, OutcomeLabel::g, OutcomeLabel::h};

Side side_of(SettingLabel s);
SettingLabel other_setting_on_side(SettingLabel s);  // L1<->L2, R1<->R2
SettingLabel setting_of(OutcomeLabel o);
Outcome outcome_of(OutcomeLabel o);
OutcomeLabel outcome_label(SettingLabel s, Outcome o);

const char* to_string(SettingLabel s);
const char* to_string(OutcomeLabel o);

// The normalization constant: cos(theta) / sqrt(2 (1 + sin^2(theta))).
double normalization_constant(Theta theta);

// The four z-basis amplitudes N * (cos t, sin t, (1+sin^2 t)/cos t, -sin t).
// Returned unrenormalized so callers can check that the norm is 1.
std::array<Complex, 4> hardy_amplitudes(Theta theta);

StateVector hardy_state(Theta theta);

// The wing and observable a setting label denotes; R2 depends on theta.
std::pair<Side, SpinObservable> setting_observable(SettingLabel label, Theta theta);

// Convenience: full measurement record for (label, outcome) at this theta.
LocalMeasurement measurement(SettingLabel label, Outcome o, Theta theta);

// Max-norm amplitude residuals of the three product-basis regroupings of the
// state against its defining z (x) z amplitudes. Each regrouping exhibits one
// perfect correlation:
//   lz:     left sigma_z=+  paired with the right sigma_theta + eigenstate
//   rtheta: right sigma_theta=+ paired with the left sigma_x + eigenstate
//   lx:     left sigma_x=+  paired with the right sigma_z + eigenstate
struct DecompositionReport {
    double residual_lz;
    double residual_rtheta;
    double residual_lx;

    double max_residual() const;
};

DecompositionReport verify_decompositions(Theta theta);

}  // namespace qhardy
