#include "qhardy/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qhardy {

Theta::Theta(double radians) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (!std::isfinite(radians) || std::abs(radians) >= half_pi)
        throw DomainError("theta must lie in (-pi/2, pi/2), got " + std::to_string(radians));
    value_ = radians;
}

Side side_of(SettingLabel s) {
    return (s == SettingLabel::L1 || s == SettingLabel::L2) ? Side::L : Side::R;
}

SettingLabel other_setting_on_side(SettingLabel s) {
    switch (s) {
        case SettingLabel::L1: return SettingLabel::L2;
        case SettingLabel::L2: return SettingLabel::L1;
        case SettingLabel::R1: return SettingLabel::R2;
        default: return SettingLabel::R1;
    }
}

SettingLabel setting_of(OutcomeLabel o) {
    switch (o) {
        case OutcomeLabel::a:
        case OutcomeLabel::b: return SettingLabel::L1;
        case OutcomeLabel::c:
        case OutcomeLabel::d: return SettingLabel::L2;
        case OutcomeLabel::e:
        case OutcomeLabel::f: return SettingLabel::R1;
        default: return SettingLabel::R2;
    }
}

Outcome outcome_of(OutcomeLabel o) {
    switch (o) {
        case OutcomeLabel::b:
        case OutcomeLabel::c:
        case OutcomeLabel::f:
        case OutcomeLabel::g: return Outcome::Plus;
        default: return Outcome::Minus;
    }
}

OutcomeLabel outcome_label(SettingLabel s, Outcome o) {
    bool plus = o == Outcome::Plus;
    switch (s) {
        case SettingLabel::L1: return plus ? OutcomeLabel::b : OutcomeLabel::a;
        case SettingLabel::L2: return plus ? OutcomeLabel::c : OutcomeLabel::d;
        case SettingLabel::R1: return plus ? OutcomeLabel::f : OutcomeLabel::e;
        default: return plus ? OutcomeLabel::g : OutcomeLabel::h;
    }
}

const char* to_string(SettingLabel s) {
    switch (s) {
        case SettingLabel::L1: return "L1";
        case SettingLabel::L2: return "L2";
        case SettingLabel::R1: return "R1";
        default: return "R2";
    }
}

const char* to_string(OutcomeLabel o) {
    static const char* names[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
    return names[static_cast<int>(o)];
}

double normalization_constant(Theta theta) {
    double t = theta.value();
    double s = std::sin(t);
    return std::cos(t) / std::sqrt(2.0 * (1.0 + s * s));
}

std::array<Complex, 4> hardy_amplitudes(Theta theta) {
    double t = theta.value();
    double c = std::cos(t);
    double s = std::sin(t);
    double n = normalization_constant(theta);
    return {Complex(n * c), Complex(n * s), Complex(n * (1.0 + s * s) / c), Complex(-n * s)};
}

StateVector hardy_state(Theta theta) { return StateVector(hardy_amplitudes(theta)); }

std::pair<Side, SpinObservable> setting_observable(SettingLabel label, Theta theta) {
    switch (label) {
        case SettingLabel::L1: return {Side::L, sigma_z()};
        case SettingLabel::L2: return {Side::L, sigma_x()};
        case SettingLabel::R1: return {Side::R, sigma_z()};
        default: return {Side::R, SpinObservable(2.0 * theta.value())};
    }
}

LocalMeasurement measurement(SettingLabel label, Outcome o, Theta theta) {
    auto [side, obs] = setting_observable(label, theta);
    return LocalMeasurement{side, obs, o};
}

double DecompositionReport::max_residual() const {
    return std::max({residual_lz, residual_rtheta, residual_lx});
}

namespace {

// Product of one-particle kets into the four z (x) z amplitudes.
std::array<double, 4> kron(const std::array<double, 2>& left, const std::array<double, 2>& right) {
    return {left[0] * right[0], left[0] * right[1], left[1] * right[0], left[1] * right[1]};
}

double max_diff(const std::array<double, 4>& got, const std::array<Complex, 4>& want) {
    double m = 0.0;
    for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(got[i] - want[i].real()));
    return m;
}

}  // namespace

DecompositionReport verify_decompositions(Theta theta) {
    double t = theta.value();
    double c = std::cos(t);
    double s = std::sin(t);
    double n = normalization_constant(theta);
    const auto reference = hardy_amplitudes(theta);

    // Group by the left z basis: |+>(c|+> + s|->) + |->(((1+s^2)/c)|+> - s|->).
    std::array<double, 4> lz{};
    {
        auto t1 = kron({1.0, 0.0}, {c, s});
        auto t2 = kron({0.0, 1.0}, {(1.0 + s * s) / c, -s});
        for (std::size_t i = 0; i < 4; ++i) lz[i] = n * (t1[i] + t2[i]);
    }

    // Group by the right sigma_theta basis:
    // (|+> + |->)(c|+> + s|->) + 2 tan(t) |->(s|+> - c|->).
    std::array<double, 4> rtheta{};
    {
        auto t1 = kron({1.0, 1.0}, {c, s});
        auto t2 = kron({0.0, 2.0 * s / c}, {s, -c});
        for (std::size_t i = 0; i < 4; ++i) rtheta[i] = n * (t1[i] + t2[i]);
    }

    // Group by the left x basis:
    // (|+> + |->)(1/c)|+> + (|+> - |->)((-s^2/c)|+> + s|->).
    std::array<double, 4> lx{};
    {
        auto t1 = kron({1.0, 1.0}, {1.0 / c, 0.0});
        auto t2 = kron({1.0, -1.0}, {-s * s / c, s});
        for (std::size_t i = 0; i < 4; ++i) lx[i] = n * (t1[i] + t2[i]);
    }

    return DecompositionReport{max_diff(lz, reference), max_diff(rtheta, reference),
                               max_diff(lx, reference)};
}

}  // namespace qhardy
