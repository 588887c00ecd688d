#include "qhardy/qcore.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qhardy {

namespace {

constexpr double kPhaseTol = 1e-14;

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

// Multiply by a unit phase so the first component with magnitude > kPhaseTol
// is real and >= 0. Deterministic outputs for tests and serialization.
std::array<Complex, 2> phase_fixed(std::array<Complex, 2> v) {
    for (const Complex& c : v) {
        double mag = std::abs(c);
        if (mag > kPhaseTol) {
            Complex phase = c / mag;
            for (Complex& x : v) x /= phase;
            break;
        }
    }
    return v;
}

}  // namespace

const char* to_string(Side s) { return s == Side::L ? "L" : "R"; }
const char* to_string(Outcome o) { return o == Outcome::Plus ? "+" : "-"; }

SpinObservable::SpinObservable(double phi) {
    if (!std::isfinite(phi)) throw DomainError("observable angle must be finite");
    constexpr double pi = std::numbers::pi;
    phi = std::remainder(phi, 2.0 * pi);  // (-pi, pi], remainder gives [-pi, pi]
    if (phi <= -pi) phi = pi;
    phi_ = phi;
}

std::array<std::array<double, 2>, 2> SpinObservable::matrix() const {
    double c = std::cos(phi_);
    double s = std::sin(phi_);
    return {{{c, s}, {s, -c}}};
}

std::array<Complex, 2> SpinObservable::eigenvector(Outcome o) const {
    double half = phi_ / 2.0;
    std::array<Complex, 2> v;
    if (o == Outcome::Plus) {
        v = {Complex(std::cos(half), 0.0), Complex(std::sin(half), 0.0)};
    } else {
        v = {Complex(-std::sin(half), 0.0), Complex(std::cos(half), 0.0)};
    }
    return phase_fixed(v);
}

std::array<Complex, 2> plus_eigenvector(const SpinObservable& obs) {
    return obs.eigenvector(Outcome::Plus);
}

StateVector::StateVector(const std::array<Complex, 4>& amps) : amps_(amps) {
    double norm_sq = 0.0;
    for (const Complex& c : amps_) {
        if (!finite(c)) throw DomainError("state amplitude must be finite");
        norm_sq += std::norm(c);
    }
    double norm = std::sqrt(norm_sq);
    if (norm <= 1e-12) throw ZeroVectorError("cannot normalize a zero vector");
    for (Complex& c : amps_) c /= norm;
}

StateVector make_state(const std::array<Complex, 4>& amps) { return StateVector(amps); }

double joint_probability(const StateVector& state, const SpinObservable& obs_left,
                         const SpinObservable& obs_right, Outcome left, Outcome right) {
    const auto el = obs_left.eigenvector(left);
    const auto er = obs_right.eigenvector(right);
    Complex amp = 0.0;
    for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t r = 0; r < 2; ++r)
            amp += std::conj(el[l]) * std::conj(er[r]) * state.amps()[2 * l + r];
    return std::norm(amp);
}

JointDistribution joint_distribution(const StateVector& state, const SpinObservable& obs_left,
                                     const SpinObservable& obs_right) {
    JointDistribution d{obs_left, obs_right, {}};
    for (Outcome l : {Outcome::Plus, Outcome::Minus})
        for (Outcome r : {Outcome::Plus, Outcome::Minus})
            d.p[2 * outcome_index(l) + outcome_index(r)] =
                joint_probability(state, obs_left, obs_right, l, r);
    return d;
}

namespace {

// Unnormalized projection of the state onto one wing's outcome eigenspace.
std::array<Complex, 4> project(const StateVector& state, const LocalMeasurement& m) {
    const auto e = m.obs.eigenvector(m.outcome);
    std::array<Complex, 4> out{};
    if (m.side == Side::L) {
        for (std::size_t r = 0; r < 2; ++r) {
            Complex overlap = std::conj(e[0]) * state.amps()[r] + std::conj(e[1]) * state.amps()[2 + r];
            out[r] += e[0] * overlap;
            out[2 + r] += e[1] * overlap;
        }
    } else {
        for (std::size_t l = 0; l < 2; ++l) {
            Complex overlap =
                std::conj(e[0]) * state.amps()[2 * l] + std::conj(e[1]) * state.amps()[2 * l + 1];
            out[2 * l] += e[0] * overlap;
            out[2 * l + 1] += e[1] * overlap;
        }
    }
    return out;
}

}  // namespace

double marginal_probability(const StateVector& state, const LocalMeasurement& m) {
    const auto proj = project(state, m);
    double p = 0.0;
    for (const Complex& c : proj) p += std::norm(c);
    return p;
}

double conditional_probability(const StateVector& state, const LocalMeasurement& cond,
                               const LocalMeasurement& target) {
    if (cond.side == target.side)
        throw DomainError("conditional requires measurements on opposite wings");
    double p_cond = marginal_probability(state, cond);
    if (p_cond <= kConditionEpsilon)
        throw UndefinedConditionalError("conditioning event has probability " +
                                        std::to_string(p_cond));
    const SpinObservable& obs_left = cond.side == Side::L ? cond.obs : target.obs;
    const SpinObservable& obs_right = cond.side == Side::L ? target.obs : cond.obs;
    Outcome left = cond.side == Side::L ? cond.outcome : target.outcome;
    Outcome right = cond.side == Side::L ? target.outcome : cond.outcome;
    return joint_probability(state, obs_left, obs_right, left, right) / p_cond;
}

StateVector post_measurement_state(const StateVector& state, const LocalMeasurement& m) {
    double p = marginal_probability(state, m);
    if (p <= kConditionEpsilon)
        throw UndefinedConditionalError("projection onto an outcome of probability " +
                                        std::to_string(p));
    return StateVector(project(state, m));
}

}  // namespace qhardy
