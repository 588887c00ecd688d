#pragma once

// Exact complex linear algebra for two spin-1/2 particles: states,
// x-z plane spin observables, Born-rule probabilities and projections.

#include <array>
#include <complex>
#include <cstddef>

#include "qhardy/errors.hpp"

namespace qhardy {

using Complex = std::complex<double>;

enum class Side { L, R };
enum class Outcome { Plus, Minus };

inline Side opposite(Side s) { return s == Side::L ? Side::R : Side::L; }
inline Outcome flip(Outcome o) { return o == Outcome::Plus ? Outcome::Minus : Outcome::Plus; }
inline std::size_t outcome_index(Outcome o) { return o == Outcome::Plus ? 0 : 1; }

const char* to_string(Side s);
const char* to_string(Outcome o);

// Probability below which a conditioning event counts as "did not happen":
// conditionals and projections on such events fail loudly instead of
// returning noise.
inline constexpr double kConditionEpsilon = 1e-9;

// Spin observable cos(phi)*sigma_z + sin(phi)*sigma_x. Eigenvalues are
// exactly {+1, -1}; the + eigenvector is (cos(phi/2), sin(phi/2)).
class SpinObservable {
public:
    explicit SpinObservable(double phi);

    double phi() const { return phi_; }

    // 2x2 matrix in the z basis (real symmetric).
    std::array<std::array<double, 2>, 2> matrix() const;

    // Eigenvector for the given eigenvalue sign, phase-fixed so the first
    // component with magnitude > 1e-14 is real and >= 0.
    std::array<Complex, 2> eigenvector(Outcome o) const;

private:
    double phi_;  // normalized into (-pi, pi]
};

inline SpinObservable sigma_z() { return SpinObservable(0.0); }
inline SpinObservable sigma_x() { return SpinObservable(1.5707963267948966); }

// The + eigenvector of obs; see SpinObservable::eigenvector.
std::array<Complex, 2> plus_eigenvector(const SpinObservable& obs);

// Normalized state of two spin-1/2 particles. Amplitudes are ordered by
// z-basis kets |++>, |+->, |-+>, |-->, left factor = particle L.
class StateVector {
public:
    // Normalizes the input. Throws ZeroVectorError when the norm is <= 1e-12
    // and DomainError when any component is NaN/Inf.
    explicit StateVector(const std::array<Complex, 4>& amps);

    const std::array<Complex, 4>& amps() const { return amps_; }
    Complex amp(Outcome left, Outcome right) const {
        return amps_[2 * outcome_index(left) + outcome_index(right)];
    }

private:
    std::array<Complex, 4> amps_;
};

StateVector make_state(const std::array<Complex, 4>& amps);

// One local measurement record: which wing, which observable, which result.
struct LocalMeasurement {
    Side side;
    SpinObservable obs;
    Outcome outcome;
};

// Born-rule probabilities over the four outcome pairs of one setting pair.
struct JointDistribution {
    SpinObservable left;
    SpinObservable right;
    std::array<double, 4> p;  // order (+,+), (+,-), (-,+), (-,-)

    double prob(Outcome l, Outcome r) const {
        return p[2 * outcome_index(l) + outcome_index(r)];
    }
};

// P(left outcome, right outcome) = |<eL (x) eR | state>|^2.
double joint_probability(const StateVector& state, const SpinObservable& obs_left,
                         const SpinObservable& obs_right, Outcome left, Outcome right);

JointDistribution joint_distribution(const StateVector& state, const SpinObservable& obs_left,
                                     const SpinObservable& obs_right);

// Probability of one wing's outcome irrespective of the other wing.
double marginal_probability(const StateVector& state, const LocalMeasurement& m);

// P(target | cond) for measurements on opposite wings. Throws
// UndefinedConditionalError when P(cond) <= kConditionEpsilon and
// DomainError when cond and target share a wing.
double conditional_probability(const StateVector& state, const LocalMeasurement& cond,
                               const LocalMeasurement& target);

// Normalized projection of the state onto the outcome eigenspace of one wing.
// Throws UndefinedConditionalError when the outcome probability is
// <= kConditionEpsilon.
StateVector post_measurement_state(const StateVector& state, const LocalMeasurement& m);

}  // namespace qhardy
