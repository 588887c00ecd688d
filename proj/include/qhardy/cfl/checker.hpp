#pragma once

// Derivation checker for the counterfactual locality calculus.
//
// A derivation asserts one formula per step, each justified by a rule:
//
//   PREMISE      A conjunction of atoms describing the actual run: at most
//                one setting and one measured outcome per wing. Measured
//                outcome atoms carry themselves as their only evidence.
//
//   QM(i)        Adds one outcome atom to the conjunction of step i when the
//                added outcome is certified as a probability-1 correlate of
//                an outcome already present on the opposite wing. The new
//                atom is inferred; its evidence is the source atom's
//                evidence plus the source atom itself.
//
//   LOC1(i)      From a conjunction containing setting S, concludes
//                S' []-> (same conjunction with S replaced by S' and the
//                outcomes of S removed), S' being the other setting on the
//                same wing. Realist mode admits this always. Operational
//                mode requires that no surviving outcome atom has evidence
//                mentioning the replaced setting S.
//
//   LOC2(i)      From `Sv => X`, concludes `Sv' => X`, where Sv, Sv' are the
//                two settings of one wing and X mentions only the other
//                wing. Realist mode admits this always. Operational mode
//                rejects it when the sub-derivation that established step i
//                ever used an outcome atom of setting Sv.
//
//   LOGIC(...)   Conjunction introduction, weakening (dropping conjuncts,
//                also inside a box scope), implication transitivity, and
//                conditionalization (restating an established formula as
//                `S => rest` for a setting atom S it contains). Under
//                Operational semantics, weakening may not drop an outcome
//                atom that appears in the evidence of a retained inferred
//                atom.
//
// Evidence sets flow through every rule by union, which is what makes the
// Operational restrictions checkable: an inferred value stays tied to the
// measurements it came from.
//
// When every step passes and the final formula claims an outcome with
// certainty under a counterfactual box, the verdict compares that certainty
// against the quantum conditional of the claimed outcome given the
// sigma_z=+ outcome of the opposite wing (the entry point of the
// perfect-correlation chain); a gap is reported as a contradiction record.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhardy/cfl/formula.hpp"

namespace qhardy::cfl {

enum class Semantics { Realist, Operational };

// Realist: outcome values hold independently of how they were established.
// Operational: inferred values stay tied to the evidence used to infer them.
const char* to_string(Semantics s);

// Rejection reason codes.
inline constexpr const char* kReasonLoc1Evidence = "LOC1_EVIDENCE_DEPENDS_ON_REPLACED_SETTING";
inline constexpr const char* kReasonLoc2LeftOutcome = "LOC2_USES_LEFT_OUTCOME";
inline constexpr const char* kReasonQmNotCertified = "QM_NOT_CERTIFIED";
inline constexpr const char* kReasonLogicInvalid = "LOGIC_INVALID";
inline constexpr const char* kReasonWeakeningDropsEvidence = "WEAKENING_DROPS_EVIDENCE";

// The (setting, outcome) pairs an inferred claim's truth depends on.
// At most one outcome per setting.
class EvidenceSet {
public:
    bool empty() const { return pairs_.empty(); }
    bool contains_setting(SettingLabel s) const { return pairs_.count(s) > 0; }
    const std::map<SettingLabel, Outcome>& pairs() const { return pairs_; }

    // False on a conflicting outcome for an already-present setting.
    bool add(SettingLabel s, Outcome o);
    bool merge(const EvidenceSet& other);

    bool operator==(const EvidenceSet&) const = default;

private:
    std::map<SettingLabel, Outcome> pairs_;
};

// Annotation of one outcome atom within a step: how it was established and
// what it depends on. Measured atoms carry singleton self-evidence.
struct AtomInfo {
    bool measured = false;
    EvidenceSet evidence;
};

struct StepAnnotations {
    std::map<OutcomeLabel, AtomInfo> atoms;
};

struct Contradiction {
    double claimed_probability;  // always 1.0: the chain claims certainty
    double quantum_probability;
};

struct Verdict {
    bool accepted = false;
    std::optional<int> failing_step;
    std::string reason;  // one of the codes above; empty when accepted
    std::optional<Contradiction> contradiction;
};

// True iff the opposite-wing conditional P(to | from) on the state family at
// this theta equals 1 within 1e-9. Throws DomainError when from/to share a
// wing and UndefinedConditionalError when P(from) vanishes.
bool certify_qm_implication(Theta theta, std::pair<SettingLabel, Outcome> from,
                            std::pair<SettingLabel, Outcome> to);

Verdict check_derivation(const Derivation& d, Semantics semantics);

// As above, also exposing the per-step atom annotations (for as many steps
// as were validated).
Verdict check_derivation(const Derivation& d, Semantics semantics,
                         std::vector<StepAnnotations>& trace);

}  // namespace qhardy::cfl
