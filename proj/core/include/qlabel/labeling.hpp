#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qlabel/povm.hpp"

namespace qlabel {

enum class LabelingMode { perfect, min_error, partial, unambiguous, antilabel, sequential };

const char* to_string(LabelingMode mode);

// Input state sent through the unlabeled device: a pure unit vector or a
// mixed density operator.
class ProbeState {
public:
    static ProbeState pure(Vector v);
    static ProbeState mixed(Matrix rho);

    bool is_pure() const { return std::holds_alternative<Vector>(state_); }
    const Vector& vector() const;
    Matrix density() const;
    int dim() const;

private:
    explicit ProbeState(std::variant<Vector, Matrix> s) : state_(std::move(s)) {}
    std::variant<Vector, Matrix> state_;
};

// Recorded outcome position -> claimed effect index (0-based); kInconclusive
// marks positions where the strategy abstains. Stored as data so the
// simulator can execute a report verbatim.
inline constexpr int kInconclusive = -1;
using DecisionRule = std::vector<int>;

struct PlanStep {
    ProbeState probe;
    std::vector<int> outcome_class;  // positions labeled as a group
    int effect_index;                // representative (lowest) index in the class
};

// One multiplicity class with its one-shot labelability verdict: feasible
// exactly when the class effect has largest eigenvalue 1/m.
struct PartialClassReport {
    std::vector<int> outcome_class;
    double lambda_max = 0.0;
    double target = 0.0;  // 1/m for class multiplicity m
    bool feasible = false;
    std::optional<ProbeState> probe;
    double leakage = 0.0;  // total probe weight outside the class (feasible only)
};

struct LabelingReport {
    LabelingMode mode = LabelingMode::perfect;
    bool feasible = false;
    // All effects equal: nothing unknown about the labels, no probe needed.
    bool trivial = false;
    std::optional<double> p_error;
    std::optional<double> p_failure;
    std::optional<ProbeState> probe;
    std::optional<DecisionRule> decision_rule;
    std::vector<int> excluded_effects;         // antilabeling verdicts
    std::vector<PlanStep> plan;                // sequential steps
    std::vector<PartialClassReport> classes;   // per-class analysis (sequential)
    int min_uses_bound = 0;
    bool fully_labelable = false;
    double tol = kDefaultTol;
    double rank_tol = kDefaultRankTol;
    std::string note;
};

// Decides single-shot perfect labelability of a binary observable: feasible
// exactly when an effect is rank deficient (or the effects are equal, which
// leaves nothing to label). The emitted probe lies in the deficient effect's
// kernel and the rule assigns the recorded outcome to the other effect.
LabelingReport perfect_binary(const Observable& obs, double rank_tol = kDefaultRankTol);

// Certificate for the perfect-discrimination identity M1^T xi M2^T = O,
// where xi is the tester normalization induced by the given probe state
// (xi = probe^T; for real probes the two coincide). probe_state must be a
// unit-trace positive operator.
bool perfect_condition(const HermitianOperator& m1, const HermitianOperator& m2,
                       const HermitianOperator& probe_state, double tol = kDefaultTol);

// Optimal single-shot minimum-error labeling of a binary observable:
// p_e = (1 - ||M1 - M2||_2) / 2, probe = the eigenvector of M1 whose
// eigenvalue lies farthest from 1/2, rule = assign the recorded outcome to
// the effect with the larger eigenvalue there. Equal effects bypass the
// formula and report zero error.
LabelingReport min_error_binary(const Observable& obs);

// Per-class one-shot perfect labeling of the recorded outcome.
std::vector<PartialClassReport> partial_label(const Observable& obs, double tol = kDefaultTol);

// Minimum-error labeling of the recorded outcome only: pick the effect with
// the globally largest eigenvalue, probe with its top eigenvector,
// p_e = 1 - lambda_max. Ties break toward the lowest effect index.
LabelingReport partial_min_error(const Observable& obs);

// Binary unambiguous labeling reduces to perfect labeling: when feasible the
// inconclusive element is zero and p_failure = 0; otherwise no nontrivial
// unambiguous strategy exists.
LabelingReport unambiguous_binary(const Observable& obs, double rank_tol = kDefaultRankTol);

// Excludes effects as descriptions of the recorded outcome by probing in the
// kernel of effect j; every effect annihilating the probe is excluded too.
// Feasible exactly when effect j is rank deficient.
LabelingReport antilabel(const Observable& obs, int effect_index,
                         double rank_tol = kDefaultRankTol);

// Multi-use plan: lower bound (classes - 1) on the number of uses, per-class
// one-shot feasibility, and a greedy step sequence labeling every class but
// one, the last being identified by elimination. Claims feasibility of the
// step set, not optimality of its ordering.
LabelingReport sequential_plan(const Observable& obs, double tol = kDefaultTol);

// Strategy selector used by the simulator and the CLI: perfect labeling when
// available, otherwise the minimum-error strategy (binary) or the
// partial minimum-error strategy (non-binary).
LabelingReport best_single_shot(const Observable& obs, double rank_tol = kDefaultRankTol);

}  // namespace qlabel
