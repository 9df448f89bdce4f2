#include "qlabel/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace qlabel {

const char* to_string(LabelingMode mode) {
    switch (mode) {
        case LabelingMode::perfect: return "perfect";
        case LabelingMode::min_error: return "min_error";
        case LabelingMode::partial: return "partial";
        case LabelingMode::unambiguous: return "unambiguous";
        case LabelingMode::antilabel: return "antilabel";
        case LabelingMode::sequential: return "sequential";
    }
    return "unknown";
}

ProbeState ProbeState::pure(Vector v) {
    if (v.size() == 0) throw InvalidOperator("ProbeState: empty vector");
    const double norm = v.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kDefaultTol) {
        throw InvalidOperator("ProbeState: vector norm " + std::to_string(norm) + " is not 1");
    }
    return ProbeState(std::variant<Vector, Matrix>(std::in_place_index<0>, std::move(v)));
}

ProbeState ProbeState::mixed(Matrix rho) {
    HermitianOperator h(rho);  // validates shape and hermiticity
    const double trace_dev = std::abs(h.matrix().trace() - Complex{1.0, 0.0});
    if (trace_dev > kDefaultTol) {
        throw InvalidOperator("ProbeState: density trace deviates from 1 by " + std::to_string(trace_dev));
    }
    if (!is_psd(h, kDefaultTol)) {
        throw InvalidOperator("ProbeState: density operator is not positive");
    }
    return ProbeState(std::variant<Vector, Matrix>(std::in_place_index<1>, std::move(rho)));
}

const Vector& ProbeState::vector() const {
    if (!is_pure()) throw Error("ProbeState: mixed state has no defining vector");
    return std::get<Vector>(state_);
}

Matrix ProbeState::density() const {
    if (is_pure()) {
        const Vector& v = std::get<Vector>(state_);
        return v * v.adjoint();
    }
    return std::get<Matrix>(state_);
}

int ProbeState::dim() const {
    return is_pure() ? static_cast<int>(std::get<Vector>(state_).size())
                     : static_cast<int>(std::get<Matrix>(state_).rows());
}

namespace {

void require_binary(const Observable& obs, const char* op) {
    if (obs.outcomes() != 2) {
        throw WrongArity(std::string(op) + ": requires a binary observable, got " +
                         std::to_string(obs.outcomes()) + " outcomes");
    }
}

bool effects_equal(const Observable& obs, double tol) {
    for (int k = 1; k < obs.outcomes(); ++k) {
        if (max_abs(obs.effect_matrix(k) - obs.effect_matrix(0)) > tol) return false;
    }
    return true;
}

double expectation(const Matrix& m, const Vector& v) {
    return (v.adjoint() * m * v)(0, 0).real();
}

LabelingReport base_report(LabelingMode mode, double tol, double rank_tol) {
    LabelingReport r;
    r.mode = mode;
    r.tol = tol;
    r.rank_tol = rank_tol;
    return r;
}

}  // namespace

LabelingReport perfect_binary(const Observable& obs, double rank_tol) {
    require_binary(obs, "perfect_binary");
    LabelingReport r = base_report(LabelingMode::perfect, kDefaultTol, rank_tol);

    if (effects_equal(obs, r.tol)) {
        r.feasible = true;
        r.trivial = true;
        r.p_error = 0.0;
        r.p_failure = 0.0;
        r.note = "effects are identical; labels carry no information and the observable is trivially labeled";
        return r;
    }

    for (int j = 0; j < 2; ++j) {
        const std::vector<Vector> ker = kernel(obs.effect(j), rank_tol);
        if (ker.empty()) continue;
        const int other = 1 - j;
        r.feasible = true;
        r.p_error = 0.0;
        r.p_failure = 0.0;
        r.probe = ProbeState::pure(ker.front());
        r.decision_rule = DecisionRule{other, other};
        r.note = "effect " + std::to_string(j + 1) +
                 " is rank deficient; the recorded outcome carries effect " + std::to_string(other + 1);
        return r;
    }

    r.feasible = false;
    r.note = "both effects are full rank; perfect single-shot labeling is impossible";
    return r;
}

bool perfect_condition(const HermitianOperator& m1, const HermitianOperator& m2,
                       const HermitianOperator& probe_state, double tol) {
    if (m1.dim() != m2.dim() || m1.dim() != probe_state.dim()) {
        throw DimensionError("perfect_condition: operator dimensions disagree");
    }
    const double trace_dev = std::abs(probe_state.matrix().trace() - Complex{1.0, 0.0});
    if (trace_dev > 1e-6 || !is_psd(probe_state, 1e-6)) {
        throw InvalidOperator("perfect_condition: probe must be a unit-trace positive operator");
    }
    const Matrix xi = probe_state.matrix().transpose();
    const Matrix product = m1.matrix().transpose() * xi * m2.matrix().transpose();
    return spectral_norm(product) <= tol;
}

LabelingReport min_error_binary(const Observable& obs) {
    require_binary(obs, "min_error_binary");
    LabelingReport r = base_report(LabelingMode::min_error, kDefaultTol, kDefaultRankTol);
    r.feasible = true;
    r.p_failure = 0.0;

    // The formula below breaks down for identical effects, where nothing is
    // unknown about the labels; detect that case first.
    if (effects_equal(obs, r.tol)) {
        r.trivial = true;
        r.p_error = 0.0;
        r.note = "effects are identical; labeling is trivially free of error";
        return r;
    }

    const Matrix diff = obs.effect_matrix(0) - obs.effect_matrix(1);
    const double s = spectral_norm(diff);
    // s <= 1 for effects between O and I; clamp away roundoff at the ends.
    r.p_error = std::clamp(0.5 * (1.0 - s), 0.0, 0.5);

    // M2 = I - M1, so M1 and the difference share eigenvectors; the optimal
    // probe is the eigenvector of M1 whose eigenvalue lies farthest from 1/2.
    const EigenSystem es = eig_hermitian(obs.effect(0));
    double s_eig = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
        s_eig = std::max(s_eig, std::abs(2.0 * es.eigenvalues(i) - 1.0));
    }
    int chosen = -1;
    for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
        const double lambda = es.eigenvalues(i);
        if (std::abs(2.0 * lambda - 1.0) < s_eig - 1e-12) continue;
        if (chosen < 0) {
            chosen = static_cast<int>(i);
        } else if (lambda > 0.5 && es.eigenvalues(chosen) <= 0.5) {
            chosen = static_cast<int>(i);  // prefer the eigenvalue above 1/2
        }
    }
    const double lambda = es.eigenvalues(chosen);
    r.probe = ProbeState::pure(es.eigenvectors.col(chosen));
    const int recorded_effect = lambda > 0.5 ? 0 : 1;
    r.decision_rule = DecisionRule{recorded_effect, recorded_effect};
    r.note = "recorded outcome carries effect " + std::to_string(recorded_effect + 1);

    // Cross-check the two routes to p_e: the spectral-norm formula versus
    // min(lambda, 1 - lambda) at the chosen eigenvector.
    const double p_eig = std::min(lambda, 1.0 - lambda);
    if (std::abs(*r.p_error - p_eig) > 1e-9 || std::abs(s - s_eig) > 1e-9) {
        throw Error("min_error_binary: spectral-norm and eigenvalue routes disagree");
    }
    return r;
}

std::vector<PartialClassReport> partial_label(const Observable& obs, double tol) {
    std::vector<PartialClassReport> reports;
    for (const std::vector<int>& cls : multiplicity_classes(obs, tol)) {
        PartialClassReport pr;
        pr.outcome_class = cls;
        const int m = static_cast<int>(cls.size());
        pr.target = 1.0 / m;
        const EigenSystem es = eig_hermitian(obs.effect(cls.front()));
        const Eigen::Index top = es.eigenvalues.size() - 1;
        pr.lambda_max = es.eigenvalues(top);
        pr.feasible = std::abs(pr.lambda_max - pr.target) <= tol;
        if (pr.feasible) {
            const Vector probe = es.eigenvectors.col(top);
            pr.probe = ProbeState::pure(probe);
            double leakage = 0.0;
            for (int k = 0; k < obs.outcomes(); ++k) {
                if (std::find(cls.begin(), cls.end(), k) == cls.end()) {
                    leakage += expectation(obs.effect_matrix(k), probe);
                }
            }
            pr.leakage = leakage;
        }
        reports.push_back(std::move(pr));
    }
    return reports;
}

LabelingReport partial_min_error(const Observable& obs) {
    LabelingReport r = base_report(LabelingMode::min_error, kDefaultTol, kDefaultRankTol);
    r.feasible = true;
    r.p_failure = 0.0;

    int best = 0;
    double lambda_max = -1.0;
    Vector probe;
    for (int j = 0; j < obs.outcomes(); ++j) {
        const EigenSystem es = eig_hermitian(obs.effect(j));
        const Eigen::Index top = es.eigenvalues.size() - 1;
        if (es.eigenvalues(top) > lambda_max + 1e-15) {
            lambda_max = es.eigenvalues(top);
            best = j;
            probe = es.eigenvectors.col(top);
        }
    }
    r.p_error = std::clamp(1.0 - lambda_max, 0.0, 1.0);
    r.probe = ProbeState::pure(probe);
    r.decision_rule = DecisionRule(obs.outcomes(), best);
    r.note = "recorded outcome carries effect " + std::to_string(best + 1);
    if (obs.outcomes() > 2) {
        r.note += "; p_error refers to labeling the recorded outcome only -- "
                  "minimum-error discrimination of all n! labelings is not computed";
    }
    return r;
}

LabelingReport unambiguous_binary(const Observable& obs, double rank_tol) {
    LabelingReport r = perfect_binary(obs, rank_tol);
    r.mode = LabelingMode::unambiguous;
    if (r.feasible) {
        r.p_failure = 0.0;
        r.note += "; inconclusive element T_? = O";
    } else {
        r.note = "no effect is rank deficient; no nontrivial unambiguous strategy exists";
    }
    return r;
}

LabelingReport antilabel(const Observable& obs, int effect_index, double rank_tol) {
    if (effect_index < 0 || effect_index >= obs.outcomes()) {
        throw std::out_of_range("antilabel: effect index " + std::to_string(effect_index + 1) +
                                " out of range 1.." + std::to_string(obs.outcomes()));
    }
    LabelingReport r = base_report(LabelingMode::antilabel, kDefaultTol, rank_tol);

    const std::vector<Vector> ker = kernel(obs.effect(effect_index), rank_tol);
    if (ker.empty()) {
        r.feasible = false;
        r.note = "effect " + std::to_string(effect_index + 1) +
                 " is full rank; antilabeling is infeasible";
        return r;
    }
    const Vector probe = ker.front();
    // Exclusion threshold matches the kernel guarantee ||M v|| <= 10 * rank_tol,
    // so the kernel owner itself is always excluded.
    for (int k = 0; k < obs.outcomes(); ++k) {
        if ((obs.effect_matrix(k) * probe).norm() <= 10.0 * rank_tol) {
            r.excluded_effects.push_back(k);
        }
    }
    r.feasible = true;
    r.p_error = 0.0;
    r.p_failure = 0.0;
    r.probe = ProbeState::pure(probe);
    r.note = "recorded outcome cannot carry the excluded effects";
    return r;
}

LabelingReport sequential_plan(const Observable& obs, double tol) {
    LabelingReport r = base_report(LabelingMode::sequential, tol, kDefaultRankTol);
    r.classes = partial_label(obs, tol);
    const int n_classes = static_cast<int>(r.classes.size());
    r.min_uses_bound = n_classes > 1 ? n_classes - 1 : 0;

    int infeasible = 0;
    int last_infeasible = -1;
    for (int c = 0; c < n_classes; ++c) {
        if (!r.classes[c].feasible) {
            ++infeasible;
            last_infeasible = c;
        }
    }
    r.fully_labelable = infeasible <= 1;

    // One class never needs a step: the infeasible one when present (its
    // identity follows by elimination), otherwise the final class in order.
    int eliminated = -1;
    if (r.fully_labelable && n_classes > 1) {
        eliminated = infeasible == 1 ? last_infeasible : n_classes - 1;
    }
    for (int c = 0; c < n_classes; ++c) {
        if (!r.classes[c].feasible || c == eliminated) continue;
        if (r.fully_labelable && static_cast<int>(r.plan.size()) == r.min_uses_bound) break;
        r.plan.push_back(PlanStep{*r.classes[c].probe, r.classes[c].outcome_class,
                                  r.classes[c].outcome_class.front()});
    }

    if (r.fully_labelable) {
        r.feasible = true;
        r.p_error = 0.0;
        r.p_failure = 0.0;
        r.note = "fully perfectly labelable in " + std::to_string(r.plan.size()) +
                 " use(s); lower bound " + std::to_string(r.min_uses_bound);
    } else {
        r.feasible = false;
        r.note = "not perfectly labelable with single-shot steps; " +
                 std::to_string(r.plan.size()) + " of " + std::to_string(n_classes) +
                 " classes coverable";
    }
    return r;
}

LabelingReport best_single_shot(const Observable& obs, double rank_tol) {
    if (obs.outcomes() == 2) {
        LabelingReport r = perfect_binary(obs, rank_tol);
        if (r.feasible) return r;
        return min_error_binary(obs);
    }
    return partial_min_error(obs);
}

}  // namespace qlabel
