#include "fairbias/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fairbias/log.hpp"
#include "fairbias/random.hpp"

namespace fairbias {

std::string_view to_string(CeoCost cost) {
    switch (cost) {
    case CeoCost::fnr: return "fnr";
    case CeoCost::fpr: return "fpr";
    case CeoCost::weighted: return "weighted";
    }
    return "?";
}

CeoCost parse_ceo_cost(std::string_view text) {
    if (text == "fnr") return CeoCost::fnr;
    if (text == "fpr") return CeoCost::fpr;
    if (text == "weighted") return CeoCost::weighted;
    throw ConfigError("unknown CEO cost constraint '" + std::string(text) + "'");
}

void RocGrid::validate() const {
    if (!(lb < ub)) throw ConfigError("ROC bounds need lb < ub");
    if (n_thresholds < 2 || n_margins < 2) throw ConfigError("ROC grids need at least 2 points");
}

std::vector<double> RocGrid::thresholds() const {
    std::vector<double> t(n_thresholds);
    const double lo = 0.01, hi = 0.99;
    for (std::size_t i = 0; i < n_thresholds; ++i)
        t[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_thresholds - 1);
    return t;
}

std::vector<double> RocGrid::margins(double t) const {
    const double m = std::min(t, 1.0 - t);
    std::vector<double> out(n_margins);
    for (std::size_t j = 0; j < n_margins; ++j)
        out[j] = m * static_cast<double>(j + 1) / static_cast<double>(n_margins);
    return out;
}

void MitigationSpec::validate() const { roc.validate(); }

// ---- reweighing -----------------------------------------------------------

ReweighResult reweigh(const Dataset& train) {
    std::array<std::array<double, 2>, 2> cell{};
    double total = 0.0;
    for (std::size_t i = 0; i < train.size(); ++i) {
        cell[static_cast<std::size_t>(train.sensitive[i])][static_cast<std::size_t>(train.label[i])] +=
            train.weight[i];
        total += train.weight[i];
    }
    for (int a = 0; a < 2; ++a)
        for (int y = 0; y < 2; ++y)
            if (!(cell[a][y] > 0))
                throw MethodFailed("reweighing: empty cell (A=" + std::to_string(a) +
                                   ", Y=" + std::to_string(y) + ")");

    ReweighResult out;
    for (int a = 0; a < 2; ++a) {
        const double pa = (cell[a][0] + cell[a][1]) / total;
        for (int y = 0; y < 2; ++y) {
            const double py = (cell[0][y] + cell[1][y]) / total;
            out.table[a][y] = pa * py / (cell[a][y] / total);
        }
    }
    out.data = train;
    for (std::size_t i = 0; i < train.size(); ++i)
        out.data.weight[i] =
            train.weight[i] *
            out.table[static_cast<std::size_t>(train.sensitive[i])][static_cast<std::size_t>(train.label[i])];
    return out;
}

MaybeReal weighted_label_spd(const Dataset& ds) {
    std::array<double, 2> w{}, pos{};
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto a = static_cast<std::size_t>(ds.sensitive[i]);
        w[a] += ds.weight[i];
        pos[a] += ds.weight[i] * ds.label[i];
    }
    if (!(w[0] > 0) || !(w[1] > 0)) return std::nullopt;
    return pos[1] / w[1] - pos[0] / w[0];
}

// ---- massaging ------------------------------------------------------------

std::size_t massage_flip_count(const Dataset& train) {
    // Exact integers: M* = (c0 n1 - c1 n0) / (n1 + n0).
    long long n[2] = {0, 0}, c[2] = {0, 0};
    for (std::size_t i = 0; i < train.size(); ++i) {
        ++n[train.sensitive[i]];
        c[train.sensitive[i]] += train.label[i];
    }
    if (n[0] == 0 || n[1] == 0) throw MethodFailed("massaging: a group is empty");
    const long long num = c[0] * n[1] - c[1] * n[0];
    const long long den = n[0] + n[1];
    if (num <= 0) return 0;
    return static_cast<std::size_t>((2 * num + den) / (2 * den));
}

MassageResult massage(const Dataset& train, const LogisticParams& ranker) {
    MassageResult out;
    out.flips_requested = massage_flip_count(train);
    out.data = train;
    if (out.flips_requested == 0) return out;

    std::vector<std::size_t> rows(train.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    const Encoder enc = Encoder::fit(train, rows, true);
    const EncodedMatrix m = apply_encoder(enc, train);
    const TrainedModel model = fit_logistic(m, train.label, train.weight, ranker);
    out.ranker_scores = model.predict_scores(m);
    const auto& s = out.ranker_scores;

    std::vector<std::size_t> promote, demote;
    for (std::size_t i = 0; i < train.size(); ++i) {
        if (train.sensitive[i] == 1 && train.label[i] == 0) promote.push_back(i);
        if (train.sensitive[i] == 0 && train.label[i] == 1) demote.push_back(i);
    }
    std::sort(promote.begin(), promote.end(), [&](std::size_t a, std::size_t b) {
        if (s[a] != s[b]) return s[a] > s[b];
        return train.ids[a] < train.ids[b];
    });
    std::sort(demote.begin(), demote.end(), [&](std::size_t a, std::size_t b) {
        if (s[a] != s[b]) return s[a] < s[b];
        return train.ids[a] < train.ids[b];
    });

    const std::size_t m_up = std::min(out.flips_requested, promote.size());
    const std::size_t m_down = std::min(out.flips_requested, demote.size());
    out.saturated = m_up < out.flips_requested || m_down < out.flips_requested;
    if (out.saturated)
        log::info("massaging saturated: requested ", out.flips_requested, " flips, available ",
                  promote.size(), " / ", demote.size());
    for (std::size_t k = 0; k < m_up; ++k) {
        out.data.label[promote[k]] = 1;
        out.promoted.push_back(train.ids[promote[k]]);
    }
    for (std::size_t k = 0; k < m_down; ++k) {
        out.data.label[demote[k]] = 0;
        out.demoted.push_back(train.ids[demote[k]]);
    }
    out.data.label_biased = true;
    return out;
}

Dataset ftu(const Dataset& train) {
    Dataset out = train;
    out.sensitive_visible = false;
    return out;
}

// ---- EOP ------------------------------------------------------------------

namespace {

struct EopInputs {
    // Base rates per group: tpr, fpr of the base predictions, plus counts.
    std::array<double, 2> tpr{}, fpr{}, pos{}, neg{}, pred1{}, pred0{};
};

EopInputs eop_inputs(std::span<const int> pred, std::span<const int> truth, std::span<const int> groups) {
    EopInputs in;
    std::array<double, 2> tp{}, fp{};
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const auto a = static_cast<std::size_t>(groups[i]);
        if (truth[i] == 1) {
            in.pos[a] += 1;
            tp[a] += pred[i];
        } else {
            in.neg[a] += 1;
            fp[a] += pred[i];
        }
        (pred[i] == 1 ? in.pred1[a] : in.pred0[a]) += 1;
    }
    for (std::size_t a = 0; a < 2; ++a) {
        in.tpr[a] = in.pos[a] > 0 ? tp[a] / in.pos[a] : 0.0;
        in.fpr[a] = in.neg[a] > 0 ? fp[a] / in.neg[a] : 0.0;
    }
    return in;
}

// Variable order: x = (mix[0][0], mix[0][1], mix[1][0], mix[1][1]).
constexpr std::size_t var_group(std::size_t v) { return v / 2; }
constexpr std::size_t var_pred(std::size_t v) { return v % 2; }

}  // namespace

GroupRates eop_expected_rates(const EopSolution& sol, std::span<const int> pred,
                              std::span<const int> truth, std::span<const int> groups) {
    const EopInputs in = eop_inputs(pred, truth, groups);
    GroupRates r;
    for (std::size_t a = 0; a < 2; ++a) {
        r.tpr[a] = in.tpr[a] * sol.mix[a][1] + (1 - in.tpr[a]) * sol.mix[a][0];
        r.fpr[a] = in.fpr[a] * sol.mix[a][1] + (1 - in.fpr[a]) * sol.mix[a][0];
    }
    return r;
}

PostProcessor fit_eop(std::span<const int> val_pred, std::span<const int> val_truth,
                      std::span<const int> groups) {
    if (val_pred.size() != val_truth.size() || val_pred.size() != groups.size())
        throw Error("fit_eop: input lengths differ");
    const EopInputs in = eop_inputs(val_pred, val_truth, groups);
    for (std::size_t a = 0; a < 2; ++a) {
        if (in.pos[a] == 0 || in.neg[a] == 0)
            throw MethodFailed("eop: group " + std::to_string(a) + " lacks positive or negative truth");
        if (in.pred1[a] == 0 || in.pred0[a] == 0)
            throw MethodFailed("eop: group " + std::to_string(a) +
                               " receives no positive or no negative predictions");
    }

    // Equalities: TPR_1 - TPR_0 = 0 and FPR_1 - FPR_0 = 0, linear in x.
    // Row coefficients per variable (a, yhat): +/- rate for yhat=1, +/- (1-rate) for yhat=0.
    double A[2][4];
    for (std::size_t v = 0; v < 4; ++v) {
        const std::size_t a = var_group(v), yh = var_pred(v);
        const double sign = a == 1 ? 1.0 : -1.0;
        A[0][v] = sign * (yh == 1 ? in.tpr[a] : 1 - in.tpr[a]);
        A[1][v] = sign * (yh == 1 ? in.fpr[a] : 1 - in.fpr[a]);
    }
    // Objective (expected correct count): sum_a pos_a TPR_a + neg_a (1 - FPR_a).
    double c[4];
    double constant = in.neg[0] + in.neg[1];
    for (std::size_t v = 0; v < 4; ++v) {
        const std::size_t a = var_group(v), yh = var_pred(v);
        const double t = yh == 1 ? in.tpr[a] : 1 - in.tpr[a];
        const double f = yh == 1 ? in.fpr[a] : 1 - in.fpr[a];
        c[v] = in.pos[a] * t - in.neg[a] * f;
    }
    const double n = static_cast<double>(val_pred.size());
    auto flips = [&](const std::array<double, 4>& x) {
        double total = 0.0;
        for (std::size_t v = 0; v < 4; ++v) {
            const std::size_t a = var_group(v), yh = var_pred(v);
            const double count = yh == 1 ? in.pred1[a] : in.pred0[a];
            total += count * (yh == 1 ? 1 - x[v] : x[v]);
        }
        return total;
    };

    constexpr double kTol = 1e-12;
    bool found = false;
    std::array<double, 4> best{};
    double best_obj = 0.0, best_flips = 0.0;
    auto consider = [&](std::array<double, 4> x) {
        for (double& xv : x) {
            if (xv < -1e-9 || xv > 1 + 1e-9) return;
            xv = std::clamp(xv, 0.0, 1.0);
        }
        for (const auto& row : A) {
            double r = 0.0;
            for (std::size_t v = 0; v < 4; ++v) r += row[v] * x[v];
            if (std::abs(r) > 1e-12) return;
        }
        double obj = 0.0;
        for (std::size_t v = 0; v < 4; ++v) obj += c[v] * x[v];
        const double fl = flips(x);
        if (!found || obj > best_obj + kTol * n || (std::abs(obj - best_obj) <= kTol * n && fl < best_flips - kTol)) {
            found = true;
            best = x;
            best_obj = obj;
            best_flips = fl;
        }
    };

    // Vertices of {x in [0,1]^4 : A x = 0}: every basic solution with two,
    // one or zero variables off their bounds.
    for (unsigned mask = 0; mask < 16; ++mask) {
        std::array<double, 4> x{};
        for (std::size_t v = 0; v < 4; ++v) x[v] = (mask >> v) & 1u;
        consider(x);
    }
    for (std::size_t b = 0; b < 4; ++b) {
        for (unsigned mask = 0; mask < 8; ++mask) {
            for (std::size_t row = 0; row < 2; ++row) {
                if (std::abs(A[row][b]) < 1e-15) continue;
                std::array<double, 4> x{};
                std::size_t bit = 0;
                double rhs = 0.0;
                for (std::size_t v = 0; v < 4; ++v) {
                    if (v == b) continue;
                    x[v] = (mask >> bit++) & 1u;
                    rhs -= A[row][v] * x[v];
                }
                x[b] = rhs / A[row][b];
                consider(x);
            }
        }
    }
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            const double det = A[0][i] * A[1][j] - A[0][j] * A[1][i];
            if (std::abs(det) < 1e-15) continue;
            for (unsigned mask = 0; mask < 4; ++mask) {
                std::array<double, 4> x{};
                std::size_t bit = 0;
                double r0 = 0.0, r1 = 0.0;
                for (std::size_t v = 0; v < 4; ++v) {
                    if (v == i || v == j) continue;
                    x[v] = (mask >> bit++) & 1u;
                    r0 -= A[0][v] * x[v];
                    r1 -= A[1][v] * x[v];
                }
                x[i] = (r0 * A[1][j] - r1 * A[0][j]) / det;
                x[j] = (A[0][i] * r1 - A[1][i] * r0) / det;
                consider(x);
            }
        }
    }
    if (!found) throw MethodFailed("eop: linear program has no feasible vertex");

    EopSolution sol;
    for (std::size_t v = 0; v < 4; ++v) sol.mix[var_group(v)][var_pred(v)] = best[v];
    sol.expected_accuracy = (best_obj + constant) / n;
    return PostProcessor(Method::eop, sol);
}

// ---- CEO ------------------------------------------------------------------

MaybeReal ceo_group_cost(std::span<const double> scores, std::span<const int> truth, CeoCost cost) {
    double pos = 0, neg = 0, gfnr = 0, gfpr = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (truth[i] == 1) {
            pos += 1;
            gfnr += 1 - scores[i];
        } else {
            neg += 1;
            gfpr += scores[i];
        }
    }
    if (pos == 0 || neg == 0) return std::nullopt;
    gfnr /= pos;
    gfpr /= neg;
    const double base_rate = pos / (pos + neg);
    switch (cost) {
    case CeoCost::fnr: return gfnr * base_rate;
    case CeoCost::fpr: return gfpr * (1 - base_rate);
    case CeoCost::weighted: return 0.5 * gfpr * (1 - base_rate) + 0.5 * gfnr * base_rate;
    }
    return std::nullopt;
}

PostProcessor fit_ceo(std::span<const double> val_scores, std::span<const int> val_truth,
                      std::span<const int> groups, CeoCost cost) {
    if (val_scores.size() != val_truth.size() || val_scores.size() != groups.size())
        throw Error("fit_ceo: input lengths differ");
    CeoSolution sol;
    sol.cost = cost;
    for (int a = 0; a < 2; ++a) {
        std::vector<double> s;
        std::vector<int> t;
        for (std::size_t i = 0; i < val_scores.size(); ++i)
            if (groups[i] == a) {
                s.push_back(val_scores[i]);
                t.push_back(val_truth[i]);
            }
        const MaybeReal c = ceo_group_cost(s, t, cost);
        if (!c) throw MethodFailed("ceo: group " + std::to_string(a) + " lacks one truth class");
        const double br = static_cast<double>(std::count(t.begin(), t.end(), 1)) / static_cast<double>(t.size());
        std::vector<double> trivial(s.size(), br);
        sol.group_cost[a] = *c;
        sol.trivial_cost[a] = *ceo_group_cost(trivial, t, cost);
        sol.base_rate[a] = br;
    }
    const std::size_t cheap = sol.group_cost[1] > sol.group_cost[0] ? 0 : 1;
    const std::size_t dear = 1 - cheap;
    const double gap = sol.group_cost[dear] - sol.group_cost[cheap];
    const double span = sol.trivial_cost[cheap] - sol.group_cost[cheap];
    if (gap > 0 && span > 0) sol.mix_rate[cheap] = std::clamp(gap / span, 0.0, 1.0);
    return PostProcessor(Method::ceo, sol);
}

// ---- ROC ------------------------------------------------------------------

std::vector<int> roc_labels(std::span<const double> scores, std::span<const int> groups,
                            double threshold, double margin) {
    std::vector<int> out(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (std::abs(scores[i] - threshold) <= margin) out[i] = groups[i] == 1 ? 1 : 0;
        else out[i] = scores[i] >= threshold ? 1 : 0;
    }
    return out;
}

MaybeReal roc_criterion(RocCriterion criterion, std::span<const int> labels,
                        std::span<const int> truth, std::span<const int> groups) {
    switch (criterion) {
    case RocCriterion::spd: return spd(labels, groups);
    case RocCriterion::eqop: return odds_metrics(labels, truth, groups).eqop;
    case RocCriterion::avod: return odds_metrics(labels, truth, groups).avod;
    }
    return std::nullopt;
}

RocCriterion roc_criterion_for(Method method) {
    switch (method) {
    case Method::roc_spd: return RocCriterion::spd;
    case Method::roc_eqop: return RocCriterion::eqop;
    case Method::roc_avod: return RocCriterion::avod;
    default: throw Error("not a reject-option method");
    }
}

PostProcessor fit_roc(std::span<const double> val_scores, std::span<const int> val_truth,
                      std::span<const int> groups, RocCriterion criterion, const RocGrid& grid) {
    grid.validate();
    if (val_scores.size() != val_truth.size() || val_scores.size() != groups.size())
        throw Error("fit_roc: input lengths differ");

    const Method method = criterion == RocCriterion::spd    ? Method::roc_spd
                          : criterion == RocCriterion::eqop ? Method::roc_eqop
                                                            : Method::roc_avod;
    RocSolution best_feasible, best_fallback;
    bool have_feasible = false, have_fallback = false;
    for (double t : grid.thresholds()) {
        for (double m : grid.margins(t)) {
            const std::vector<int> labels = roc_labels(val_scores, groups, t, m);
            const MaybeReal crit = roc_criterion(criterion, labels, val_truth, groups);
            if (!crit) continue;
            const MaybeReal bal = balanced_accuracy(labels, val_truth);
            if (*crit >= grid.lb && *crit <= grid.ub && bal) {
                if (!have_feasible || *bal > *best_feasible.balanced_accuracy) {
                    best_feasible = {criterion, t, m, true, *crit, bal};
                    have_feasible = true;
                }
            }
            if (!have_fallback || std::abs(*crit) < std::abs(best_fallback.criterion_value)) {
                best_fallback = {criterion, t, m, false, *crit, bal};
                have_fallback = true;
            }
        }
    }
    if (have_feasible) return PostProcessor(method, best_feasible);
    if (!have_fallback)
        throw MethodFailed("roc: fairness criterion undefined on every grid cell");
    log::info("roc: no grid cell satisfies the bounds; using the one closest to zero");
    return PostProcessor(method, best_fallback);
}

// ---- application ----------------------------------------------------------

Prediction PostProcessor::apply(const Prediction& pred, std::span<const int> groups,
                                std::uint64_t seed) const {
    if (groups.size() != pred.ids.size()) throw Error("post-processing: groups not aligned");
    Prediction out = pred;
    if (std::holds_alternative<std::monostate>(params_)) return out;

    if (const auto* eop = std::get_if<EopSolution>(&params_)) {
        out.scores.clear();
        for (std::size_t i = 0; i < pred.ids.size(); ++i) {
            const double p = eop->mix[static_cast<std::size_t>(groups[i])][static_cast<std::size_t>(pred.labels[i])];
            out.labels[i] = unit_uniform(derive_seed(seed, pred.ids[i])) < p ? 1 : 0;
        }
        return out;
    }
    if (!pred.has_scores()) throw Error("post-processing method needs prediction scores");
    if (const auto* ceo = std::get_if<CeoSolution>(&params_)) {
        for (std::size_t i = 0; i < pred.ids.size(); ++i) {
            const auto a = static_cast<std::size_t>(groups[i]);
            if (ceo->mix_rate[a] > 0 && unit_uniform(derive_seed(seed, pred.ids[i])) < ceo->mix_rate[a])
                out.scores[i] = ceo->base_rate[a];
            out.labels[i] = out.scores[i] >= 0.5 ? 1 : 0;
        }
        return out;
    }
    const auto& roc = std::get<RocSolution>(params_);
    out.labels = roc_labels(pred.scores, groups, roc.threshold, roc.margin);
    out.scores.clear();
    return out;
}

std::string PostProcessor::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "postprocessor method=" << to_string(method_);
    if (const auto* eop = std::get_if<EopSolution>(&params_)) {
        os << " p_priv_0=" << eop->mix[0][0] << " p_priv_1=" << eop->mix[0][1]
           << " p_unpriv_0=" << eop->mix[1][0] << " p_unpriv_1=" << eop->mix[1][1]
           << " expected_accuracy=" << eop->expected_accuracy;
    } else if (const auto* ceo = std::get_if<CeoSolution>(&params_)) {
        os << " cost=" << to_string(ceo->cost) << " mix_priv=" << ceo->mix_rate[0]
           << " mix_unpriv=" << ceo->mix_rate[1] << " base_priv=" << ceo->base_rate[0]
           << " base_unpriv=" << ceo->base_rate[1] << " cost_priv=" << ceo->group_cost[0]
           << " cost_unpriv=" << ceo->group_cost[1];
    } else if (const auto* roc = std::get_if<RocSolution>(&params_)) {
        os << " threshold=" << roc->threshold << " margin=" << roc->margin
           << " feasible=" << roc->feasible << " criterion_value=" << roc->criterion_value;
    } else {
        os << " identity";
    }
    return os.str();
}

}  // namespace fairbias
