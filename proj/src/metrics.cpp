#include "fairbias/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace fairbias {

namespace {

struct Confusion {
    double tp = 0, fp = 0, tn = 0, fn = 0;
};

Confusion confusion(std::span<const int> pred, std::span<const int> truth,
                    std::span<const int> groups, int a) {
    Confusion c;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (a >= 0 && groups[i] != a) continue;
        if (truth[i] == 1) (pred[i] == 1 ? c.tp : c.fn) += 1;
        else (pred[i] == 1 ? c.fp : c.tn) += 1;
    }
    return c;
}

MaybeReal ratio(double num, double den) {
    if (den <= 0) return std::nullopt;
    return num / den;
}

MaybeReal diff(MaybeReal a, MaybeReal b) {
    if (!a || !b) return std::nullopt;
    return *a - *b;
}

void check_sizes(std::size_t a, std::size_t b) {
    if (a != b) throw Error("prediction and truth lengths differ");
}

}  // namespace

Prediction Prediction::aligned_to(std::span<const InstanceId> order) const {
    std::unordered_map<InstanceId, std::size_t> index;
    index.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);
    Prediction out;
    out.ids.assign(order.begin(), order.end());
    out.labels.reserve(order.size());
    if (has_scores()) out.scores.reserve(order.size());
    for (InstanceId id : order) {
        auto it = index.find(id);
        if (it == index.end()) throw Error("prediction is missing instance id " + std::to_string(id));
        out.labels.push_back(labels[it->second]);
        if (has_scores()) out.scores.push_back(scores[it->second]);
    }
    return out;
}

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names{"accuracy", "balanced_accuracy", "spd",
                                                "eqod",     "avod",              "eqop",
                                                "fnr_diff", "fpr_diff",          "bcc",
                                                "gei"};
    return names;
}

std::vector<MaybeReal> metric_values(const MetricReport& r) {
    return {r.accuracy, r.balanced_accuracy, r.spd,      r.eqod, r.avod,
            r.eqop,     r.fnr_diff,          r.fpr_diff, r.bcc,  r.gei};
}

MetricReport report_from_values(const std::vector<MaybeReal>& v) {
    if (v.size() != 10) throw Error("a metric report has 10 values");
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]};
}

MaybeReal accuracy(std::span<const int> pred, std::span<const int> truth) {
    check_sizes(pred.size(), truth.size());
    if (pred.empty()) return std::nullopt;
    std::size_t hit = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) hit += pred[i] == truth[i];
    return static_cast<double>(hit) / static_cast<double>(pred.size());
}

MaybeReal balanced_accuracy(std::span<const int> pred, std::span<const int> truth) {
    check_sizes(pred.size(), truth.size());
    const Confusion c = confusion(pred, truth, {}, -1);
    auto tpr = ratio(c.tp, c.tp + c.fn);
    auto tnr = ratio(c.tn, c.tn + c.fp);
    if (!tpr || !tnr) return std::nullopt;
    return (*tpr + *tnr) / 2.0;
}

MaybeReal spd(std::span<const int> pred, std::span<const int> groups) {
    check_sizes(pred.size(), groups.size());
    return diff(positive_rate(pred, groups, 1), positive_rate(pred, groups, 0));
}

OddsMetrics odds_metrics(std::span<const int> pred, std::span<const int> truth,
                         std::span<const int> groups) {
    check_sizes(pred.size(), truth.size());
    check_sizes(pred.size(), groups.size());
    const Confusion u = confusion(pred, truth, groups, 1);
    const Confusion p = confusion(pred, truth, groups, 0);
    const MaybeReal d_tpr = diff(ratio(u.tp, u.tp + u.fn), ratio(p.tp, p.tp + p.fn));
    const MaybeReal d_fpr = diff(ratio(u.fp, u.fp + u.tn), ratio(p.fp, p.fp + p.tn));
    const MaybeReal d_fnr = diff(ratio(u.fn, u.tp + u.fn), ratio(p.fn, p.tp + p.fn));

    OddsMetrics m;
    m.eqop = d_tpr;
    m.fpr_diff = d_fpr;
    m.fnr_diff = d_fnr;
    if (d_tpr && d_fpr) {
        m.eqod = std::max(std::abs(*d_tpr), std::abs(*d_fpr));
        m.avod = (*d_tpr + *d_fpr) / 2.0;
    }
    return m;
}

std::vector<std::vector<std::size_t>> nearest_neighbours(std::span<const double> points,
                                                         std::size_t dim,
                                                         std::span<const InstanceId> ids,
                                                         std::size_t k) {
    const std::size_t n = ids.size();
    if (points.size() != n * dim) throw Error("neighbour search: point matrix has wrong size");
    if (n < k + 1) throw Error("neighbour search needs at least k + 1 rows");

    std::vector<std::vector<std::size_t>> out(n);
    std::vector<std::pair<double, std::size_t>> cand;
    cand.reserve(n);
    auto closer = [&](const std::pair<double, std::size_t>& a, const std::pair<double, std::size_t>& b) {
        if (a.first != b.first) return a.first < b.first;
        return ids[a.second] < ids[b.second];
    };
    for (std::size_t i = 0; i < n; ++i) {
        cand.clear();
        const double* pi = points.data() + i * dim;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double* pj = points.data() + j * dim;
            double d2 = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                const double t = pi[c] - pj[c];
                d2 += t * t;
            }
            cand.emplace_back(d2, j);
        }
        std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end(), closer);
        out[i].reserve(k);
        for (std::size_t q = 0; q < k; ++q) out[i].push_back(cand[q].second);
    }
    return out;
}

MaybeReal bcc(std::span<const int> pred, const std::vector<std::vector<std::size_t>>& neighbours,
              double delta) {
    if (pred.size() != neighbours.size()) throw Error("bcc: neighbour lists do not match predictions");
    if (pred.empty()) return std::nullopt;
    double total = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const auto& nb = neighbours[i];
        if (nb.empty()) return std::nullopt;
        double mean = 0.0;
        for (std::size_t j : nb) mean += pred[j];
        mean /= static_cast<double>(nb.size());
        const double c = 1.0 - std::abs(pred[i] - mean);
        if (c >= delta) total += c;
    }
    return total / static_cast<double>(pred.size());
}

MaybeReal bcc(std::span<const int> pred, const EncodedMatrix& features, std::size_t k, double delta) {
    if (features.has_sensitive())
        throw Error("bcc: the distance encoding must exclude the sensitive attribute");
    if (features.rows < k + 1) return std::nullopt;
    return bcc(pred, nearest_neighbours(features.data, features.cols, features.ids, k), delta);
}

MaybeReal gei(std::span<const int> pred, std::span<const int> truth, double alpha) {
    check_sizes(pred.size(), truth.size());
    if (pred.empty()) return std::nullopt;
    const double n = static_cast<double>(pred.size());
    double mu = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) mu += pred[i] - truth[i] + 1;
    mu /= n;
    if (!(mu > 0)) return std::nullopt;
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double b = pred[i] - truth[i] + 1;
        sum += std::pow(b / mu, alpha) - 1.0;
    }
    return sum / (n * alpha * (alpha - 1.0));
}

MetricReport compute_report(std::span<const int> pred, std::span<const int> truth,
                            std::span<const int> groups,
                            const std::vector<std::vector<std::size_t>>& neighbours) {
    MetricReport r;
    r.accuracy = accuracy(pred, truth);
    r.balanced_accuracy = balanced_accuracy(pred, truth);
    r.spd = spd(pred, groups);
    const OddsMetrics odds = odds_metrics(pred, truth, groups);
    r.eqod = odds.eqod;
    r.avod = odds.avod;
    r.eqop = odds.eqop;
    r.fnr_diff = odds.fnr_diff;
    r.fpr_diff = odds.fpr_diff;
    if (!neighbours.empty()) r.bcc = bcc(pred, neighbours);
    r.gei = gei(pred, truth);
    return r;
}

MetricReport evaluate_view(const Prediction& pred, const Dataset& view, const Encoder& encoder,
                           const BccSettings& bcc_settings) {
    if (encoder.includes_sensitive())
        throw Error("evaluation encoder must exclude the sensitive attribute");
    const Prediction aligned = pred.aligned_to(view.ids);
    MetricReport r = compute_report(aligned.labels, view.label, view.sensitive, {});
    if (view.size() >= bcc_settings.k + 1) {
        const auto points = encoder.transform(view);
        const auto nb = nearest_neighbours(points, encoder.width(), view.ids, bcc_settings.k);
        r.bcc = bcc(aligned.labels, nb, bcc_settings.delta);
    }
    return r;
}

std::pair<MetricReport, MetricReport> evaluate(const Prediction& pred, const Dataset& fair_view,
                                               const Dataset& biased_view, const Encoder& encoder,
                                               const BccSettings& bcc_settings) {
    return {evaluate_view(pred, fair_view, encoder, bcc_settings),
            evaluate_view(pred, biased_view, encoder, bcc_settings)};
}

}  // namespace fairbias
