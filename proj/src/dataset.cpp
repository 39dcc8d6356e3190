#include "fairbias/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairbias/log.hpp"
#include "fairbias/random.hpp"

namespace fairbias {

std::size_t Dataset::group_size(int a) const {
    return static_cast<std::size_t>(std::count(sensitive.begin(), sensitive.end(), a));
}

std::size_t Dataset::cell_size(int a, int y) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < size(); ++i)
        if (sensitive[i] == a && label[i] == y) ++n;
    return n;
}

Dataset Dataset::take(std::span<const std::size_t> rows) const {
    Dataset out;
    out.name = name;
    out.sensitive_name = sensitive_name;
    out.threshold = threshold;
    out.group_removed = group_removed;
    out.sensitive_visible = sensitive_visible;
    out.label_biased = label_biased;
    out.ids.reserve(rows.size());
    out.sensitive.reserve(rows.size());
    out.score.reserve(rows.size());
    out.label.reserve(rows.size());
    out.weight.reserve(rows.size());
    for (std::size_t r : rows) {
        out.ids.push_back(ids[r]);
        out.sensitive.push_back(sensitive[r]);
        out.score.push_back(score[r]);
        out.label.push_back(label[r]);
        out.weight.push_back(weight[r]);
    }
    out.features.reserve(features.size());
    for (const Column& col : features) {
        Column c;
        c.name = col.name;
        c.kind = col.kind;
        c.categories = col.categories;
        c.values.reserve(rows.size());
        for (std::size_t r : rows) c.values.push_back(col.values[r]);
        out.features.push_back(std::move(c));
    }
    return out;
}

Dataset Dataset::keep_ids(const IdSet& keep) const {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < size(); ++i)
        if (keep.contains(ids[i])) rows.push_back(i);
    return take(rows);
}

Dataset Dataset::drop_ids(const IdSet& drop) const {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < size(); ++i)
        if (!drop.contains(ids[i])) rows.push_back(i);
    return take(rows);
}

std::unordered_map<InstanceId, std::size_t> Dataset::id_index() const {
    std::unordered_map<InstanceId, std::size_t> index;
    index.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) index.emplace(ids[i], i);
    return index;
}

const Column& Dataset::feature(std::string_view feature_name) const {
    for (const Column& c : features)
        if (c.name == feature_name) return c;
    throw Error("dataset '" + name + "' has no feature '" + std::string(feature_name) + "'");
}

std::vector<std::string> Dataset::feature_names() const {
    std::vector<std::string> names;
    for (const Column& c : features) names.push_back(c.name);
    return names;
}

void Dataset::validate() const {
    const std::size_t n = size();
    if (sensitive.size() != n || score.size() != n || label.size() != n || weight.size() != n)
        throw Error("dataset '" + name + "': column lengths disagree");
    for (const Column& c : features) {
        if (c.values.size() != n) throw Error("feature '" + c.name + "' has wrong length");
        if (c.name == sensitive_name)
            throw Error("sensitive column '" + c.name + "' must not be a plain feature");
        if (c.is_categorical())
            for (double v : c.values)
                if (v < 0 || v >= static_cast<double>(c.categories.size()) || v != std::floor(v))
                    throw Error("feature '" + c.name + "' has an invalid category code");
    }
    IdSet seen;
    for (std::size_t i = 0; i < n; ++i) {
        if (!seen.insert(ids[i]).second) throw Error("duplicate instance id " + std::to_string(ids[i]));
        if (sensitive[i] != 0 && sensitive[i] != 1) throw Error("sensitive value must be 0 or 1");
        if (label[i] != 0 && label[i] != 1) throw Error("label must be 0 or 1");
        if (!(weight[i] > 0)) throw Error("weights must be positive");
        if (!label_biased && label[i] != (score[i] >= threshold ? 1 : 0))
            throw Error("label of id " + std::to_string(ids[i]) + " disagrees with its score");
    }
    if (n > 0 && !group_removed && (group_size(0) == 0 || group_size(1) == 0))
        throw Error("dataset '" + name + "' is missing a group but is not flagged group-removed");
}

MaybeReal positive_rate(std::span<const int> labels, std::span<const int> groups, int a) {
    std::size_t n = 0, pos = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (groups[i] != a) continue;
        ++n;
        pos += labels[i] == 1;
    }
    if (n == 0) return std::nullopt;
    return static_cast<double>(pos) / static_cast<double>(n);
}

std::size_t FoldPlan::fold_of(InstanceId id) const {
    auto it = assignment.find(id);
    if (it == assignment.end()) throw Error("id " + std::to_string(id) + " is not in the fold plan");
    return it->second;
}

std::vector<InstanceId> FoldPlan::fold_ids(std::size_t fold) const {
    std::vector<InstanceId> out;
    for (const auto& [id, f] : assignment)
        if (f == fold) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<InstanceId> FoldPlan::train_ids() const {
    std::vector<InstanceId> out;
    for (const auto& [id, f] : assignment)
        if (f != test_fold && f != validation_fold) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
}

FoldPlan FoldPlan::rotated(std::size_t iteration) const {
    FoldPlan copy = *this;
    copy.test_fold = iteration % n_folds;
    copy.validation_fold = (iteration + 1) % n_folds;
    return copy;
}

FoldPlan make_fold_plan(const Dataset& dataset, std::size_t n_folds, std::uint64_t seed,
                        bool stratify) {
    if (n_folds < 3) throw ConfigError("n_folds must be at least 3");
    if (dataset.empty()) throw Error("cannot plan folds for an empty dataset");

    std::vector<std::vector<InstanceId>> cells(4);
    for (std::size_t i = 0; i < dataset.size(); ++i)
        cells[static_cast<std::size_t>(2 * dataset.sensitive[i] + dataset.label[i])].push_back(
            dataset.ids[i]);

    std::size_t smallest = dataset.size();
    for (const auto& c : cells)
        if (!c.empty()) smallest = std::min(smallest, c.size());

    FoldPlan plan;
    plan.n_folds = n_folds;
    plan.stratified = stratify && smallest >= n_folds;
    if (stratify && !plan.stratified)
        log::warn("fold plan for '", dataset.name, "': smallest (A,Y) cell has ", smallest,
                  " rows < ", n_folds, " folds; using plain random assignment");
    if (!plan.stratified) {
        std::vector<InstanceId> all = dataset.ids;
        cells.assign(1, std::move(all));
    }

    std::size_t counter = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        auto& ids = cells[c];
        std::vector<std::pair<std::uint64_t, InstanceId>> keyed;
        keyed.reserve(ids.size());
        for (InstanceId id : ids) keyed.emplace_back(derive_seed(seed, id), id);
        std::sort(keyed.begin(), keyed.end());
        for (const auto& [key, id] : keyed) plan.assignment.emplace(id, counter++ % n_folds);
    }
    plan.test_fold = 0;
    plan.validation_fold = 1;
    return plan;
}

Encoder Encoder::fit(const Dataset& dataset, std::span<const std::size_t> train_rows,
                     bool include_sensitive) {
    Encoder enc;
    enc.include_sensitive_ = include_sensitive;
    for (std::size_t r : train_rows) enc.fit_ids_.push_back(dataset.ids[r]);

    auto fit_numeric = [&](Source& src, auto value_at) {
        double sum = 0.0;
        for (std::size_t r : train_rows) sum += value_at(r);
        const double n = static_cast<double>(train_rows.size());
        src.mean = train_rows.empty() ? 0.0 : sum / n;
        double ss = 0.0;
        for (std::size_t r : train_rows) {
            const double d = value_at(r) - src.mean;
            ss += d * d;
        }
        const double sd = train_rows.empty() ? 0.0 : std::sqrt(ss / n);
        if (sd > 1e-12) {
            src.inv_std = 1.0 / sd;
        } else {
            src.inv_std = 0.0;
            log::info("encoder: column '", src.name, "' has zero variance; encoded as 0");
        }
    };

    std::size_t offset = 0;
    for (const Column& col : dataset.features) {
        Source src;
        src.name = col.name;
        src.offset = offset;
        if (col.is_categorical()) {
            src.categorical = true;
            src.categories = col.categories;
            for (const auto& cat : col.categories) enc.manifest_.push_back({col.name, cat, false});
            offset += col.categories.size();
        } else {
            fit_numeric(src, [&](std::size_t r) { return col.values[r]; });
            enc.manifest_.push_back({col.name, "", false});
            offset += 1;
        }
        enc.sources_.push_back(std::move(src));
    }
    if (include_sensitive) {
        Source src;
        src.name = dataset.sensitive_name;
        src.sensitive = true;
        src.offset = offset;
        fit_numeric(src, [&](std::size_t r) { return static_cast<double>(dataset.sensitive[r]); });
        enc.manifest_.push_back({dataset.sensitive_name, "", true});
        enc.sources_.push_back(std::move(src));
    }
    return enc;
}

std::vector<std::string> Encoder::source_features() const {
    std::vector<std::string> out;
    for (const auto& col : manifest_)
        if (out.empty() || out.back() != col.source) out.push_back(col.source);
    return out;
}

std::vector<double> Encoder::transform(const Dataset& dataset,
                                       std::span<const std::size_t> rows) const {
    std::vector<std::size_t> all;
    if (rows.empty()) {
        all.resize(dataset.size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        rows = all;
    }
    const std::size_t width = manifest_.size();
    std::vector<double> out(rows.size() * width, 0.0);

    for (const Source& src : sources_) {
        if (src.sensitive) {
            for (std::size_t k = 0; k < rows.size(); ++k)
                out[k * width + src.offset] =
                    (static_cast<double>(dataset.sensitive[rows[k]]) - src.mean) * src.inv_std;
            continue;
        }
        const Column& col = dataset.feature(src.name);
        if (col.kind != (src.categorical ? ColumnKind::categorical : ColumnKind::numeric))
            throw Error("encoder: column '" + src.name + "' changed kind");
        if (src.categorical) {
            for (std::size_t k = 0; k < rows.size(); ++k) {
                const auto code = static_cast<std::size_t>(col.values[rows[k]]);
                const std::string& cat = col.categories[code];
                // Categories are matched by name so datasets with a different
                // domain order still encode consistently.
                auto it = std::find(src.categories.begin(), src.categories.end(), cat);
                if (it != src.categories.end())
                    out[k * width + src.offset +
                        static_cast<std::size_t>(it - src.categories.begin())] = 1.0;
            }
        } else {
            for (std::size_t k = 0; k < rows.size(); ++k)
                out[k * width + src.offset] = (col.values[rows[k]] - src.mean) * src.inv_std;
        }
    }
    return out;
}

bool EncodedMatrix::has_sensitive() const {
    return std::any_of(manifest.begin(), manifest.end(),
                       [](const EncodedColumn& c) { return c.sensitive; });
}

EncodedMatrix apply_encoder(const Encoder& encoder, const Dataset& dataset) {
    EncodedMatrix m;
    m.ids = dataset.ids;
    m.rows = dataset.size();
    m.cols = encoder.width();
    m.manifest = encoder.manifest();
    m.data = encoder.transform(dataset);
    return m;
}

EncodedMatrix encode(const Dataset& dataset, const IdSet& train_ids, bool include_sensitive) {
    std::vector<std::size_t> train_rows;
    for (std::size_t i = 0; i < dataset.size(); ++i)
        if (train_ids.contains(dataset.ids[i])) train_rows.push_back(i);
    if (train_rows.size() != train_ids.size())
        throw Error("encode: train ids are not a subset of the dataset");
    return apply_encoder(Encoder::fit(dataset, train_rows, include_sensitive), dataset);
}

}  // namespace fairbias
