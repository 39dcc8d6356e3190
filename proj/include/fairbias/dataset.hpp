#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fairbias/types.hpp"

namespace fairbias {

enum class ColumnKind { numeric, categorical };

/// One named feature column. Categorical values are stored as integer codes
/// (held as doubles) indexing `categories`.
struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
    std::vector<double> values;
    std::vector<std::string> categories;

    bool is_categorical() const { return kind == ColumnKind::categorical; }
};

using IdSet = std::unordered_set<InstanceId>;

/// Feature table plus the binary sensitive attribute A (1 = unprivileged),
/// the score S, the label Y and per-row weights. The sensitive attribute is
/// never stored among `features`; learners see it only through
/// `sensitive_visible`.
struct Dataset {
    std::string name;
    std::vector<InstanceId> ids;
    std::vector<Column> features;
    std::string sensitive_name = "A";
    std::vector<int> sensitive;
    std::vector<double> score;
    std::vector<int> label;
    std::vector<double> weight;
    double threshold = 0.0;

    /// A group was emptied on purpose (selection at p_u = 1, exclusion).
    bool group_removed = false;
    /// False after fairness-through-unawareness: learners must not see A.
    bool sensitive_visible = true;
    /// Labels no longer follow score >= threshold (label-biased view).
    bool label_biased = false;

    std::size_t size() const { return ids.size(); }
    bool empty() const { return ids.empty(); }

    std::size_t group_size(int a) const;
    std::size_t cell_size(int a, int y) const;

    /// Rows at the given positions, in that order.
    Dataset take(std::span<const std::size_t> rows) const;
    /// Rows whose id is in `keep`, original order preserved.
    Dataset keep_ids(const IdSet& keep) const;
    /// Rows whose id is NOT in `drop`, original order preserved.
    Dataset drop_ids(const IdSet& drop) const;

    std::unordered_map<InstanceId, std::size_t> id_index() const;
    const Column& feature(std::string_view name) const;
    std::vector<std::string> feature_names() const;

    /// Throws Error when a structural invariant is broken.
    void validate() const;
};

/// Positive-label rate of group a; nullopt when the group is empty.
MaybeReal positive_rate(std::span<const int> labels, std::span<const int> groups, int a);

struct FoldPlan {
    std::size_t n_folds = 0;
    std::unordered_map<InstanceId, std::size_t> assignment;
    std::size_t validation_fold = 1;
    std::size_t test_fold = 0;
    bool stratified = true;

    std::size_t fold_of(InstanceId id) const;
    /// Ids of one fold, ascending.
    std::vector<InstanceId> fold_ids(std::size_t fold) const;
    /// Ids outside the validation and test folds, ascending.
    std::vector<InstanceId> train_ids() const;
    /// Test on fold `iteration`, validate on the next fold (mod n_folds).
    FoldPlan rotated(std::size_t iteration) const;
};

/// Stratified by (A, Y). Row order does not matter: ids drive assignment.
/// Falls back to plain random assignment (logged) when a stratum is smaller
/// than n_folds, or when `stratify` is false.
FoldPlan make_fold_plan(const Dataset& dataset, std::size_t n_folds, std::uint64_t seed,
                        bool stratify = true);

struct EncodedColumn {
    std::string source;
    /// Category name for one-hot columns, empty for numeric ones.
    std::string category;
    bool sensitive = false;
};

/// Standardizes numerics and one-hot expands categoricals. Statistics are
/// fit on training rows only; categories come from the column domain so
/// unseen categories map to an all-zeros block.
class Encoder {
public:
    static Encoder fit(const Dataset& dataset, std::span<const std::size_t> train_rows,
                       bool include_sensitive);

    std::size_t width() const { return manifest_.size(); }
    const std::vector<EncodedColumn>& manifest() const { return manifest_; }
    bool includes_sensitive() const { return include_sensitive_; }
    /// Distinct source features in manifest order.
    std::vector<std::string> source_features() const;
    const std::vector<InstanceId>& fit_ids() const { return fit_ids_; }

    /// Row-major matrix for the given rows of `dataset` (all rows if empty).
    std::vector<double> transform(const Dataset& dataset,
                                  std::span<const std::size_t> rows = {}) const;

private:
    struct Source {
        std::string name;
        bool categorical = false;
        bool sensitive = false;
        double mean = 0.0;
        double inv_std = 0.0;  // 0 for zero-variance columns
        std::vector<std::string> categories;
        std::size_t offset = 0;
    };
    std::vector<Source> sources_;
    std::vector<EncodedColumn> manifest_;
    std::vector<InstanceId> fit_ids_;
    bool include_sensitive_ = false;
};

struct EncodedMatrix {
    std::vector<InstanceId> ids;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // row-major
    std::vector<EncodedColumn> manifest;

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<const double> row(std::size_t r) const {
        return {data.data() + r * cols, cols};
    }
    bool has_sensitive() const;
};

/// Encode every row of `dataset` with statistics fit on `train_ids`.
EncodedMatrix encode(const Dataset& dataset, const IdSet& train_ids, bool include_sensitive);
EncodedMatrix apply_encoder(const Encoder& encoder, const Dataset& dataset);

}  // namespace fairbias
