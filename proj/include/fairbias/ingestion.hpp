#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairbias/dataset.hpp"
#include "fairbias/metrics.hpp"

namespace fairbias {

/// UCI Student (Portuguese course) file, semicolon separated. label = G3 >= 10,
/// score = G3, A = 1 for boys. G3 is dropped; G1 and G2 stay as features.
Dataset load_student(const std::string& csv_path);

/// Per label value, drop random rows of the larger group until both groups
/// hold the same count, so sizes and positive counts match.
Dataset make_student_balanced(const Dataset& student, std::uint64_t seed);

struct OuladFiles {
    std::string student_info;
    std::string student_vle;
    std::string vle;
    std::string student_assessment;
    std::string assessments;

    /// The standard file names inside `dir`.
    static OuladFiles in_directory(const std::string& dir);
};

/// The nine studentInfo features in order; gender is the sensitive one.
const std::vector<std::string>& oulad_info_features();
/// All seventeen features in order.
const std::vector<std::string>& oulad_features();

/// One module ('FFF' or 'BBB'). Score: Distinction 3, Pass 2, Fail 1,
/// Withdrawn 0, threshold 1.5. A = 1 for men.
Dataset load_oulad(const OuladFiles& files, const std::string& module_code);

/// Keep only the studentInfo features.
Dataset make_complex_variant(const Dataset& oulad);

/// Default label-noise intensity for a dataset family.
double default_noise(const std::string& dataset_name);

struct DatasetSummary {
    std::string name;
    std::size_t size = 0;
    MaybeReal unprivileged_proportion;
    MaybeReal spd;
    MaybeReal bcc;
    MaybeReal base_rate;
};

/// Labels used as predictions; BCC on an encoding of all rows without A.
DatasetSummary summarize(const Dataset& dataset, const BccSettings& bcc = {});

/// "name,size,unpriv,spd,bcc,base_rate" with three decimals, NA for undefined.
std::string summary_row(const DatasetSummary& summary);
std::string summary_header();

}  // namespace fairbias
