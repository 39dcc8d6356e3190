#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fairbias/pipeline.hpp"

namespace fairbias {

/// Shortest text that parses back to the same double.
std::string format_real(double value);
double parse_real(const std::string& text);

/// dataset,learner,kind,level,method,fold,eval_mode,status,<metrics>. Undefined
/// metrics are NA; failed rows leave metric cells empty.
std::string records_header();
std::string format_record(const ResultRecord& record);
void write_records(std::ostream& out, const std::vector<ResultRecord>& records);
std::vector<ResultRecord> read_records(std::istream& in);
std::vector<ResultRecord> read_records_file(const std::string& path);

/// dataset,learner,kind,level,method,eval_mode,n_folds,fail_count,status,
/// then <metric>_mean,<metric>_std pairs. status is ok or FAILED.
std::string aggregates_header();
void write_aggregates(std::ostream& out, const std::vector<AggregateRecord>& aggregates);
std::vector<AggregateRecord> read_aggregates(std::istream& in);
std::vector<AggregateRecord> read_aggregates_file(const std::string& path);

void write_scatter(std::ostream& out, const std::vector<ScatterPoint>& points);

}  // namespace fairbias
