#include "fairbias/records.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "fairbias/csv.hpp"

namespace fairbias {

std::string format_real(double value) {
    if (value == 0.0) return "0";  // folds -0 as well
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw Error("cannot format number");
    return std::string(buf, p);
}

double parse_real(const std::string& text) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    auto [p, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || p != end) throw Error("not a number: '" + text + "'");
    return v;
}

namespace {

std::string cell(const MaybeReal& v) { return v ? format_real(*v) : "NA"; }

MaybeReal parse_cell(const std::string& text) {
    if (text == "NA" || text.empty()) return std::nullopt;
    return parse_real(text);
}

std::size_t parse_count(const std::string& text) {
    std::size_t v = 0;
    const char* end = text.data() + text.size();
    auto [p, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || p != end) throw Error("not a count: '" + text + "'");
    return v;
}

void expect_header(std::istream& in, const std::string& header, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw Error(std::string(what) + ": empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) throw Error(std::string(what) + ": unexpected header");
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return in;
}

}  // namespace

std::string records_header() {
    std::string h = "dataset,learner,kind,level,method,fold,eval_mode,status";
    for (const auto& m : metric_names()) h += "," + m;
    return h;
}

std::string format_record(const ResultRecord& r) {
    std::string line = csv::quote(r.dataset) + "," + csv::quote(r.learner) + "," +
                       std::string(to_string(r.kind)) + "," + format_real(r.level) + "," +
                       std::string(to_string(r.method)) + "," + std::to_string(r.fold) + "," +
                       std::string(to_string(r.mode)) + "," + (r.ok ? "ok" : "method_failed");
    for (const MaybeReal& v : metric_values(r.metrics)) line += "," + (r.ok ? cell(v) : std::string());
    return line;
}

void write_records(std::ostream& out, const std::vector<ResultRecord>& records) {
    out << records_header() << '\n';
    for (const auto& r : records) out << format_record(r) << '\n';
}

std::vector<ResultRecord> read_records(std::istream& in) {
    expect_header(in, records_header(), "records");
    const std::size_t n_metrics = metric_names().size();
    std::vector<ResultRecord> out;
    std::string line;
    std::size_t number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) continue;
        const csv::Row f = csv::split_line(line, ',');
        if (f.size() != 8 + n_metrics) throw Error("records line " + std::to_string(number) + ": wrong field count");
        ResultRecord r;
        r.dataset = f[0];
        r.learner = f[1];
        r.kind = parse_bias_kind(f[2]);
        r.level = parse_real(f[3]);
        r.method = parse_method(f[4]);
        r.fold = parse_count(f[5]);
        r.mode = parse_eval_mode(f[6]);
        if (f[7] != "ok" && f[7] != "method_failed")
            throw Error("records line " + std::to_string(number) + ": unknown status " + f[7]);
        r.ok = f[7] == "ok";
        std::vector<MaybeReal> values(n_metrics);
        for (std::size_t m = 0; m < n_metrics; ++m) values[m] = parse_cell(f[8 + m]);
        r.metrics = report_from_values(values);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<ResultRecord> read_records_file(const std::string& path) {
    auto in = open(path);
    return read_records(in);
}

std::string aggregates_header() {
    std::string h = "dataset,learner,kind,level,method,eval_mode,n_folds,fail_count,status";
    for (const auto& m : metric_names()) h += "," + m + "_mean," + m + "_std";
    return h;
}

void write_aggregates(std::ostream& out, const std::vector<AggregateRecord>& aggregates) {
    out << aggregates_header() << '\n';
    for (const auto& a : aggregates) {
        out << csv::quote(a.dataset) << ',' << csv::quote(a.learner) << ',' << to_string(a.kind) << ','
            << format_real(a.level) << ',' << to_string(a.method) << ',' << to_string(a.mode) << ','
            << a.n_folds << ',' << a.fail_count << ',' << (a.failed ? "FAILED" : "ok");
        for (std::size_t m = 0; m < a.mean.size(); ++m) out << ',' << cell(a.mean[m]) << ',' << cell(a.sd[m]);
        out << '\n';
    }
}

std::vector<AggregateRecord> read_aggregates(std::istream& in) {
    expect_header(in, aggregates_header(), "aggregates");
    const std::size_t n_metrics = metric_names().size();
    std::vector<AggregateRecord> out;
    std::string line;
    std::size_t number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) continue;
        const csv::Row f = csv::split_line(line, ',');
        if (f.size() != 9 + 2 * n_metrics)
            throw Error("aggregates line " + std::to_string(number) + ": wrong field count");
        AggregateRecord a;
        a.dataset = f[0];
        a.learner = f[1];
        a.kind = parse_bias_kind(f[2]);
        a.level = parse_real(f[3]);
        a.method = parse_method(f[4]);
        a.mode = parse_eval_mode(f[5]);
        a.n_folds = parse_count(f[6]);
        a.fail_count = parse_count(f[7]);
        a.failed = f[8] == "FAILED";
        for (std::size_t m = 0; m < n_metrics; ++m) {
            a.mean.push_back(parse_cell(f[9 + 2 * m]));
            a.sd.push_back(parse_cell(f[10 + 2 * m]));
        }
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<AggregateRecord> read_aggregates_file(const std::string& path) {
    auto in = open(path);
    return read_aggregates(in);
}

void write_scatter(std::ostream& out, const std::vector<ScatterPoint>& points) {
    out << "dataset,learner,kind,level,method,metric,fair,biased,clipped\n";
    for (const auto& p : points)
        out << csv::quote(p.dataset) << ',' << csv::quote(p.learner) << ',' << to_string(p.kind) << ','
            << format_real(p.level) << ',' << to_string(p.method) << ',' << p.metric << ','
            << format_real(p.fair) << ',' << format_real(p.biased) << ',' << (p.clipped ? 1 : 0) << '\n';
}

}  // namespace fairbias
