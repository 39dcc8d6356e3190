#include "fairbias/ingestion.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "fairbias/csv.hpp"
#include "fairbias/log.hpp"
#include "fairbias/random.hpp"

namespace fairbias {

namespace {

bool parse_number(const std::string& text, double& out) {
    if (text.empty()) return false;
    const char* end = text.data() + text.size();
    auto [p, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && p == end && std::isfinite(out);
}

Column numeric_column(const std::string& name, std::vector<double> values) {
    Column c;
    c.name = name;
    c.values = std::move(values);
    return c;
}

/// Sorted category domain, values coded by position.
Column categorical_column(const std::string& name, const std::vector<std::string>& raw) {
    Column c;
    c.name = name;
    c.kind = ColumnKind::categorical;
    std::set<std::string> domain(raw.begin(), raw.end());
    c.categories.assign(domain.begin(), domain.end());
    std::unordered_map<std::string, double> code;
    for (std::size_t i = 0; i < c.categories.size(); ++i) code[c.categories[i]] = static_cast<double>(i);
    c.values.reserve(raw.size());
    for (const auto& v : raw) c.values.push_back(code.at(v));
    return c;
}

Column infer_column(const std::string& name, const std::vector<std::string>& raw) {
    std::vector<double> values(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        if (!parse_number(raw[i], values[i])) return categorical_column(name, raw);
    return numeric_column(name, std::move(values));
}

bool missing(const std::string& v) { return v.empty() || v == "?"; }

void require_file(const std::string& path) {
    if (!std::filesystem::exists(path)) throw InputError("missing input file: " + path);
}

}  // namespace

// ---- Student --------------------------------------------------------------

Dataset load_student(const std::string& csv_path) {
    require_file(csv_path);
    const csv::Table t = csv::read(csv_path, ';');
    const std::size_t g3 = t.column("G3");
    const std::size_t sex = t.column("sex");

    Dataset ds;
    ds.name = "student";
    ds.sensitive_name = "sex";
    ds.threshold = 10.0;
    const std::size_t n = t.rows.size();
    for (std::size_t r = 0; r < n; ++r) {
        double grade = 0;
        if (!parse_number(t.rows[r][g3], grade))
            throw Error(csv_path + ": row " + std::to_string(r + 2) + ": G3 is not numeric");
        const std::string& s = t.rows[r][sex];
        if (s != "M" && s != "F")
            throw Error(csv_path + ": row " + std::to_string(r + 2) + ": sex must be M or F");
        ds.ids.push_back(r);
        ds.sensitive.push_back(s == "M" ? 1 : 0);
        ds.score.push_back(grade);
        ds.label.push_back(grade >= ds.threshold ? 1 : 0);
        ds.weight.push_back(1.0);
    }
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        if (c == g3 || c == sex) continue;
        std::vector<std::string> raw(n);
        for (std::size_t r = 0; r < n; ++r) raw[r] = t.rows[r][c];
        ds.features.push_back(infer_column(t.header[c], raw));
    }
    ds.validate();
    return ds;
}

Dataset make_student_balanced(const Dataset& student, std::uint64_t seed) {
    std::vector<std::size_t> keep;
    for (int y = 0; y < 2; ++y) {
        std::array<std::vector<std::size_t>, 2> rows;
        for (std::size_t i = 0; i < student.size(); ++i)
            if (student.label[i] == y) rows[static_cast<std::size_t>(student.sensitive[i])].push_back(i);
        const std::size_t target = std::min(rows[0].size(), rows[1].size());
        for (auto& g : rows) {
            if (g.size() > target) {
                std::sort(g.begin(), g.end(), [&](std::size_t a, std::size_t b) {
                    const auto ka = derive_seed(seed, student.ids[a]);
                    const auto kb = derive_seed(seed, student.ids[b]);
                    if (ka != kb) return ka < kb;
                    return student.ids[a] < student.ids[b];
                });
                g.resize(target);
            }
            keep.insert(keep.end(), g.begin(), g.end());
        }
    }
    if (keep.size() == student.size()) return student;
    std::sort(keep.begin(), keep.end());
    Dataset out = student.take(keep);
    out.name = "student_balanced";
    return out;
}

// ---- OULAD ----------------------------------------------------------------

OuladFiles OuladFiles::in_directory(const std::string& dir) {
    const std::filesystem::path d(dir);
    return {(d / "studentInfo.csv").string(), (d / "studentVle.csv").string(),
            (d / "vle.csv").string(), (d / "studentAssessment.csv").string(),
            (d / "assessments.csv").string()};
}

const std::vector<std::string>& oulad_info_features() {
    static const std::vector<std::string> names{
        "code_presentation", "gender",   "region",          "highest_education", "imd_band",
        "age_band",          "num_of_prev_attempts", "studied_credits", "disability"};
    return names;
}

const std::vector<std::string>& oulad_features() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v = oulad_info_features();
        for (const char* extra : {"num_CMA", "num_TMA", "login_day", "num_logins", "forumng",
                                  "glossary", "homepage", "resource"})
            v.emplace_back(extra);
        return v;
    }();
    return names;
}

Dataset load_oulad(const OuladFiles& files, const std::string& module_code) {
    for (const auto* p : {&files.student_info, &files.student_vle, &files.vle,
                          &files.student_assessment, &files.assessments})
        require_file(*p);

    const csv::Table info = csv::read(files.student_info);
    const std::size_t c_module = info.column("code_module");
    const std::size_t c_pres = info.column("code_presentation");
    const std::size_t c_id = info.column("id_student");
    const std::size_t c_result = info.column("final_result");
    std::vector<std::size_t> c_feat;
    for (const auto& f : oulad_info_features()) c_feat.push_back(info.column(f));

    // Complete rows of the module, then keep each student's latest presentation.
    std::map<std::uint64_t, std::size_t> chosen;
    for (std::size_t r = 0; r < info.rows.size(); ++r) {
        const auto& row = info.rows[r];
        if (row[c_module] != module_code) continue;
        bool complete = !missing(row[c_result]) && !missing(row[c_id]);
        for (std::size_t c : c_feat) complete = complete && !missing(row[c]);
        if (!complete) continue;
        const std::uint64_t id = std::stoull(row[c_id]);
        auto [it, inserted] = chosen.emplace(id, r);
        if (!inserted && info.rows[it->second][c_pres] < row[c_pres]) it->second = r;
    }
    std::unordered_map<std::string, std::size_t> slot;  // "presentation|id" -> output row
    std::vector<std::size_t> source_rows;
    for (const auto& [id, r] : chosen) {
        slot[info.rows[r][c_pres] + "|" + std::to_string(id)] = source_rows.size();
        source_rows.push_back(r);
    }
    const std::size_t n = source_rows.size();
    if (n == 0) throw Error("OULAD: no complete rows for module " + module_code);

    // Assessment submissions by type.
    std::unordered_map<std::string, std::string> assessment_type;
    csv::for_each_row(files.assessments, ',', [&](std::size_t, csv::Row& row) {
        if (row[0] == module_code) assessment_type[row[2]] = row[3];
    });
    std::vector<double> num_cma(n, 0), num_tma(n, 0);
    {
        std::unordered_map<std::string, std::string> presentation_of;
        csv::for_each_row(files.assessments, ',', [&](std::size_t, csv::Row& row) {
            if (row[0] == module_code) presentation_of[row[2]] = row[1];
        });
        csv::for_each_row(files.student_assessment, ',', [&](std::size_t, csv::Row& row) {
            auto t = assessment_type.find(row[0]);
            if (t == assessment_type.end()) return;
            auto s = slot.find(presentation_of[row[0]] + "|" + row[1]);
            if (s == slot.end()) return;
            if (t->second == "CMA") num_cma[s->second] += 1;
            else if (t->second == "TMA") num_tma[s->second] += 1;
        });
    }

    // VLE interactions over the whole presentation.
    std::unordered_map<std::string, std::string> activity;
    csv::for_each_row(files.vle, ',', [&](std::size_t, csv::Row& row) {
        if (row[1] == module_code) activity[row[0]] = row[3];
    });
    const std::vector<std::string> kinds{"forumng", "glossary", "homepage", "resource"};
    std::vector<std::vector<double>> clicks(kinds.size(), std::vector<double>(n, 0));
    std::vector<double> logins(n, 0);
    std::vector<std::set<long>> days(n);
    csv::Row vle_header = csv::for_each_row(files.student_vle, ',', [&](std::size_t line, csv::Row& row) {
        if (row[0] != module_code) return;
        auto s = slot.find(row[1] + "|" + row[2]);
        if (s == slot.end()) return;
        double click = 0, date = 0;
        if (!parse_number(row[5], click) || !parse_number(row[4], date))
            throw Error(files.student_vle + ": line " + std::to_string(line) + ": bad number");
        logins[s->second] += click;
        days[s->second].insert(static_cast<long>(date));
        auto a = activity.find(row[3]);
        if (a == activity.end()) return;
        for (std::size_t k = 0; k < kinds.size(); ++k)
            if (a->second == kinds[k]) clicks[k][s->second] += click;
    });
    (void)vle_header;

    Dataset ds;
    ds.name = module_code == "FFF" ? "oulad_stem" : module_code == "BBB" ? "oulad_social" : "oulad_" + module_code;
    ds.sensitive_name = "gender";
    ds.threshold = 1.5;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = info.rows[source_rows[i]];
        const std::string& result = row[c_result];
        double score;
        if (result == "Distinction") score = 3;
        else if (result == "Pass") score = 2;
        else if (result == "Fail") score = 1;
        else if (result == "Withdrawn") score = 0;
        else throw Error("OULAD: unknown final_result '" + result + "'");
        const std::string& g = row[info.column("gender")];
        if (g != "M" && g != "F") throw Error("OULAD: gender must be M or F");
        ds.ids.push_back(std::stoull(row[c_id]));
        ds.sensitive.push_back(g == "M" ? 1 : 0);
        ds.score.push_back(score);
        ds.label.push_back(score >= ds.threshold ? 1 : 0);
        ds.weight.push_back(1.0);
    }
    for (std::size_t f = 0; f < c_feat.size(); ++f) {
        const std::string& name = oulad_info_features()[f];
        if (name == "gender") continue;
        std::vector<std::string> raw(n);
        for (std::size_t i = 0; i < n; ++i) raw[i] = info.rows[source_rows[i]][c_feat[f]];
        if (name == "num_of_prev_attempts" || name == "studied_credits")
            ds.features.push_back(infer_column(name, raw));
        else
            ds.features.push_back(categorical_column(name, raw));
    }
    ds.features.push_back(numeric_column("num_CMA", num_cma));
    ds.features.push_back(numeric_column("num_TMA", num_tma));
    std::vector<double> login_day(n);
    for (std::size_t i = 0; i < n; ++i) login_day[i] = static_cast<double>(days[i].size());
    ds.features.push_back(numeric_column("login_day", login_day));
    ds.features.push_back(numeric_column("num_logins", logins));
    for (std::size_t k = 0; k < kinds.size(); ++k) ds.features.push_back(numeric_column(kinds[k], clicks[k]));
    ds.validate();
    return ds;
}

Dataset make_complex_variant(const Dataset& oulad) {
    const auto& keep = oulad_info_features();
    Dataset out = oulad;
    out.features.clear();
    for (const Column& c : oulad.features)
        if (std::find(keep.begin(), keep.end(), c.name) != keep.end()) out.features.push_back(c);
    if (out.name.size() < 8 || out.name.compare(out.name.size() - 8, 8, "_complex") != 0)
        out.name += "_complex";
    return out;
}

double default_noise(const std::string& name) {
    return name.rfind("oulad", 0) == 0 ? 0.2 : 0.1;
}

// ---- summary --------------------------------------------------------------

DatasetSummary summarize(const Dataset& ds, const BccSettings& bcc_settings) {
    DatasetSummary s;
    s.name = ds.name;
    s.size = ds.size();
    if (ds.empty()) return s;
    s.unprivileged_proportion = static_cast<double>(ds.group_size(1)) / static_cast<double>(ds.size());
    s.spd = spd(ds.label, ds.sensitive);
    s.base_rate = static_cast<double>(std::count(ds.label.begin(), ds.label.end(), 1)) /
                  static_cast<double>(ds.size());
    if (ds.size() >= bcc_settings.k + 1) {
        std::vector<std::size_t> rows(ds.size());
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        const Encoder enc = Encoder::fit(ds, rows, false);
        const auto nb = nearest_neighbours(enc.transform(ds), enc.width(), ds.ids, bcc_settings.k);
        s.bcc = bcc(ds.label, nb, bcc_settings.delta);
    }
    return s;
}

std::string summary_header() { return "dataset,size,unprivileged_proportion,spd,bcc,base_rate"; }

std::string summary_row(const DatasetSummary& s) {
    auto fmt = [](const MaybeReal& v) -> std::string {
        if (!v) return "NA";
        char buf[32];
        double x = *v;
        if (std::abs(x) < 0.0005) x = 0.0;  // no "-0.000"
        std::snprintf(buf, sizeof buf, "%.3f", x);
        return buf;
    };
    return s.name + "," + std::to_string(s.size) + "," + fmt(s.unprivileged_proportion) + "," +
           fmt(s.spd) + "," + fmt(s.bcc) + "," + fmt(s.base_rate);
}

}  // namespace fairbias
