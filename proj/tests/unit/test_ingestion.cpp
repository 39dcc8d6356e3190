#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "fairbias/cache.hpp"
#include "fairbias/csv.hpp"
#include "fairbias/ingestion.hpp"
#include "fairbias/synthetic.hpp"
#include "toys.hpp"

using namespace fairbias;
namespace fs = std::filesystem;

namespace {

const std::string kData = FAIRBIAS_TEST_DATA;

std::size_t row_of(const Dataset& ds, InstanceId id) {
    auto it = std::find(ds.ids.begin(), ds.ids.end(), id);
    REQUIRE(it != ds.ids.end());
    return static_cast<std::size_t>(it - ds.ids.begin());
}

double value(const Dataset& ds, const std::string& feature, InstanceId id) {
    return ds.feature(feature).values[row_of(ds, id)];
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("fairbias_ingest_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("csv splitting handles quotes and delimiters") {
    CHECK(csv::split_line(R"("a";"b;c";3)", ';') == csv::Row{"a", "b;c", "3"});
    CHECK(csv::split_line(R"(x,"say ""hi""",)", ',') == csv::Row{"x", "say \"hi\"", ""});
    CHECK(csv::quote("plain") == "plain");
    CHECK(csv::quote("a,b") == "\"a,b\"");
}

TEST_CASE("csv reader reports the bad line") {
    const fs::path dir = scratch("csv");
    std::ofstream(dir / "bad.csv") << "a,b\n1,2\n3\n";
    try {
        csv::read((dir / "bad.csv").string());
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
    CHECK_THROWS_AS(csv::read((dir / "nope.csv").string()), InputError);
}

TEST_CASE("student: labels, sensitive attribute, features") {
    const Dataset ds = load_student(kData + "/student_mini.csv");
    CHECK(ds.name == "student");
    REQUIRE(ds.size() == 10);
    CHECK(ds.label == std::vector<int>{1, 1, 1, 1, 1, 0, 1, 0, 1, 0});
    CHECK(ds.sensitive == std::vector<int>{0, 0, 1, 1, 0, 1, 1, 0, 0, 1});
    // G3 = 10 passes, 9 fails
    CHECK(ds.score[6] == 10);
    CHECK(ds.label[6] == 1);
    CHECK(ds.score[5] == 9);
    CHECK(ds.label[5] == 0);

    const auto names = ds.feature_names();
    CHECK(std::find(names.begin(), names.end(), "G3") == names.end());
    CHECK(std::find(names.begin(), names.end(), "sex") == names.end());
    CHECK(std::find(names.begin(), names.end(), "G1") != names.end());
    CHECK(std::find(names.begin(), names.end(), "G2") != names.end());
    CHECK(ds.feature("G1").kind == ColumnKind::numeric);
    CHECK(ds.feature("Mjob").kind == ColumnKind::categorical);
    CHECK(ds.feature("Mjob").categories.size() == 5);
    CHECK(default_noise(ds.name) == 0.1);
}

TEST_CASE("student: malformed rows abort with the row number") {
    const fs::path dir = scratch("student");
    std::ofstream(dir / "s.csv") << "\"sex\";\"G1\";\"G3\"\n\"F\";1;12\n\"F\";2;twelve\n";
    try {
        load_student((dir / "s.csv").string());
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
    CHECK_THROWS_AS(load_student((dir / "missing.csv").string()), InputError);
}

TEST_CASE("student balanced: equal groups and equal positives") {
    const Dataset ds = load_student(kData + "/student_mini.csv");
    const Dataset bal = make_student_balanced(ds, 3);
    CHECK(bal.name == "student_balanced");
    CHECK(bal.size() == 8);
    CHECK(bal.group_size(0) == 4);
    CHECK(bal.group_size(1) == 4);
    CHECK(bal.cell_size(0, 1) == bal.cell_size(1, 1));
    CHECK(*spd(bal.label, bal.sensitive) == 0.0);
    // already balanced: unchanged
    const Dataset again = make_student_balanced(bal, 99);
    CHECK(again.ids == bal.ids);
    CHECK(again.name == bal.name);
    // keyed by id, so the same seed gives the same rows
    CHECK(make_student_balanced(ds, 3).ids == bal.ids);
}

TEST_CASE("oulad: filtering, dedupe and derived counts") {
    const Dataset ds = load_oulad(OuladFiles::in_directory(kData + "/oulad"), "FFF");
    CHECK(ds.name == "oulad_stem");
    // 13 has a missing imd_band; 14 appears twice and keeps 2014J
    std::vector<InstanceId> ids = ds.ids;
    std::sort(ids.begin(), ids.end());
    CHECK(ids == std::vector<InstanceId>{11, 12, 14, 15, 16});
    CHECK(ds.feature_names() ==
          std::vector<std::string>{"code_presentation", "region", "highest_education", "imd_band",
                                   "age_band", "num_of_prev_attempts", "studied_credits", "disability",
                                   "num_CMA", "num_TMA", "login_day", "num_logins", "forumng",
                                   "glossary", "homepage", "resource"});
    CHECK(oulad_features().size() == 17);
    CHECK(oulad_info_features().size() == 9);

    const std::size_t r14 = row_of(ds, 14);
    CHECK(ds.score[r14] == 3);
    CHECK(ds.label[r14] == 1);
    CHECK(ds.sensitive[r14] == 1);
    CHECK(value(ds, "num_of_prev_attempts", 14) == 3);
    CHECK(value(ds, "num_TMA", 14) == 2);
    CHECK(value(ds, "num_CMA", 14) == 1);
    CHECK(value(ds, "resource", 14) == 5);
    CHECK(value(ds, "glossary", 14) == 2);
    CHECK(value(ds, "forumng", 14) == 0);  // that click belongs to 2013J
    CHECK(value(ds, "num_logins", 14) == 7);
    CHECK(value(ds, "login_day", 14) == 2);

    CHECK(value(ds, "num_logins", 11) == 9);
    CHECK(value(ds, "login_day", 11) == 2);
    CHECK(value(ds, "forumng", 11) == 3);
    CHECK(value(ds, "homepage", 11) == 6);
    CHECK(value(ds, "num_TMA", 11) == 1);
    CHECK(value(ds, "num_CMA", 11) == 1);
    CHECK(value(ds, "num_logins", 15) == 6);  // oucontent counts as a login, not a feature
    CHECK(value(ds, "num_TMA", 12) == 0);

    CHECK(ds.label[row_of(ds, 12)] == 0);  // withdrawn
    CHECK(ds.label[row_of(ds, 16)] == 0);  // fail
    CHECK(ds.sensitive[row_of(ds, 12)] == 0);
    CHECK(default_noise(ds.name) == 0.2);

    const Dataset social = load_oulad(OuladFiles::in_directory(kData + "/oulad"), "BBB");
    CHECK(social.name == "oulad_social");
    CHECK(social.size() == 2);
}

TEST_CASE("oulad: a missing file is named") {
    const fs::path dir = scratch("oulad");
    for (const char* f : {"studentInfo.csv", "studentVle.csv", "vle.csv", "assessments.csv"})
        fs::copy_file(fs::path(kData) / "oulad" / f, dir / f);
    try {
        load_oulad(OuladFiles::in_directory(dir.string()), "FFF");
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("studentAssessment.csv") != std::string::npos);
    }
}

TEST_CASE("complex variant keeps the studentInfo features, idempotently") {
    const Dataset ds = load_oulad(OuladFiles::in_directory(kData + "/oulad"), "FFF");
    const Dataset cx = make_complex_variant(ds);
    CHECK(cx.name == "oulad_stem_complex");
    CHECK(cx.size() == ds.size());
    CHECK(cx.features.size() == 8);  // gender is the sensitive attribute, not a feature
    std::vector<std::string> expected = oulad_info_features();
    expected.erase(std::find(expected.begin(), expected.end(), "gender"));
    CHECK(cx.feature_names() == expected);
    const Dataset twice = make_complex_variant(cx);
    CHECK(twice.name == cx.name);
    CHECK(twice.feature_names() == cx.feature_names());
}

TEST_CASE("summary rows") {
    const Dataset ds = load_student(kData + "/student_mini.csv");
    const DatasetSummary s = summarize(ds);
    CHECK(s.size == 10);
    CHECK(*s.unprivileged_proportion == doctest::Approx(0.5));
    CHECK(*s.base_rate == doctest::Approx(0.7));
    CHECK(*s.spd == doctest::Approx(3.0 / 5 - 4.0 / 5));
    CHECK(s.bcc.has_value());
    CHECK(summary_header() == "dataset,size,unprivileged_proportion,spd,bcc,base_rate");
    CHECK(summary_row(s).rfind("student,10,0.500,-0.200,", 0) == 0);

    // one row: SPD is undefined and printed as NA
    const Dataset one = ds.take(std::vector<std::size_t>{0});
    const DatasetSummary s1 = summarize(one);
    CHECK(s1.size == 1);
    CHECK_FALSE(s1.spd.has_value());
    CHECK(summary_row(s1) == "student,1,0.000,NA,NA,1.000");
}

TEST_CASE("cache round-trips datasets exactly") {
    const Dataset ds = load_oulad(OuladFiles::in_directory(kData + "/oulad"), "FFF");
    const std::string bytes = encode_cache(ds);
    CHECK(bytes.rfind("FBDS 1 ", 0) == 0);
    const Dataset back = decode_cache(bytes);
    CHECK(back.ids == ds.ids);
    CHECK(back.label == ds.label);
    CHECK(back.score == ds.score);
    CHECK(back.sensitive == ds.sensitive);
    CHECK(back.weight == ds.weight);
    CHECK(back.threshold == ds.threshold);
    CHECK(back.name == ds.name);
    REQUIRE(back.features.size() == ds.features.size());
    for (std::size_t f = 0; f < ds.features.size(); ++f) {
        CHECK(back.features[f].name == ds.features[f].name);
        CHECK(back.features[f].kind == ds.features[f].kind);
        CHECK(back.features[f].values == ds.features[f].values);
        CHECK(back.features[f].categories == ds.features[f].categories);
    }
    CHECK(encode_cache(back) == bytes);

    const fs::path dir = scratch("cache");
    write_cache(ds, (dir / "a.fbds").string());
    CHECK(read_cache((dir / "a.fbds").string()).ids == ds.ids);
    CHECK_THROWS_AS(read_cache((dir / "none.fbds").string()), InputError);
    CHECK_THROWS_AS(decode_cache("FBDS 1 5\n{}"), Error);
}

TEST_CASE("removal manifest lists ids ascending") {
    const fs::path dir = scratch("manifest");
    write_removal_manifest({30, 4, 15}, (dir / "m.txt").string());
    std::ifstream in(dir / "m.txt");
    std::string all((std::istreambuf_iterator<char>(in)), {});
    CHECK(all == "4\n15\n30\n");
}

TEST_CASE("synthetic WAE data: even groups, half positive, no label gap") {
    SyntheticParams p;
    p.n = 5000;
    p.seed = 4;
    const Dataset ds = make_wae_dataset(p);
    CHECK(ds.size() == 5000);
    CHECK(ds.group_size(1) == 2500);
    CHECK(ds.features.size() == 6);
    const double base = static_cast<double>(std::count(ds.label.begin(), ds.label.end(), 1)) / 5000.0;
    CHECK(base == doctest::Approx(0.5).epsilon(0.04));
    CHECK(std::abs(*spd(ds.label, ds.sensitive)) < 0.04);
    for (double s : ds.score) {
        CHECK(s >= 0.0);
        CHECK(s <= 20.0);
    }
    CHECK_NOTHROW(ds.validate());
    CHECK(make_wae_dataset(p).score == ds.score);
}
