#include "fairbias/cache.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fairbias {

namespace {

using nlohmann::json;

template <typename T>
void put(std::string& out, T value) {
    static_assert(sizeof(T) == 1 || sizeof(T) == 8);
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    out.append(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get(const std::string& in, std::size_t& pos) {
    if (pos + sizeof(T) > in.size()) throw Error("dataset cache is truncated");
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, in.data() + pos, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    pos += sizeof(T);
    T value;
    std::memcpy(&value, buf, sizeof(T));
    return value;
}

json column_entry(const std::string& name, const std::string& kind, const std::string& role) {
    return json{{"name", name}, {"kind", kind}, {"role", role}};
}

}  // namespace

std::string encode_cache(const Dataset& ds) {
    ds.validate();
    json header;
    header["name"] = ds.name;
    header["rows"] = ds.size();
    header["threshold"] = ds.threshold;
    header["group_removed"] = ds.group_removed;
    header["sensitive_visible"] = ds.sensitive_visible;
    header["label_biased"] = ds.label_biased;
    json cols = json::array();
    cols.push_back(column_entry("id", "uint64", "id"));
    for (const Column& c : ds.features) {
        json e = column_entry(c.name, c.is_categorical() ? "categorical" : "numeric", "feature");
        if (c.is_categorical()) e["categories"] = c.categories;
        cols.push_back(std::move(e));
    }
    cols.push_back(column_entry(ds.sensitive_name, "uint8", "sensitive"));
    cols.push_back(column_entry("score", "numeric", "score"));
    cols.push_back(column_entry("label", "uint8", "label"));
    cols.push_back(column_entry("weight", "numeric", "weight"));
    header["columns"] = std::move(cols);

    const std::string text = header.dump();
    std::string out = "FBDS 1 " + std::to_string(text.size()) + "\n" + text;
    for (InstanceId id : ds.ids) put<std::uint64_t>(out, id);
    for (const Column& c : ds.features)
        for (double v : c.values) put<double>(out, v);
    for (int a : ds.sensitive) put<std::uint8_t>(out, static_cast<std::uint8_t>(a));
    for (double s : ds.score) put<double>(out, s);
    for (int y : ds.label) put<std::uint8_t>(out, static_cast<std::uint8_t>(y));
    for (double w : ds.weight) put<double>(out, w);
    return out;
}

Dataset decode_cache(const std::string& bytes) {
    const std::size_t eol = bytes.find('\n');
    if (eol == std::string::npos || bytes.compare(0, 7, "FBDS 1 ") != 0)
        throw Error("not a dataset cache (bad magic line)");
    const std::size_t header_len = std::stoull(bytes.substr(7, eol - 7));
    std::size_t pos = eol + 1;
    if (pos + header_len > bytes.size()) throw Error("dataset cache is truncated");
    const json header = json::parse(bytes.substr(pos, header_len));
    pos += header_len;

    Dataset ds;
    ds.name = header.at("name").get<std::string>();
    const auto n = header.at("rows").get<std::size_t>();
    ds.threshold = header.at("threshold").get<double>();
    ds.group_removed = header.at("group_removed").get<bool>();
    ds.sensitive_visible = header.at("sensitive_visible").get<bool>();
    ds.label_biased = header.at("label_biased").get<bool>();

    for (const json& c : header.at("columns")) {
        const std::string role = c.at("role").get<std::string>();
        const std::string name = c.at("name").get<std::string>();
        if (role == "id") {
            ds.ids.resize(n);
            for (auto& id : ds.ids) id = get<std::uint64_t>(bytes, pos);
        } else if (role == "feature") {
            Column col;
            col.name = name;
            if (c.at("kind").get<std::string>() == "categorical") {
                col.kind = ColumnKind::categorical;
                col.categories = c.at("categories").get<std::vector<std::string>>();
            }
            col.values.resize(n);
            for (auto& v : col.values) v = get<double>(bytes, pos);
            ds.features.push_back(std::move(col));
        } else if (role == "sensitive") {
            ds.sensitive_name = name;
            ds.sensitive.resize(n);
            for (auto& a : ds.sensitive) a = get<std::uint8_t>(bytes, pos);
        } else if (role == "score") {
            ds.score.resize(n);
            for (auto& s : ds.score) s = get<double>(bytes, pos);
        } else if (role == "label") {
            ds.label.resize(n);
            for (auto& y : ds.label) y = get<std::uint8_t>(bytes, pos);
        } else if (role == "weight") {
            ds.weight.resize(n);
            for (auto& w : ds.weight) w = get<double>(bytes, pos);
        } else {
            throw Error("dataset cache: unknown column role '" + role + "'");
        }
    }
    if (pos != bytes.size()) throw Error("dataset cache has trailing bytes");
    ds.validate();
    return ds;
}

void write_cache(const Dataset& dataset, const std::string& path) {
    const std::string bytes = encode_cache(dataset);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Dataset read_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open dataset cache " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return decode_cache(ss.str());
}

void write_removal_manifest(const IdSet& removed, const std::string& path) {
    std::vector<InstanceId> ids(removed.begin(), removed.end());
    std::sort(ids.begin(), ids.end());
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    for (InstanceId id : ids) out << id << '\n';
}

}  // namespace fairbias
