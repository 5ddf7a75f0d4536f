#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "instances.hpp"
#include "oracle.hpp"
#include "result.hpp"
#include "subset.hpp"
#include "value.hpp"

namespace posimod::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json mask_to_json(SubsetMask x) {
    json arr = json::array();
    for (int v : x.elements()) arr.push_back(v);
    return arr;
}

inline SubsetMask mask_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("subset must be an array of element indices");
    std::vector<int> elems;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw std::invalid_argument("subset element must be an integer");
        elems.push_back(e.get<int>());
    }
    return SubsetMask::from_elements(elems);
}

// Table keys: comma-separated element indices ("" is the empty set), or the
// decimal bitmask when subset_encoding is "bitmask".
inline SubsetMask subset_key_from_string(const std::string& key, bool bitmask_encoding, int n) {
    if (bitmask_encoding) {
        unsigned long bits = std::stoul(key);
        if (bits >= (1ul << n)) throw std::invalid_argument("bitmask key outside ground set: " + key);
        return SubsetMask::of_bits(static_cast<std::uint32_t>(bits));
    }
    SubsetMask m;
    std::stringstream ss(key);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        int v = std::stoi(tok);
        if (v < 0 || v >= n) throw std::invalid_argument("table key element outside ground set: " + key);
        m = m.with(v);
    }
    return m;
}

inline std::string subset_key_to_string(SubsetMask x) {
    std::string s;
    for (int v : x.elements()) {
        if (!s.empty()) s += ",";
        s += std::to_string(v);
    }
    return s;
}

struct InstanceFile {
    int schema_version = kSchemaVersion;
    InstanceDescriptor instance;
};

inline InstanceFile parse_instance(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("instance file must be a JSON object");
    InstanceFile file;
    if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer())
        throw std::invalid_argument("missing integer schema_version");
    file.schema_version = j.at("schema_version").get<int>();
    if (file.schema_version != kSchemaVersion)
        throw std::invalid_argument("unsupported schema_version " + std::to_string(file.schema_version));

    if (!j.contains("family") || !j.at("family").is_string()) throw std::invalid_argument("missing family tag");
    auto family = family_from_name(j.at("family").get<std::string>());
    if (!family) throw std::invalid_argument("unknown family: " + j.at("family").get<std::string>());
    InstanceDescriptor& desc = file.instance;
    desc.family = *family;

    if (!j.contains("n") || !j.at("n").is_number_integer()) throw std::invalid_argument("missing integer n");
    desc.n = j.at("n").get<int>();

    if (j.contains("k")) desc.k = j.at("k").get<int>();
    if (j.contains("d")) desc.d = j.at("d").get<int>();
    if (j.contains("seed")) desc.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("S")) desc.s = mask_from_json(j.at("S"));
    if (j.contains("T")) desc.t = mask_from_json(j.at("T"));
    if (j.contains("labels")) desc.labels = j.at("labels").get<std::vector<std::string>>();
    if (j.contains("edges")) {
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || (e.size() != 2 && e.size() != 3))
                throw std::invalid_argument("edge must be [u, v] or [u, v, weight]");
            long long w = e.size() == 3 ? e.at(2).get<long long>() : 1;
            desc.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), w});
        }
    }
    if (j.contains("range_bound")) desc.declared_range = j.at("range_bound").get<int>();
    if (j.contains("default_value")) desc.table_default = parse_value(j.at("default_value").get<std::string>());
    if (j.contains("values")) {
        bool bitmask_encoding = j.value("subset_encoding", std::string("elements")) == "bitmask";
        const auto& values = j.at("values");
        if (!values.is_object()) throw std::invalid_argument("values must map subset keys to value strings");
        for (auto it = values.begin(); it != values.end(); ++it) {
            SubsetMask m = subset_key_from_string(it.key(), bitmask_encoding, desc.n);
            Value v = it.value().is_string() ? parse_value(it.value().get<std::string>())
                                             : Value(it.value().get<long long>());
            desc.table_entries.emplace_back(m.bits(), v);
        }
    }
    return file;
}

inline json serialize_instance(const InstanceDescriptor& desc) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["family"] = family_name(desc.family);
    j["n"] = desc.n;
    if (desc.k) j["k"] = *desc.k;
    if (desc.d) j["d"] = *desc.d;
    if (desc.seed) j["seed"] = *desc.seed;
    if (desc.s) j["S"] = mask_to_json(*desc.s);
    if (desc.t) j["T"] = mask_to_json(*desc.t);
    if (!desc.labels.empty()) j["labels"] = desc.labels;
    if (!desc.edges.empty()) {
        json edges = json::array();
        for (const auto& e : desc.edges) edges.push_back(json::array({e.u, e.v, e.weight}));
        j["edges"] = edges;
    }
    if (desc.declared_range) j["range_bound"] = *desc.declared_range;
    if (desc.table_default) j["default_value"] = format_value(*desc.table_default);
    if (!desc.table_entries.empty()) {
        json values = json::object();
        for (const auto& [mask, value] : desc.table_entries)
            values[subset_key_to_string(SubsetMask::of_bits(mask))] = format_value(value);
        j["values"] = values;
    }
    return j;
}

inline InstanceFile load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("instance file is not valid JSON: " + std::string(e.what()));
    }
    return parse_instance(j);
}

inline QueryTranscript load_transcript_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open transcript file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("transcript file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.contains("n")) throw std::invalid_argument("transcript needs a ground-set size n");
    int n = j.at("n").get<int>();
    std::vector<SubsetMask> queries;
    for (const auto& q : j.value("queries", json::array())) queries.push_back(mask_from_json(q));
    return QueryTranscript(n, std::move(queries));
}

// One structured record per CLI result.
struct RunReport {
    std::string command;
    json instance_summary;
    json result;
    long long oracle_calls = 0;
    double wall_time_ms = 0.0;
    std::string algorithm;

    json to_json() const {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = command;
        if (!instance_summary.is_null()) j["instance"] = instance_summary;
        if (!result.is_null()) j["result"] = result;
        j["oracle_calls"] = oracle_calls;
        j["wall_time_ms"] = wall_time_ms;
        if (!algorithm.empty()) j["algorithm"] = algorithm;
        return j;
    }
};

inline json instance_summary(const InstanceDescriptor& desc, const SetFunctionOracle& oracle) {
    json j;
    j["family"] = family_name(desc.family);
    j["n"] = desc.n;
    if (oracle.range_bound()) j["range_bound"] = *oracle.range_bound();
    j["kind"] = oracle.kind();
    return j;
}

inline json witness_json(SubsetMask witness, const Value& value) {
    json j;
    j["witness"] = mask_to_json(witness);
    j["cardinality"] = witness.cardinality();
    j["value"] = format_value(value);
    return j;
}

}  // namespace posimod::io
