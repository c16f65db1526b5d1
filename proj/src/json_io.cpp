#include "argshift/json_io.hpp"

#include <json.hpp>

#include <sstream>

namespace argshift {

using nlohmann::json;

namespace {

std::size_t index_field(const json& j, const char* key, std::size_t dim) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        throw parse_error(std::string("bracket entry needs a positive integer '") + key + "'");
    const auto v = j[key].get<std::size_t>();
    if (v < 1 || v > dim)
        throw parse_error(std::string("bracket index '") + key + "' out of range: " +
                          std::to_string(v));
    return v - 1;
}

} // namespace

LieAlgebra algebra_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw parse_error("top-level JSON value must be an object");
    if (!j.contains("dim") || !j["dim"].is_number_unsigned())
        throw parse_error("'dim' must be a positive integer");
    const auto dim = j["dim"].get<std::size_t>();
    if (dim == 0) throw parse_error("'dim' must be at least 1");

    LieAlgebra::StructureMap structure;
    if (j.contains("brackets")) {
        if (!j["brackets"].is_array()) throw parse_error("'brackets' must be an array");
        for (const auto& entry : j["brackets"]) {
            const std::size_t i = index_field(entry, "i", dim);
            const std::size_t jj = index_field(entry, "j", dim);
            if (i == jj) throw parse_error("bracket entry with i == j");
            if (!entry.contains("terms") || !entry["terms"].is_object())
                throw parse_error("bracket entry needs a 'terms' object");
            for (const auto& [key, value] : entry["terms"].items()) {
                std::size_t k = 0;
                try {
                    k = std::stoull(key);
                } catch (const std::exception&) {
                    throw parse_error("bad term index '" + key + "'");
                }
                if (k < 1 || k > dim)
                    throw parse_error("term index out of range: " + key);
                if (!value.is_string())
                    throw parse_error("term coefficients must be rational strings");
                const Rational c = parse_rational(value.get<std::string>());
                if (c == 0) continue;
                if (i < jj)
                    structure[{i, jj, k - 1}] = structure[{i, jj, k - 1}] + c;
                else
                    structure[{jj, i, k - 1}] = structure[{jj, i, k - 1}] - c;
            }
        }
        for (auto it = structure.begin(); it != structure.end();)
            it = (it->second == 0) ? structure.erase(it) : std::next(it);
    }

    std::string name;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw parse_error("'name' must be a string");
        name = j["name"].get<std::string>();
    }

    LieAlgebra alg = LieAlgebra::create(dim, std::move(structure), std::move(name));

    if (j.contains("invariants")) {
        if (!j["invariants"].is_array()) throw parse_error("'invariants' must be an array");
        std::vector<MultiPoly> invs;
        for (const auto& inv : j["invariants"]) {
            if (!inv.is_string()) throw parse_error("invariants must be polynomial strings");
            invs.push_back(MultiPoly::parse(inv.get<std::string>(), dim));
        }
        alg = alg.with_invariants(std::move(invs));
    }
    return alg;
}

std::string algebra_to_json(const LieAlgebra& alg) {
    json j;
    j["dim"] = alg.dim();
    j["name"] = alg.name();

    // one entry per (i, j) pair, term maps ordered by k
    std::map<std::pair<std::size_t, std::size_t>, json> rows;
    for (const auto& [key, c] : alg.structure()) {
        const auto [i, jj, k] = key;
        rows[{i, jj}][std::to_string(k + 1)] = to_string(c);
    }
    j["brackets"] = json::array();
    for (const auto& [pair, terms] : rows)
        j["brackets"].push_back(
            {{"i", pair.first + 1}, {"j", pair.second + 1}, {"terms", terms}});

    j["invariants"] = json::array();
    for (const auto& f : alg.invariants()) j["invariants"].push_back(f.to_text());
    return j.dump(2);
}

RatVec parse_csv_rationals(const std::string& csv) {
    RatVec out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) throw parse_error("empty entry in rational list");
        const auto last = item.find_last_not_of(" \t");
        out.push_back(parse_rational(item.substr(first, last - first + 1)));
    }
    if (out.empty()) throw parse_error("empty rational list");
    return out;
}

} // namespace argshift
