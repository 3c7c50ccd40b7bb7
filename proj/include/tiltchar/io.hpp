#pragma once

#include "tiltchar/charring.hpp"

#include "json.hpp"

#include <fstream>
#include <string>

namespace tiltchar {

using json = nlohmann::json;

inline json weight_to_json(const Weight& w)
{
    return json(w.coords);
}

inline Weight weight_from_json(const json& j, int expected_rank)
{
    if (!j.is_array())
        throw parse_error("weight must be an integer array, got " + j.dump());
    std::vector<Int> c;
    for (const auto& v : j) {
        if (!v.is_number_integer())
            throw parse_error("weight entries must be integers, got " + j.dump());
        c.push_back(v.get<Int>());
    }
    if (expected_rank >= 0 && c.size() != static_cast<std::size_t>(expected_rank))
        throw parse_error("weight " + j.dump() + " has rank " + std::to_string(c.size())
                          + ", expected " + std::to_string(expected_rank));
    return Weight(std::move(c));
}

// A weight map serializes as a list of {weight, mult} pairs in the map's
// (lexicographic) order, which keeps all emitted files and outputs stable.
inline json weight_map_to_json(const WeightMap& m)
{
    json out = json::array();
    for (const auto& [w, c] : m)
        out.push_back({ { "weight", weight_to_json(w) }, { "mult", c } });
    return out;
}

inline WeightMap weight_map_from_json(const json& j, int expected_rank)
{
    if (!j.is_array())
        throw parse_error("expected a list of {weight, mult} pairs, got " + j.dump());
    WeightMap m;
    for (const auto& e : j) {
        if (!e.contains("weight") || !e.contains("mult") || !e["mult"].is_number_integer())
            throw parse_error("bad {weight, mult} entry: " + e.dump());
        const Weight w = weight_from_json(e["weight"], expected_rank);
        if (m.count(w))
            throw parse_error("duplicate weight " + to_string(w));
        const Int c = e["mult"].get<Int>();
        if (c != 0)
            m.emplace(w, c);
    }
    return m;
}

inline json character_to_json(const Character& a)
{
    return weight_map_to_json(a.mults());
}

inline Character character_from_json(const json& j, const RootSystemPtr& rs)
{
    return Character(rs, weight_map_from_json(j, rs->rank));
}

inline json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
    return j;
}

} // namespace tiltchar
