#include "cva/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cva {

using nlohmann::json;

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw std::invalid_argument("unknown key '" + it.key() + "' in " + where);
    }
}

json dist_to_obj(const Distribution& d) {
    json j;
    j["lo"] = d.lo();
    j["hi"] = d.hi();
    json atoms = json::array();
    for (const Atom& a : d.atoms()) atoms.push_back({a.loc, a.mass});
    j["atoms"] = atoms;
    json pieces = json::array();
    for (const Piece& p : d.pieces()) {
        std::vector<double> coef(4, 0.0);
        const std::vector<double>& c = p.density.coeffs();
        for (size_t i = 0; i < c.size() && i < 4; ++i) coef[i] = c[i];
        pieces.push_back({p.a, p.b, coef});
    }
    j["pieces"] = pieces;
    return j;
}

Distribution dist_from_obj(const json& j, const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument(where + ": distribution must be an object");
    require_keys(j, {"lo", "hi", "atoms", "pieces"}, where);
    if (!j.contains("lo") || !j.contains("hi"))
        throw std::invalid_argument(where + ": missing lo/hi");
    double lo = j.at("lo").get<double>();
    double hi = j.at("hi").get<double>();
    std::vector<Atom> atoms;
    if (j.contains("atoms"))
        for (const json& a : j.at("atoms")) {
            if (!a.is_array() || a.size() != 2)
                throw std::invalid_argument(where + ": atom must be [loc, mass]");
            atoms.push_back({a[0].get<double>(), a[1].get<double>()});
        }
    std::vector<Piece> pieces;
    if (j.contains("pieces"))
        for (const json& p : j.at("pieces")) {
            if (!p.is_array() || p.size() != 3 || !p[2].is_array())
                throw std::invalid_argument(where + ": piece must be [a, b, [c0..c3]]");
            std::vector<double> coef;
            for (const json& c : p[2]) coef.push_back(c.get<double>());
            pieces.push_back({p[0].get<double>(), p[1].get<double>(), Poly(coef)});
        }
    return Distribution(lo, hi, std::move(atoms), std::move(pieces));
}

}  // namespace

std::string distribution_to_json(const Distribution& d) { return dist_to_obj(d).dump(2) + "\n"; }

Distribution distribution_from_json(const std::string& text) {
    return dist_from_obj(json::parse(text), "distribution");
}

ScenarioConfig parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    require_keys(j, {"R", "agents", "options"}, "config");
    if (!j.contains("R")) throw std::invalid_argument("config: missing field 'R'");
    if (!j.contains("agents") || !j.at("agents").is_array() || j.at("agents").empty())
        throw std::invalid_argument("config: 'agents' must be a non-empty array");

    ScenarioConfig cfg;
    cfg.scenario.R = j.at("R").get<double>();
    int idx = 0;
    for (const json& a : j.at("agents")) {
        std::string where = "agents[" + std::to_string(idx) + "]";
        require_keys(a, {"prior", "c"}, where);
        if (!a.contains("prior")) throw std::invalid_argument(where + ": missing 'prior'");
        if (!a.contains("c")) throw std::invalid_argument(where + ": missing 'c'");
        double c = a.at("c").get<double>();
        if (c < 0) throw std::invalid_argument(where + ".c: must be >= 0");
        cfg.scenario.agents.push_back({dist_from_obj(a.at("prior"), where + ".prior"), c});
        ++idx;
    }
    if (j.contains("options")) {
        const json& o = j.at("options");
        require_keys(o, {"tie_rule", "mc_samples", "mc_seed", "grid_n", "tolerances"},
                     "options");
        if (o.contains("tie_rule")) {
            std::string t = o.at("tie_rule").get<std::string>();
            if (t == "equal")
                cfg.options.tie = TieRule::EqualSplit;
            else if (t == "lowest")
                cfg.options.tie = TieRule::LowestIndex;
            else
                throw std::invalid_argument("options.tie_rule: must be 'equal' or 'lowest'");
        }
        if (o.contains("mc_samples")) cfg.options.mc_samples = o.at("mc_samples").get<std::uint64_t>();
        if (o.contains("mc_seed")) cfg.options.mc_seed = o.at("mc_seed").get<std::uint64_t>();
        if (o.contains("grid_n")) cfg.options.grid_n = o.at("grid_n").get<int>();
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string format_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

}  // namespace cva
