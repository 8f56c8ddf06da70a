#include "toricfs/json_io.hpp"

#include <fstream>
#include <optional>

namespace toricfs {

using nlohmann::json;

json field_to_json(const Fq& f) { return json{{"p", f.p()}, {"d", f.d()}}; }

const Fq& field_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p"))
        throw ToricError("field descriptor must be an object with \"p\" (and optional \"d\")");
    int64_t p = j.at("p").get<int64_t>();
    int d = j.contains("d") ? j.at("d").get<int>() : 1;
    return Fq::get(p, d);
}

json elem_to_json(const FqElem& x) {
    if (x.field().d() == 1) return json(x.as_int());
    return json(x.coeffs());
}

FqElem elem_from_json(const Fq& f, const json& j) {
    if (j.is_number_integer()) return FqElem(f, j.get<int64_t>());
    if (j.is_array()) return FqElem::from_coeffs(f, j.get<std::vector<int64_t>>());
    throw ToricError("field element must be an integer or a coefficient array");
}

json vec_to_json(const FqVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(elem_to_json(x));
    return a;
}

FqVec vec_from_json(const Fq& f, const json& j) {
    if (!j.is_array()) throw ToricError("vector must be a JSON array");
    FqVec v;
    for (const auto& e : j) v.push_back(elem_from_json(f, e));
    return v;
}

json fan_to_json(const Fan& fan) {
    json j;
    j["rank"] = fan.rank();
    j["rays"] = fan.rays();
    j["max_cones"] = fan.max_cones();
    return j;
}

std::shared_ptr<const Fan> fan_from_json(const json& j) {
    if (!j.is_object()) throw ToricError("fan must be a JSON object");
    for (const char* key : {"rank", "rays", "max_cones"})
        if (!j.contains(key)) throw ToricError(std::string("fan is missing \"") + key + "\"");
    int rank = j.at("rank").get<int>();
    auto rays = j.at("rays").get<std::vector<IntVec>>();
    auto cones = j.at("max_cones").get<std::vector<std::vector<int>>>();
    return std::make_shared<Fan>(rank, std::move(rays), std::move(cones));
}

json bundle_to_json(const ToricBundle& b) {
    json j;
    j["rank"] = b.rank();
    j["field"] = field_to_json(b.field());
    json filts = json::array();
    for (int a = 0; a < b.fan().n_rays(); ++a) {
        json fj;
        fj["ray"] = a;
        json jumps = json::array();
        for (const auto& [i, sp] : b.filtration(a).steps()) {
            json jj;
            jj["i"] = i;
            json rows = json::array();
            for (int r = 0; r < sp.dim(); ++r) rows.push_back(vec_to_json(sp.basis().row(r)));
            jj["basis"] = rows;
            jumps.push_back(jj);
        }
        fj["jumps"] = jumps;
        filts.push_back(fj);
    }
    j["filtrations"] = filts;
    return j;
}

ToricBundle bundle_from_json(std::shared_ptr<const Fan> fan, const json& j) {
    if (!j.is_object()) throw ToricError("bundle must be a JSON object");
    for (const char* key : {"rank", "field", "filtrations"})
        if (!j.contains(key)) throw ToricError(std::string("bundle is missing \"") + key + "\"");
    const Fq& f = field_from_json(j.at("field"));
    int r = j.at("rank").get<int>();
    if (r < 1) throw ToricError("bundle rank must be positive");
    int nr = fan->n_rays();
    std::vector<std::optional<RayFiltration>> parsed(nr);
    for (const auto& fj : j.at("filtrations")) {
        int ray = fj.at("ray").get<int>();
        if (ray < 0 || ray >= nr) throw ToricError("filtration ray index out of range");
        if (parsed[ray]) throw ToricError("duplicate filtration for ray " + std::to_string(ray));
        std::vector<std::pair<int64_t, Subspace>> steps;
        for (const auto& jj : fj.at("jumps")) {
            int64_t i = jj.at("i").get<int64_t>();
            std::vector<FqVec> rows;
            for (const auto& rj : jj.at("basis")) {
                FqVec row = vec_from_json(f, rj);
                if (static_cast<int>(row.size()) != r)
                    throw ToricError("basis row length must equal the bundle rank");
                rows.push_back(std::move(row));
            }
            Subspace sp = rows.empty() ? Subspace::zero(f, r)
                                       : Subspace::span(FqMatrix::from_rows(f, rows, r));
            steps.emplace_back(i, std::move(sp));
        }
        parsed[ray].emplace(f, r, std::move(steps));
    }
    std::vector<RayFiltration> filts;
    for (int a = 0; a < nr; ++a) {
        if (!parsed[a]) throw ToricError("missing filtration for ray " + std::to_string(a));
        filts.push_back(std::move(*parsed[a]));
    }
    return ToricBundle::build(std::move(fan), f, std::move(filts));
}

ToricBundle builtin_bundle(std::shared_ptr<const Fan> fan, const Fq& f, const std::string& spec) {
    if (spec == "tangent") return tangent_bundle(std::move(fan), f);
    if (spec == "cotangent") return cotangent_bundle(std::move(fan), f);
    auto payload = [&](size_t skip) {
        try {
            return json::parse(spec.substr(skip));
        } catch (const json::parse_error& e) {
            throw ToricError(std::string("bundle spec payload is not valid JSON: ") + e.what());
        }
    };
    if (spec.rfind("line:", 0) == 0) {
        ToricLineData data = payload(5).get<ToricLineData>();
        if (static_cast<int>(data.size()) != fan->n_rays())
            throw ToricError("line data needs one value per fan ray");
        return line_bundle(std::move(fan), f, data);
    }
    if (spec.rfind("sum:", 0) == 0) {
        auto lines = payload(4).get<std::vector<ToricLineData>>();
        if (lines.empty()) throw ToricError("sum needs at least one line summand");
        for (const auto& l : lines)
            if (static_cast<int>(l.size()) != fan->n_rays())
                throw ToricError("each line summand needs one value per fan ray");
        return direct_sum_lines(std::move(fan), f, lines);
    }
    throw ToricError("unknown bundle spec \"" + spec +
                     "\" (expected tangent, cotangent, line:[..], sum:[[..],..], or a JSON file)");
}

json load_json_file(const std::string& path) {
    // inline documents are accepted in place of a path, for programmatic use
    size_t first = path.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && path[first] == '{') {
        try {
            return json::parse(path);
        } catch (const json::parse_error& e) {
            throw ToricError(std::string("inline JSON: ") + e.what());
        }
    }
    std::ifstream in(path);
    if (!in) throw ToricError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ToricError(path + ": " + e.what());
    }
}

}  // namespace toricfs
