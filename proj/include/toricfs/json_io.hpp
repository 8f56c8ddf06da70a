#pragma once

#include <memory>
#include <string>

#include "json.hpp"
#include "toricfs/klyachko.hpp"

namespace toricfs {

nlohmann::json field_to_json(const Fq& f);  // {"p": .., "d": ..}
const Fq& field_from_json(const nlohmann::json& j);

// Elements of prime fields serialize as plain integers; extension elements as
// the coefficient array (c_0, ..., c_{d-1}).  Both forms are accepted on
// input for any degree.
nlohmann::json elem_to_json(const FqElem& x);
FqElem elem_from_json(const Fq& f, const nlohmann::json& j);
nlohmann::json vec_to_json(const FqVec& v);
FqVec vec_from_json(const Fq& f, const nlohmann::json& j);

// {"rank": n, "rays": [[..]], "max_cones": [[ray indices]]}, 0-based indices.
nlohmann::json fan_to_json(const Fan& fan);
std::shared_ptr<const Fan> fan_from_json(const nlohmann::json& j);

// {"rank": r, "field": {..}, "filtrations": [{"ray": i, "jumps": [{"i": n,
// "basis": [[elem]]}]}]}.  Every fan ray appears exactly once; each jump's
// basis spans the filtration value at that index.
nlohmann::json bundle_to_json(const ToricBundle& b);
ToricBundle bundle_from_json(std::shared_ptr<const Fan> fan, const nlohmann::json& j);

// tangent | cotangent | line:[a_1,..,a_k] | sum:[[..],[..],..] (one inner
// array of per-ray values per line summand).
ToricBundle builtin_bundle(std::shared_ptr<const Fan> fan, const Fq& f, const std::string& spec);

// Reads a JSON document from a file; a string that itself starts with '{' is
// parsed directly instead, so callers can pass inline documents where a path
// is expected.
nlohmann::json load_json_file(const std::string& path);

}  // namespace toricfs
