#pragma once

#include <string>

#include <json.hpp>

#include "orbifold/action.hpp"
#include "orbifold/category.hpp"
#include "orbifold/flat.hpp"
#include "orbifold/group.hpp"
#include "orbifold/orbitfold.hpp"

namespace orbifold {

using Json = nlohmann::ordered_json;

/// {"vertices": [...], "arrows": [{"id","src","dst"}], "identities": {v: a},
///  "compose": [[a,b,c], ...]}; partial categories add "partial": true.
Json category_to_json(const Category& c);
Category category_from_json(const Json& j);

Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);

/// Table groups serialise as {"kind":"table", ...}; fg-abelian groups as
/// {"kind":"fg-abelian","free_rank":d,"torsion":[...]}.
Json annotation_group_to_json(const AnnotationGroup& g);
AnnotationGroup annotation_group_from_json(const Json& j);

/// {"category":..., "group":..., "act_vertex":{g:{v:v'}}, "act_arrow":...}.
Json action_to_json(const CategoryAction& a);
CategoryAction action_from_json(const Json& j);

/// {"category":..., "annotation":{"group":..., "labels":{arrow: elem}}}.
Json representation_to_json(const Representation& r);
Representation representation_from_json(const Json& j);

Json flat_rep_to_json(const FlatRep& f);
FlatRep flat_rep_from_json(const Json& j);

std::string canonical_dump(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace orbifold
