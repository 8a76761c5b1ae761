#include "orbifold/json_io.hpp"

#include <fstream>

#include "orbifold/rightgroupal.hpp"

namespace orbifold {

Json category_to_json(const Category& c) {
  Json j;
  j["vertices"] = Json::array();
  for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v)
    j["vertices"].push_back(c.vertex_name(v));
  j["arrows"] = Json::array();
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a)
    j["arrows"].push_back({{"id", c.arrow_name(a)},
                           {"src", c.vertex_name(c.src(a))},
                           {"dst", c.vertex_name(c.dst(a))}});
  j["identities"] = Json::object();
  for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v)
    j["identities"][c.vertex_name(v)] = c.arrow_name(c.identity(v));
  j["compose"] = Json::array();
  for (const auto& [key, value] : c.compose_table())
    j["compose"].push_back({c.arrow_name(key.first), c.arrow_name(key.second),
                            c.arrow_name(value)});
  if (c.partial()) j["partial"] = true;
  return j;
}

Category category_from_json(const Json& j) {
  CategoryBuilder b;
  for (const auto& v : j.at("vertices")) b.add_vertex(v.get<std::string>());
  for (const auto& a : j.at("arrows"))
    b.add_arrow(a.at("id").get<std::string>(),
                a.at("src").get<std::string>(), a.at("dst").get<std::string>());
  for (const auto& [v, a] : j.at("identities").items())
    b.set_identity(b.vertex(v), b.arrow(a.get<std::string>()));
  for (const auto& row : j.at("compose"))
    b.set_compose(b.arrow(row.at(0).get<std::string>()),
                  b.arrow(row.at(1).get<std::string>()),
                  b.arrow(row.at(2).get<std::string>()));
  return b.build(j.value("partial", false));
}

Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["elements"] = Json::array();
  for (GroupId x = 0; x < static_cast<GroupId>(g.size()); ++x)
    j["elements"].push_back(g.name(x));
  j["mul"] = Json::array();
  for (GroupId x = 0; x < static_cast<GroupId>(g.size()); ++x)
    for (GroupId y = 0; y < static_cast<GroupId>(g.size()); ++y)
      j["mul"].push_back({g.name(x), g.name(y), g.name(g.mul(x, y))});
  return j;
}

FiniteGroup group_from_json(const Json& j) {
  std::vector<std::string> names;
  for (const auto& e : j.at("elements")) names.push_back(e.get<std::string>());
  auto index = [&](const std::string& n) -> GroupId {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<GroupId>(i);
    throw DomainError(ErrorKind::BadInput, "unknown group element " + n);
  };
  std::vector<std::vector<GroupId>> mul(names.size(),
                                        std::vector<GroupId>(names.size(), -1));
  for (const auto& row : j.at("mul"))
    mul[index(row.at(0).get<std::string>())]
       [index(row.at(1).get<std::string>())] =
           index(row.at(2).get<std::string>());
  return FiniteGroup::from_table(names, mul);
}

Json annotation_group_to_json(const AnnotationGroup& g) {
  Json j;
  if (g.kind() == AnnotationGroup::Kind::Table) {
    j["kind"] = "table";
    j["table"] = group_to_json(g.table());
  } else {
    j["kind"] = "fg-abelian";
    j["free_rank"] = g.free_rank();
    j["torsion"] = g.torsion();
  }
  return j;
}

AnnotationGroup annotation_group_from_json(const Json& j) {
  if (j.at("kind") == "table")
    return AnnotationGroup::wrap(group_from_json(j.at("table")));
  return AnnotationGroup::fg_abelian(
      j.at("free_rank").get<int>(),
      j.at("torsion").get<std::vector<long long>>());
}

Json action_to_json(const CategoryAction& a) {
  Json j;
  j["category"] = category_to_json(a.category);
  j["group"] = group_to_json(a.group);
  j["act_vertex"] = Json::object();
  j["act_arrow"] = Json::object();
  for (GroupId g = 0; g < static_cast<GroupId>(a.group.size()); ++g) {
    Json vm = Json::object(), am = Json::object();
    for (VertexId v = 0; v < static_cast<VertexId>(a.category.vertex_count());
         ++v)
      vm[a.category.vertex_name(v)] = a.category.vertex_name(a.av(g, v));
    for (ArrowId x = 0; x < static_cast<ArrowId>(a.category.arrow_count());
         ++x)
      am[a.category.arrow_name(x)] = a.category.arrow_name(a.aa(g, x));
    j["act_vertex"][a.group.name(g)] = vm;
    j["act_arrow"][a.group.name(g)] = am;
  }
  return j;
}

CategoryAction action_from_json(const Json& j) {
  CategoryAction a;
  a.category = category_from_json(j.at("category"));
  a.group = group_from_json(j.at("group"));
  a.act_vertex.resize(a.group.size());
  a.act_arrow.resize(a.group.size());
  for (GroupId g = 0; g < static_cast<GroupId>(a.group.size()); ++g) {
    a.act_vertex[g].resize(a.category.vertex_count());
    a.act_arrow[g].resize(a.category.arrow_count());
    const auto& vm = j.at("act_vertex").at(a.group.name(g));
    const auto& am = j.at("act_arrow").at(a.group.name(g));
    for (VertexId v = 0; v < static_cast<VertexId>(a.category.vertex_count());
         ++v)
      a.act_vertex[g][v] = a.category.vertex(
          vm.at(a.category.vertex_name(v)).get<std::string>());
    for (ArrowId x = 0; x < static_cast<ArrowId>(a.category.arrow_count());
         ++x)
      a.act_arrow[g][x] = a.category.arrow(
          am.at(a.category.arrow_name(x)).get<std::string>());
  }
  return a;
}

Json representation_to_json(const Representation& r) {
  Json j;
  j["category"] = category_to_json(r.cat);
  j["annotation"]["group"] = annotation_group_to_json(r.ann.group);
  Json labels = Json::object();
  for (ArrowId a = 0; a < static_cast<ArrowId>(r.cat.arrow_count()); ++a)
    labels[r.cat.arrow_name(a)] = r.ann.group.to_string(r.ann.label[a]);
  j["annotation"]["labels"] = labels;
  j["faithful"] = r.faithful;
  return j;
}

Representation representation_from_json(const Json& j) {
  Representation r;
  r.cat = category_from_json(j.at("category"));
  r.ann.group = annotation_group_from_json(j.at("annotation").at("group"));
  r.ann.label.resize(r.cat.arrow_count());
  for (const auto& [name, value] : j.at("annotation").at("labels").items())
    r.ann.label[r.cat.arrow(name)] =
        r.ann.group.parse(value.get<std::string>());
  r.faithful = j.value("faithful", false);
  return r;
}

namespace {

Json right_groupal_to_json(const RightGroupal& g) {
  Json j;
  j["category"] = category_to_json(g.cat);
  j["group"] = annotation_group_to_json(g.vgroup);
  Json elems = Json::object();
  for (VertexId v = 0; v < static_cast<VertexId>(g.cat.vertex_count()); ++v)
    elems[g.cat.vertex_name(v)] = g.vgroup.to_string(g.vertex_elem[v]);
  j["vertex_elems"] = elems;
  j["neutral"] = g.cat.vertex_name(g.neutral_vertex);
  Json action = Json::array();
  for (ArrowId a = 0; a < static_cast<ArrowId>(g.cat.arrow_count()); ++a)
    for (VertexId v = 0; v < static_cast<VertexId>(g.cat.vertex_count()); ++v)
      if (g.act[a][v] != kNoArrow)
        action.push_back({g.cat.arrow_name(a), g.cat.vertex_name(v),
                          g.cat.arrow_name(g.act[a][v])});
  j["action"] = action;
  return j;
}

RightGroupal right_groupal_from_json(const Json& j) {
  RightGroupal g;
  g.cat = category_from_json(j.at("category"));
  g.vgroup = annotation_group_from_json(j.at("group"));
  g.vertex_elem.resize(g.cat.vertex_count());
  for (const auto& [name, value] : j.at("vertex_elems").items())
    g.vertex_elem[g.cat.vertex(name)] =
        g.vgroup.parse(value.get<std::string>());
  g.neutral_vertex = g.cat.vertex(j.at("neutral").get<std::string>());
  g.act.assign(g.cat.arrow_count(),
               std::vector<ArrowId>(g.cat.vertex_count(), kNoArrow));
  for (const auto& row : j.at("action"))
    g.act[g.cat.arrow(row.at(0).get<std::string>())]
         [g.cat.vertex(row.at(1).get<std::string>())] =
             g.cat.arrow(row.at(2).get<std::string>());
  return g;
}

}  // namespace

Json flat_rep_to_json(const FlatRep& f) {
  Json j;
  j["base"] = category_to_json(f.base);
  Json labels = Json::object();
  for (ArrowId a = 0; a < static_cast<ArrowId>(f.base.arrow_count()); ++a)
    labels[f.base.arrow_name(a)] = f.ann.group.to_string(f.ann.label[a]);
  j["A"] = labels;
  Json nrows = Json::array();
  for (const auto& [key, value] : f.n_map)
    nrows.push_back({f.base.arrow_name(key.first),
                     f.base.arrow_name(key.second),
                     f.gloops.cat.arrow_name(value)});
  j["n"] = nrows;
  Json crows = Json::array();
  for (const auto& [key, value] : f.c_map)
    crows.push_back({f.base.arrow_name(key.first),
                     f.gloops.cat.arrow_name(key.second),
                     f.gloops.cat.arrow_name(value)});
  j["C"] = crows;
  j["G"] = right_groupal_to_json(f.G);
  j["pogroup_style"] = f.pogroup_style;
  return j;
}

FlatRep flat_rep_from_json(const Json& j) {
  FlatRep f;
  f.base = category_from_json(j.at("base"));
  f.G = right_groupal_from_json(j.at("G"));
  f.gloops = loop_orbit_category(f.G);
  f.pogroup_style = j.value("pogroup_style", false);
  f.ann.group = f.G.vgroup;
  f.ann.label.resize(f.base.arrow_count());
  for (const auto& [name, value] : j.at("A").items())
    f.ann.label[f.base.arrow(name)] = f.ann.group.parse(value.get<std::string>());
  for (const auto& row : j.at("n"))
    f.n_map[{f.base.arrow(row.at(0).get<std::string>()),
             f.base.arrow(row.at(1).get<std::string>())}] =
        f.gloops.cat.arrow(row.at(2).get<std::string>());
  for (const auto& row : j.at("C"))
    f.c_map[{f.base.arrow(row.at(0).get<std::string>()),
             f.gloops.cat.arrow(row.at(1).get<std::string>())}] =
        f.gloops.cat.arrow(row.at(2).get<std::string>());
  return f;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError(ErrorKind::BadInput, "cannot read " + path);
  Json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DomainError(ErrorKind::BadInput, "cannot write " + path);
  out << canonical_dump(j);
}

}  // namespace orbifold
