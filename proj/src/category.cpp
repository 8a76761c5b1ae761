#include "orbifold/category.hpp"

#include <algorithm>
#include <set>

namespace orbifold {

std::optional<VertexId> Category::find_vertex(const std::string& name) const {
  auto it = vertex_index_.find(name);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArrowId> Category::find_arrow(const std::string& name) const {
  auto it = arrow_index_.find(name);
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

VertexId Category::vertex(const std::string& name) const {
  auto v = find_vertex(name);
  if (!v) throw DomainError(ErrorKind::BadInput, "unknown vertex " + name);
  return *v;
}

ArrowId Category::arrow(const std::string& name) const {
  auto a = find_arrow(name);
  if (!a) throw DomainError(ErrorKind::BadInput, "unknown arrow " + name);
  return *a;
}

std::optional<ArrowId> Category::compose(ArrowId a, ArrowId b) const {
  if (dst_[a] != src_[b]) return std::nullopt;
  auto it = compose_.find({a, b});
  if (it != compose_.end()) return it->second;
  if (is_identity(a)) return b;
  if (is_identity(b)) return a;
  return std::nullopt;
}

std::vector<ArrowId> Category::hom(VertexId x, VertexId y) const {
  std::vector<ArrowId> out;
  for (ArrowId a : out_arrows_[x])
    if (dst_[a] == y) out.push_back(a);
  return out;
}

VertexId CategoryBuilder::add_vertex(const std::string& name) {
  if (cat_.vertex_index_.count(name))
    throw DomainError(ErrorKind::BadInput, "duplicate vertex " + name);
  VertexId v = static_cast<VertexId>(cat_.vertex_names_.size());
  cat_.vertex_names_.push_back(name);
  cat_.vertex_index_[name] = v;
  cat_.identity_.push_back(kNoArrow);
  return v;
}

ArrowId CategoryBuilder::add_arrow(const std::string& name, VertexId src,
                                   VertexId dst) {
  if (cat_.arrow_index_.count(name))
    throw DomainError(ErrorKind::BadInput, "duplicate arrow " + name);
  ArrowId a = static_cast<ArrowId>(cat_.arrow_names_.size());
  cat_.arrow_names_.push_back(name);
  cat_.arrow_index_[name] = a;
  cat_.src_.push_back(src);
  cat_.dst_.push_back(dst);
  return a;
}

ArrowId CategoryBuilder::add_arrow(const std::string& name,
                                   const std::string& src,
                                   const std::string& dst) {
  return add_arrow(name, cat_.vertex(src), cat_.vertex(dst));
}

void CategoryBuilder::set_identity(VertexId v, ArrowId a) {
  cat_.identity_[v] = a;
}

void CategoryBuilder::set_compose(ArrowId a, ArrowId b, ArrowId c) {
  cat_.compose_[{a, b}] = c;
}

void CategoryBuilder::ensure_identities() {
  for (VertexId v = 0; v < static_cast<VertexId>(cat_.vertex_names_.size());
       ++v) {
    if (cat_.identity_[v] == kNoArrow) {
      ArrowId a = add_arrow("id:" + cat_.vertex_names_[v], v, v);
      cat_.identity_[v] = a;
    }
  }
}

Category CategoryBuilder::build(bool partial) {
  cat_.partial_ = partial;
  cat_.out_arrows_.assign(cat_.vertex_names_.size(), {});
  cat_.in_arrows_.assign(cat_.vertex_names_.size(), {});
  for (ArrowId a = 0; a < static_cast<ArrowId>(cat_.arrow_names_.size()); ++a) {
    cat_.out_arrows_[cat_.src_[a]].push_back(a);
    cat_.in_arrows_[cat_.dst_[a]].push_back(a);
  }
  return std::move(cat_);
}

ValidationReport validate_category(const Category& c) {
  ValidationReport rep;
  const auto n_arrows = static_cast<ArrowId>(c.arrow_count());

  // Identity loops: exactly one per vertex, correct endpoints.
  std::vector<int> id_owner(c.arrow_count(), -1);
  for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v) {
    ArrowId id = c.identity(v);
    if (id == kNoArrow) {
      rep.add("identity-missing", "vertex " + c.vertex_name(v));
      continue;
    }
    if (c.src(id) != v || c.dst(id) != v)
      rep.add("identity-endpoints",
              "id of " + c.vertex_name(v) + " is " + c.arrow_name(id));
    if (id_owner[id] != -1)
      rep.add("identity-shared", c.arrow_name(id));
    id_owner[id] = v;
  }

  // Composition table closure and endpoint compatibility.
  for (const auto& [pair, result] : c.compose_table()) {
    auto [a, b] = pair;
    if (c.dst(a) != c.src(b)) {
      rep.add("compose-junction", c.arrow_name(a) + "*" + c.arrow_name(b));
      continue;
    }
    if (result < 0 || result >= n_arrows) {
      rep.add("compose-closure", c.arrow_name(a) + "*" + c.arrow_name(b));
      continue;
    }
    if (c.src(result) != c.src(a) || c.dst(result) != c.dst(b))
      rep.add("compose-endpoints", c.arrow_name(a) + "*" + c.arrow_name(b) +
                                       " = " + c.arrow_name(result));
  }

  // Identity laws (also catches bogus stored entries involving identities).
  for (ArrowId a = 0; a < n_arrows; ++a) {
    ArrowId li = c.identity(c.src(a));
    ArrowId ri = c.identity(c.dst(a));
    if (li == kNoArrow || ri == kNoArrow) continue;
    auto left = c.compose(li, a);
    auto right = c.compose(a, ri);
    if (!left || *left != a)
      rep.add("identity-law", "id*" + c.arrow_name(a));
    if (!right || *right != a)
      rep.add("identity-law", c.arrow_name(a) + "*id");
  }

  // Totality on composable pairs for non-partial categories.
  if (!c.partial()) {
    for (ArrowId a = 0; a < n_arrows; ++a)
      for (ArrowId b : c.arrows_from(c.dst(a)))
        if (!c.compose_defined(a, b))
          rep.add("compose-missing", c.arrow_name(a) + "*" + c.arrow_name(b));
  }

  // Associativity on every composable triple; for partial categories only
  // where both parenthesisations are defined.
  for (ArrowId a = 0; a < n_arrows; ++a) {
    for (ArrowId b : c.arrows_from(c.dst(a))) {
      auto ab = c.compose(a, b);
      for (ArrowId d : c.arrows_from(c.dst(b))) {
        auto bd = c.compose(b, d);
        std::optional<ArrowId> left, right;
        if (ab) left = c.compose(*ab, d);
        if (bd) right = c.compose(a, *bd);
        if (left && right && *left != *right)
          rep.add("associativity", "(" + c.arrow_name(a) + "*" +
                                       c.arrow_name(b) + ")*" +
                                       c.arrow_name(d));
        if (!c.partial() && (!left || !right))
          rep.add("associativity-undefined",
                  c.arrow_name(a) + "*" + c.arrow_name(b) + "*" +
                      c.arrow_name(d));
      }
    }
  }

  return rep;
}

ArrowId compose_path(const Category& c, const std::vector<ArrowId>& arrows) {
  if (arrows.empty())
    throw DomainError(ErrorKind::BadInput, "empty path");
  ArrowId acc = arrows[0];
  for (std::size_t i = 1; i < arrows.size(); ++i) {
    auto next = c.compose(acc, arrows[i]);
    if (!next)
      throw DomainError(ErrorKind::NonComposable,
                        "junction " + std::to_string(i));
    acc = *next;
  }
  return acc;
}

Digraph underlying_graph(const Category& c, bool include_identities) {
  Digraph g;
  for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v)
    g.vertices.push_back(c.vertex_name(v));
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a) {
    if (!include_identities && c.is_identity(a)) continue;
    g.edges.push_back({c.arrow_name(a), static_cast<std::size_t>(c.src(a)),
                       static_cast<std::size_t>(c.dst(a))});
  }
  return g;
}

PathCategory bounded_path_category(const Digraph& g, int max_len) {
  if (max_len < 1)
    throw DomainError(ErrorKind::BadInput, "max_len must be >= 1");
  PathCategory out;
  CategoryBuilder b;
  for (const auto& v : g.vertices) b.add_vertex(v);

  auto path_name = [&](const std::vector<std::size_t>& edges,
                       std::size_t at_vertex) {
    if (edges.empty()) return "p0:" + g.vertices[at_vertex];
    std::string s = "p:";
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (i) s += ".";
      s += g.edges[edges[i]].name;
    }
    return s;
  };

  // Identities = empty paths.
  std::vector<ArrowId> ids;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    ArrowId a = b.add_arrow(path_name({}, v), static_cast<VertexId>(v),
                            static_cast<VertexId>(v));
    b.set_identity(static_cast<VertexId>(v), a);
    out.path_edges.push_back({});
    ids.push_back(a);
  }

  // Breadth-first enumeration of paths by length.
  struct P {
    std::vector<std::size_t> edges;
    std::size_t src, dst;
    ArrowId arrow;
  };
  std::vector<P> paths;
  std::vector<std::size_t> frontier;  // indices into paths
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    ArrowId a = b.add_arrow(path_name({e}, 0),
                            static_cast<VertexId>(g.edges[e].src),
                            static_cast<VertexId>(g.edges[e].dst));
    out.path_edges.push_back({e});
    paths.push_back({{e}, g.edges[e].src, g.edges[e].dst, a});
    frontier.push_back(paths.size() - 1);
  }
  for (int len = 2; len <= max_len; ++len) {
    std::vector<std::size_t> next;
    for (std::size_t pi : frontier) {
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].src != paths[pi].dst) continue;
        auto edges = paths[pi].edges;
        edges.push_back(e);
        ArrowId a = b.add_arrow(path_name(edges, 0),
                                static_cast<VertexId>(edges.empty()
                                                          ? paths[pi].src
                                                          : g.edges[edges[0]].src),
                                static_cast<VertexId>(g.edges[e].dst));
        out.path_edges.push_back(edges);
        paths.push_back({std::move(edges), paths[pi].src, g.edges[e].dst, a});
        next.push_back(paths.size() - 1);
      }
    }
    frontier = std::move(next);
  }

  // Concatenation where the combined length fits. Identity concatenations are
  // implied by the builder semantics.
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, ArrowId> lookup;
  for (const auto& p : paths) lookup[{p.src, p.edges}] = p.arrow;
  for (const auto& p : paths) {
    for (const auto& q : paths) {
      if (p.dst != q.src) continue;
      if (static_cast<int>(p.edges.size() + q.edges.size()) > max_len)
        continue;
      auto edges = p.edges;
      edges.insert(edges.end(), q.edges.begin(), q.edges.end());
      b.set_compose(p.arrow, q.arrow, lookup.at({p.src, edges}));
    }
  }

  out.cat = b.build(/*partial=*/true);
  return out;
}

bool is_simple(const Category& c) {
  std::set<std::pair<VertexId, VertexId>> seen;
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a)
    if (!seen.insert({c.src(a), c.dst(a)}).second) return false;
  return true;
}

std::vector<std::pair<VertexId, VertexId>> simple_relation(const Category& c) {
  std::set<std::pair<VertexId, VertexId>> rel;
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a)
    rel.insert({c.src(a), c.dst(a)});
  return {rel.begin(), rel.end()};
}

RelationProps relation_properties(const Category& c) {
  RelationProps props{true, true, true, ""};
  auto rel = simple_relation(c);
  std::set<std::pair<VertexId, VertexId>> set(rel.begin(), rel.end());
  for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v)
    if (!set.count({v, v})) {
      props.reflexive = false;
      props.witness = "not reflexive at " + c.vertex_name(v);
    }
  for (const auto& [x, y] : rel) {
    if (x != y && set.count({y, x})) {
      props.antisymmetric = false;
      props.witness = "2-cycle " + c.vertex_name(x) + "<->" + c.vertex_name(y);
    }
    for (const auto& [y2, z] : rel)
      if (y2 == y && !set.count({x, z})) {
        props.transitive = false;
        props.witness = "missing " + c.vertex_name(x) + "->" + c.vertex_name(z);
      }
  }
  return props;
}

}  // namespace orbifold
