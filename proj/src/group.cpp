#include "orbifold/group.hpp"

#include <algorithm>

namespace orbifold {

FiniteGroup FiniteGroup::from_table(std::vector<std::string> names,
                                    std::vector<std::vector<GroupId>> mul) {
  FiniteGroup g;
  g.names_ = std::move(names);
  g.mul_ = std::move(mul);
  const auto n = static_cast<GroupId>(g.names_.size());
  if (g.mul_.size() != g.names_.size())
    throw DomainError(ErrorKind::BadInput, "multiplication table size");
  // Locate the neutral element.
  g.neutral_ = -1;
  for (GroupId e = 0; e < n; ++e) {
    bool ok = true;
    for (GroupId x = 0; x < n && ok; ++x)
      ok = g.mul_[e][x] == x && g.mul_[x][e] == x;
    if (ok) {
      g.neutral_ = e;
      break;
    }
  }
  if (g.neutral_ < 0)
    throw DomainError(ErrorKind::BadInput, "no neutral element");
  g.inv_.assign(n, -1);
  for (GroupId x = 0; x < n; ++x)
    for (GroupId y = 0; y < n; ++y)
      if (g.mul_[x][y] == g.neutral_ && g.mul_[y][x] == g.neutral_)
        g.inv_[x] = y;
  for (GroupId x = 0; x < n; ++x)
    if (g.inv_[x] < 0)
      throw DomainError(ErrorKind::BadInput, "no inverse for " + g.names_[x]);
  return g;
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(int n, const std::string& prefix) {
  std::vector<std::string> names;
  std::vector<std::vector<GroupId>> mul(n, std::vector<GroupId>(n));
  for (int i = 0; i < n; ++i) {
    names.push_back(i == 0 ? "1" : prefix + std::to_string(i));
    for (int j = 0; j < n; ++j) mul[i][j] = (i + j) % n;
  }
  return from_table(std::move(names), std::move(mul));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a,
                                        const FiniteGroup& b) {
  const auto na = static_cast<GroupId>(a.size());
  const auto nb = static_cast<GroupId>(b.size());
  std::vector<std::string> names;
  std::vector<std::vector<GroupId>> mul(na * nb,
                                        std::vector<GroupId>(na * nb));
  for (GroupId i = 0; i < na; ++i)
    for (GroupId j = 0; j < nb; ++j)
      names.push_back("(" + a.name(i) + "," + b.name(j) + ")");
  for (GroupId i1 = 0; i1 < na; ++i1)
    for (GroupId j1 = 0; j1 < nb; ++j1)
      for (GroupId i2 = 0; i2 < na; ++i2)
        for (GroupId j2 = 0; j2 < nb; ++j2)
          mul[i1 * nb + j1][i2 * nb + j2] =
              a.mul(i1, i2) * nb + b.mul(j1, j2);
  return from_table(std::move(names), std::move(mul));
}

std::optional<GroupId> FiniteGroup::find(const std::string& name) const {
  for (GroupId g = 0; g < static_cast<GroupId>(names_.size()); ++g)
    if (names_[g] == name) return g;
  return std::nullopt;
}

GroupId FiniteGroup::element(const std::string& name) const {
  auto g = find(name);
  if (!g) throw DomainError(ErrorKind::BadInput, "unknown element " + name);
  return *g;
}

ValidationReport FiniteGroup::validate() const {
  ValidationReport rep;
  const auto n = static_cast<GroupId>(names_.size());
  for (GroupId x = 0; x < n; ++x)
    for (GroupId y = 0; y < n; ++y) {
      GroupId xy = mul_[x][y];
      if (xy < 0 || xy >= n) {
        rep.add("closure", names_[x] + "*" + names_[y]);
        continue;
      }
      for (GroupId z = 0; z < n; ++z)
        if (mul_[xy][z] != mul_[x][mul_[y][z]])
          rep.add("associativity",
                  names_[x] + "*" + names_[y] + "*" + names_[z]);
    }
  return rep;
}

AnnotationGroup AnnotationGroup::wrap(FiniteGroup g) {
  AnnotationGroup a;
  a.kind_ = Kind::Table;
  a.table_ = std::move(g);
  return a;
}

AnnotationGroup AnnotationGroup::fg_abelian(int free_rank,
                                            std::vector<long long> torsion) {
  AnnotationGroup a;
  a.kind_ = Kind::FgAbelian;
  a.free_rank_ = free_rank;
  a.torsion_ = std::move(torsion);
  for (long long t : a.torsion_)
    if (t < 1) throw DomainError(ErrorKind::BadInput, "torsion order < 1");
  return a;
}

GroupElem AnnotationGroup::canonical(GroupElem a) const {
  if (kind_ == Kind::FgAbelian) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      long long n = torsion_[i];
      long long& x = a.vec[free_rank_ + i];
      x %= n;
      if (x < 0) x += n;
    }
  }
  return a;
}

GroupElem AnnotationGroup::mul(const GroupElem& a, const GroupElem& b) const {
  if (kind_ == Kind::Table) return from_table_id(table_.mul(a.idx, b.idx));
  GroupElem out;
  out.vec.resize(a.vec.size());
  for (std::size_t i = 0; i < a.vec.size(); ++i) out.vec[i] = a.vec[i] + b.vec[i];
  return canonical(std::move(out));
}

GroupElem AnnotationGroup::inv(const GroupElem& a) const {
  if (kind_ == Kind::Table) return from_table_id(table_.inv(a.idx));
  GroupElem out;
  out.vec.resize(a.vec.size());
  for (std::size_t i = 0; i < a.vec.size(); ++i) out.vec[i] = -a.vec[i];
  return canonical(std::move(out));
}

GroupElem AnnotationGroup::neutral() const {
  if (kind_ == Kind::Table) return from_table_id(table_.neutral());
  GroupElem out;
  out.vec.assign(free_rank_ + torsion_.size(), 0);
  return out;
}

std::vector<GroupElem> AnnotationGroup::elements() const {
  if (!finite())
    throw DomainError(ErrorKind::InfiniteGroup,
                      "free rank " + std::to_string(free_rank_));
  std::vector<GroupElem> out;
  if (kind_ == Kind::Table) {
    for (GroupId g = 0; g < static_cast<GroupId>(table_.size()); ++g)
      out.push_back(from_table_id(g));
    return out;
  }
  out.push_back(neutral());
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    std::vector<GroupElem> next;
    for (const auto& e : out)
      for (long long v = 0; v < torsion_[i]; ++v) {
        GroupElem x = e;
        x.vec[i] = v;
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string AnnotationGroup::to_string(const GroupElem& a) const {
  if (kind_ == Kind::Table) return table_.name(a.idx);
  std::string s = "[";
  for (std::size_t i = 0; i < a.vec.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a.vec[i]);
  }
  return s + "]";
}

GroupElem AnnotationGroup::parse(const std::string& s) const {
  if (kind_ == Kind::Table) return from_table_id(table_.element(s));
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw DomainError(ErrorKind::BadInput, "bad vector literal " + s);
  std::vector<long long> v;
  std::string body = s.substr(1, s.size() - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t next = body.find(',', pos);
    if (next == std::string::npos) next = body.size();
    v.push_back(std::stoll(body.substr(pos, next - pos)));
    pos = next + 1;
  }
  return from_vector(std::move(v));
}

GroupElem AnnotationGroup::from_table_id(GroupId g) const {
  GroupElem e;
  e.idx = g;
  return e;
}

GroupElem AnnotationGroup::from_vector(std::vector<long long> v) const {
  if (static_cast<int>(v.size()) != free_rank_ + static_cast<int>(torsion_.size()))
    throw DomainError(ErrorKind::BadInput, "vector length mismatch");
  GroupElem e;
  e.vec = std::move(v);
  return canonical(std::move(e));
}

bool AnnotationGroup::operator==(const AnnotationGroup& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == Kind::Table)
    return table_.size() == o.table_.size() &&
           table_.table() == o.table_.table();
  return free_rank_ == o.free_rank_ && torsion_ == o.torsion_;
}

}  // namespace orbifold
