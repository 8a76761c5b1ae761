#include "orbifold/dot.hpp"

#include <sstream>

namespace orbifold {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const Category& c, bool include_identities,
                   const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quote(name) << " {\n";
  for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v)
    out << "  " << quote(c.vertex_name(v)) << ";\n";
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a) {
    if (!include_identities && c.is_identity(a)) continue;
    out << "  " << quote(c.vertex_name(c.src(a))) << " -> "
        << quote(c.vertex_name(c.dst(a))) << " [label=" << quote(c.arrow_name(a))
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace orbifold
