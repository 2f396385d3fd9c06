#pragma once

// JSON forms of every artifact, plus a canonical printer (sorted keys,
// doubles with 17 significant digits) so load → save is byte-stable.
//
// Paths in filter files are listed tail-first, in application order:
// ["a35", "a51"] is the path a51·a35 (apply a35, then a51).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "decomposition.hpp"
#include "morphisms.hpp"
#include "path_algebra.hpp"
#include "quiver.hpp"
#include "representation.hpp"
#include "tda.hpp"

namespace quiversp {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Canonical printing
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

inline bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

inline void dump_canonical(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // std::map: keys sorted
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(key).dump() + ": ";
        dump_canonical(value, out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (std::all_of(j.begin(), j.end(), is_scalar)) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_canonical(j[i], out, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump_canonical(j[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

/// Sorted keys, two-space indent, scalar arrays on one line, doubles printed
/// with 17 significant digits, trailing newline.
inline std::string canonical_dump(const Json& j) {
  std::string out;
  detail::dump_canonical(j, out, 0);
  out += '\n';
  return out;
}

/// Reads and parses a JSON file; parse failures report file, line and column.
inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Field access with diagnostics
// ---------------------------------------------------------------------------

namespace detail {

inline const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(where + ": missing field '" + key + "'");
  return *it;
}

inline std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ValidationError(where + ": expected a string");
  return j.get<std::string>();
}

inline double as_double(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ValidationError(where + ": expected a number");
  return j.get<double>();
}

inline long long as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ValidationError(where + ": expected an integer");
  return j.get<long long>();
}

inline const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array");
  return j;
}

inline const Json& as_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Quiver
// ---------------------------------------------------------------------------

inline Json to_json(const Quiver& q) {
  Json arrows = Json::array();
  for (const auto& a : q.arrows()) {
    arrows.push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}});
  }
  return {{"nodes", q.nodes()}, {"arrows", arrows}};
}

inline Quiver quiver_from_json(const Json& j) {
  using namespace detail;
  std::vector<std::string> nodes;
  const Json& jn = as_array(field(j, "nodes", "quiver"), "quiver/nodes");
  for (std::size_t i = 0; i < jn.size(); ++i) {
    nodes.push_back(as_string(jn[i], "quiver/nodes/" + std::to_string(i)));
  }
  std::vector<Arrow> arrows;
  const Json& ja = as_array(field(j, "arrows", "quiver"), "quiver/arrows");
  for (std::size_t i = 0; i < ja.size(); ++i) {
    const std::string where = "quiver/arrows/" + std::to_string(i);
    arrows.push_back({as_string(field(ja[i], "id", where), where + "/id"),
                      as_string(field(ja[i], "tail", where), where + "/tail"),
                      as_string(field(ja[i], "head", where), where + "/head")});
  }
  return Quiver(std::move(nodes), std::move(arrows));
}

// ---------------------------------------------------------------------------
// Matrices, representations, signals
// ---------------------------------------------------------------------------

inline Json to_json(const Matrix& m) {
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

inline Matrix matrix_from_json(const Json& j, const std::string& where) {
  using namespace detail;
  const long long rows = as_int(field(j, "rows", where), where + "/rows");
  const long long cols = as_int(field(j, "cols", where), where + "/cols");
  if (rows < 0 || cols < 0) throw ValidationError(where + ": negative shape");
  const Json& data = as_array(field(j, "data", where), where + "/data");
  if (static_cast<long long>(data.size()) != rows * cols) {
    throw ValidationError(where + ": data has " + std::to_string(data.size()) +
                          " entries, expected " + std::to_string(rows * cols));
  }
  Matrix m(rows, cols);
  for (long long r = 0; r < rows; ++r) {
    for (long long c = 0; c < cols; ++c) {
      const auto k = static_cast<std::size_t>(r * cols + c);
      m(r, c) = as_double(data[k], where + "/data/" + std::to_string(k));
    }
  }
  return m;
}

inline Json to_json(const Representation& rep) {
  Json dims = Json::object();
  Json maps = Json::object();
  const Quiver& q = rep.quiver();
  for (std::size_t i = 0; i < q.node_count(); ++i) dims[q.node_id(i)] = rep.dim(i);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) maps[q.arrow(a).id] = to_json(rep.map(a));
  return {{"dims", dims}, {"maps", maps}};
}

inline Representation representation_from_json(const Quiver& q, const Json& j) {
  using namespace detail;
  std::map<std::string, Eigen::Index> dims;
  for (const auto& [id, d] : as_object(field(j, "dims", "rep"), "rep/dims").items()) {
    if (!q.find_node(id)) throw ValidationError("rep/dims: unknown node '" + id + "'");
    dims[id] = static_cast<Eigen::Index>(as_int(d, "rep/dims/" + id));
  }
  std::map<std::string, Matrix> maps;
  for (const auto& [id, m] : as_object(field(j, "maps", "rep"), "rep/maps").items()) {
    if (!q.find_arrow(id)) throw ValidationError("rep/maps: unknown arrow '" + id + "'");
    maps[id] = matrix_from_json(m, "rep/maps/" + id);
  }
  return Representation(q, dims, maps);
}

inline Json to_json(const QuiverSignal& x) {
  Json blocks = Json::object();
  const Quiver& q = x.quiver();
  for (std::size_t i = 0; i < q.node_count(); ++i) {
    const Vector& b = x.block(i);
    blocks[q.node_id(i)] = std::vector<double>(b.data(), b.data() + b.size());
  }
  return {{"blocks", blocks}};
}

inline QuiverSignal signal_from_json(const Representation& rep, const Json& j) {
  using namespace detail;
  const Quiver& q = rep.quiver();
  const Json& jb = as_object(field(j, "blocks", "signal"), "signal/blocks");
  for (const auto& [id, v] : jb.items()) {
    if (!q.find_node(id)) throw ValidationError("signal/blocks: unknown node '" + id + "'");
  }
  std::vector<Vector> blocks;
  for (std::size_t i = 0; i < q.node_count(); ++i) {
    const std::string& id = q.node_id(i);
    const std::string where = "signal/blocks/" + id;
    auto it = jb.find(id);
    if (it == jb.end()) throw ValidationError("signal/blocks: missing block for node '" + id + "'");
    const Json& arr = as_array(*it, where);
    if (static_cast<Eigen::Index>(arr.size()) != rep.dim(i)) {
      throw ValidationError("signal block at node '" + id + "' has length " +
                            std::to_string(arr.size()) + ", expected " +
                            std::to_string(rep.dim(i)));
    }
    Vector v(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t k = 0; k < arr.size(); ++k) {
      v(static_cast<Eigen::Index>(k)) = as_double(arr[k], where + "/" + std::to_string(k));
    }
    blocks.push_back(std::move(v));
  }
  return QuiverSignal(rep, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Paths and filters
// ---------------------------------------------------------------------------

inline Json to_json(const Path& p) {
  Json j = {{"path", p.arrow_ids()}};
  if (p.is_trivial()) j["base"] = p.quiver().node_id(p.tail());
  return j;
}

inline Path path_from_json(const Quiver& q, const Json& j, const std::string& where) {
  using namespace detail;
  const Json& arr = as_array(field(j, "path", where), where + "/path");
  std::vector<std::string> ids;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string id = as_string(arr[k], where + "/path/" + std::to_string(k));
    if (!q.find_arrow(id)) {
      throw ValidationError(where + ": path references arrow '" + id +
                            "' which is not in the quiver");
    }
    ids.push_back(id);
  }
  if (ids.empty()) {
    const std::string base = as_string(field(j, "base", where), where + "/base");
    if (!q.find_node(base)) {
      throw ValidationError(where + ": base node '" + base + "' is not in the quiver");
    }
    return Path::trivial(q, base);
  }
  try {
    Path p = Path::from_ids(q, ids);
    if (j.contains("base") && as_string(j["base"], where + "/base") != q.node_id(p.tail())) {
      throw ValidationError("base does not match the tail of the path");
    }
    return p;
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

inline Json to_json(const FilterElement& c) {
  Json terms = Json::array();
  for (const auto& [p, coeff] : c.terms()) {
    Json t = to_json(p);
    t["coeff"] = coeff;
    terms.push_back(std::move(t));
  }
  return {{"terms", terms}};
}

inline FilterElement filter_from_json(const Quiver& q, const Json& j) {
  using namespace detail;
  const Json& terms = as_array(field(j, "terms", "filter"), "filter/terms");
  FilterElement c(q);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string where = "filter/terms/" + std::to_string(k);
    const double coeff = as_double(field(terms[k], "coeff", where), where + "/coeff");
    c.add_term(path_from_json(q, terms[k], where), coeff);
  }
  c.normalize();
  return c;
}

// ---------------------------------------------------------------------------
// Filtered complexes
// ---------------------------------------------------------------------------

inline Json to_json(const FilteredComplex& c) {
  Json simplices = Json::array();
  for (const auto& s : c.simplices()) {
    simplices.push_back({{"verts", s.verts}, {"level", s.level}});
  }
  return {{"n", c.n()}, {"simplices", simplices}};
}

inline FilteredComplex complex_from_json(const Json& j) {
  using namespace detail;
  std::optional<std::size_t> n;
  if (j.is_object() && j.contains("n")) {
    const long long v = as_int(j["n"], "complex/n");
    if (v < 0) throw ValidationError("complex/n: must be nonnegative");
    n = static_cast<std::size_t>(v);
  }
  std::vector<Simplex> simplices;
  const Json& arr = as_array(field(j, "simplices", "complex"), "complex/simplices");
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string where = "complex/simplices/" + std::to_string(k);
    Simplex s;
    const Json& verts = as_array(field(arr[k], "verts", where), where + "/verts");
    for (std::size_t v = 0; v < verts.size(); ++v) {
      s.verts.push_back(as_string(verts[v], where + "/verts/" + std::to_string(v)));
    }
    const long long level = as_int(field(arr[k], "level", where), where + "/level");
    if (level < 0) throw ValidationError(where + "/level: must be nonnegative");
    s.level = static_cast<std::size_t>(level);
    simplices.push_back(std::move(s));
  }
  return FilteredComplex(std::move(simplices), n);
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

/// Bars sorted by (a, b).
inline Json to_json(const IntervalBarcode& bc) {
  Json bars = Json::array();
  for (const auto& [iv, m] : bc.bars) bars.push_back({{"a", iv.a}, {"b", iv.b}, {"mult", m}});
  return {{"n", bc.n}, {"bars", bars}};
}

inline Json to_json(const Quiver& q, const Intertwiner& t) {
  Json blocks = Json::object();
  for (std::size_t i = 0; i < t.blocks.size(); ++i) blocks[q.node_id(i)] = to_json(t.blocks[i]);
  return {{"blocks", blocks}};
}

inline Json to_json(const SummandList& list) {
  Json summands = Json::array();
  for (const auto& s : list.summands) {
    const Quiver& q = s.rep.quiver();
    Json basis = Json::object();
    for (std::size_t i = 0; i < s.basis.size(); ++i) basis[q.node_id(i)] = to_json(s.basis[i]);
    summands.push_back({{"rep", to_json(s.rep)}, {"basis", basis}, {"unsplit", s.unsplit}});
  }
  Json j = {{"summands", summands}};
  if (list.verified) j["verified"] = *list.verified;
  return j;
}

inline Json to_json(const Quiver& q, const FourierDecomposition& f) {
  Json mult = Json::object();
  Json comps = Json::object();
  for (std::size_t i = 0; i < f.multiplicities.size(); ++i) {
    mult[q.node_id(i)] = f.multiplicities[i];
    const Vector& v = f.components[i];
    comps[q.node_id(i)] = std::vector<double>(v.data(), v.data() + v.size());
  }
  return {{"multiplicities", mult}, {"components", comps}};
}

inline Json to_json(const ShiftMatrix& s, const Quiver& q) {
  Json offsets = Json::object();
  for (std::size_t i = 0; i < q.node_count(); ++i) offsets[q.node_id(i)] = s.offsets[i];
  Json j = to_json(s.matrix);
  j["offsets"] = offsets;
  return j;
}

// ---------------------------------------------------------------------------
// Workspaces
// ---------------------------------------------------------------------------

/// Artifact files to load together. Later artifacts are validated against
/// earlier ones: the representation against the quiver, signals against the
/// representation, filters against the quiver.
struct WorkspaceFiles {
  std::optional<std::string> quiver;
  std::optional<std::string> rep;
  std::vector<std::string> signals;
  std::vector<std::string> filters;
  std::vector<std::string> complexes;
};

struct Workspace {
  std::optional<Quiver> quiver;
  std::optional<Representation> rep;
  std::vector<QuiverSignal> signals;
  std::vector<FilterElement> filters;
  std::vector<FilteredComplex> complexes;
};

inline Workspace load_workspace(const WorkspaceFiles& files) {
  Workspace ws;
  auto need_quiver = [&](const std::string& what) -> const Quiver& {
    if (!ws.quiver) throw ValidationError(what + " requires a quiver (-q)");
    return *ws.quiver;
  };
  auto with_file = [](const std::string& path, auto&& load) {
    try {
      return load(read_json_file(path));
    } catch (const ValidationError& e) {
      const std::string msg = e.what();
      if (msg.rfind(path, 0) == 0) throw;
      throw ValidationError(path + ": " + msg);
    }
  };
  if (files.quiver) {
    ws.quiver = with_file(*files.quiver, [](const Json& j) { return quiver_from_json(j); });
  }
  if (files.rep) {
    const Quiver& q = need_quiver("a representation");
    ws.rep = with_file(*files.rep, [&](const Json& j) { return representation_from_json(q, j); });
  }
  for (const auto& path : files.signals) {
    if (!ws.rep) throw ValidationError("a signal requires a representation (-r)");
    ws.signals.push_back(with_file(path, [&](const Json& j) { return signal_from_json(*ws.rep, j); }));
  }
  for (const auto& path : files.filters) {
    const Quiver& q = need_quiver("a filter");
    ws.filters.push_back(with_file(path, [&](const Json& j) { return filter_from_json(q, j); }));
  }
  for (const auto& path : files.complexes) {
    ws.complexes.push_back(with_file(path, [](const Json& j) { return complex_from_json(j); }));
  }
  return ws;
}

}  // namespace quiversp
