#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hodge/io/report.hpp"
#include "hodge/io/task.hpp"

namespace hodge {

using Json = nlohmann::ordered_json;

inline constexpr int document_version = 1;

namespace doc {

[[noreturn]] inline void input_error(const std::string& path, const std::string& msg) {
  fail(ErrorCode::Parse, (path.empty() ? "/" : path) + ": " + msg);
}

/// Runs f, prefixing library errors with the document path.
template <class F>
auto at(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    std::string what = e.what();
    if (what.rfind(path + ":", 0) == 0) throw;
    throw Error(e.code(), (path.empty() ? "/" : path) + ": " + what);
  }
}

inline const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) input_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) input_error(path, std::string("missing field \"") + key + "\"");
  return *it;
}

inline const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) input_error(path, "expected an array");
  return j;
}

inline std::int64_t read_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) input_error(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::size_t read_size(const Json& j, const std::string& path) {
  const std::int64_t v = read_int(j, path);
  if (v < 0) input_error(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

inline Rational read_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) input_error(path, "decimal scalars are not allowed, write \"n/d\"");
  if (!j.is_string()) input_error(path, "expected a scalar string \"n/d\"");
  const auto& s = j.get_ref<const std::string&>();
  std::optional<ScalarParseError> err;
  auto q = try_parse_rational(s, err);
  if (!q) input_error(path, "bad rational \"" + s + "\" at offset " + std::to_string(err->position) + ": " + err->message);
  return *q;
}

inline GaussianRational read_gaussian(const Json& j, const std::string& path) {
  if (!j.is_string()) return GaussianRational(read_rational(j, path));
  return at(path, [&] { return parse_gaussian(j.get_ref<const std::string&>()); });
}

inline std::vector<std::int64_t> read_ints(const Json& j, const std::string& path) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(read_int(j[i], path + "/" + std::to_string(i)));
  return out;
}

inline std::vector<std::size_t> read_sizes(const Json& j, const std::string& path) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(read_size(j[i], path + "/" + std::to_string(i)));
  return out;
}

template <class T, class Read>
Vector<T> read_vector(const Json& j, const std::string& path, std::size_t len, Read read) {
  if (array(j, path).size() != len)
    input_error(path, "expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
  Vector<T> v;
  for (std::size_t i = 0; i < len; ++i) v.push_back(read(j[i], path + "/" + std::to_string(i)));
  return v;
}

inline QMatrix read_matrix(const Json& j, const std::string& path, std::size_t rows, std::size_t cols) {
  if (array(j, path).size() != rows)
    input_error(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  QMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto row = read_vector<Rational>(j[r], path + "/" + std::to_string(r), cols, read_rational);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = std::move(row[c]);
  }
  return m;
}

inline QSubspace read_subspace(const Json& j, const std::string& path, std::size_t n) {
  std::vector<QVector> vs;
  for (std::size_t i = 0; i < array(j, path).size(); ++i)
    vs.push_back(read_vector<Rational>(j[i], path + "/" + std::to_string(i), n, read_rational));
  return QSubspace::span(n, vs);
}

inline GSubspace read_gsubspace(const Json& j, const std::string& path, std::size_t n) {
  std::vector<GVector> vs;
  for (std::size_t i = 0; i < array(j, path).size(); ++i)
    vs.push_back(read_vector<GaussianRational>(j[i], path + "/" + std::to_string(i), n, read_gaussian));
  return GSubspace::span(n, vs);
}

inline Filtration read_filtration(const Json& j, const std::string& path, std::size_t n) {
  const Json& steps = array(field(j, "steps", path), path + "/steps");
  std::vector<Filtration::Step> out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string p = path + "/steps/" + std::to_string(i);
    out.push_back({read_rational(field(steps[i], "index", p), p + "/index"),
                   read_subspace(field(steps[i], "basis", p), p + "/basis", n)});
  }
  return at(path, [&] { return Filtration::from_steps(n, std::move(out)); });
}

inline NilpotentOperator read_operator(const Json& j, const std::string& path, std::size_t n) {
  QMatrix m = read_matrix(field(j, "matrix", path), path + "/matrix", n, n);
  return at(path, [&] { return NilpotentOperator(std::move(m)); });
}

inline std::vector<NilpotentOperator> read_operators(const Json& j, const std::string& path, std::size_t n) {
  std::vector<NilpotentOperator> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    const Json& name = field(j[i], "name", p);
    if (!name.is_string()) input_error(p + "/name", "expected a string");
    if (!names.insert(name.get<std::string>()).second) input_error(p + "/name", "duplicate operator name");
    out.push_back(read_operator(j[i], p, n));
  }
  return out;
}

inline std::vector<Filtration> read_filtrations(const Json& j, const std::string& path, std::size_t n) {
  std::vector<Filtration> fs;
  for (std::size_t i = 0; i < array(j, path).size(); ++i)
    fs.push_back(read_filtration(j[i], path + "/" + std::to_string(i), n));
  return fs;
}

inline Json write(const Rational& q) { return format_rational(q); }
inline Json write(const GaussianRational& z) { return format_gaussian(z); }

template <class T>
Json write(const Vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(write(x));
  return a;
}

template <class T>
Json write(const Matrix<T>& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(write(m.row(r)));
  return a;
}

template <class T>
Json write_basis(const Subspace<T>& s) {
  Json a = Json::array();
  for (const auto& v : s.basis_vectors()) a.push_back(write(v));
  return a;
}

inline Json write(const Filtration& f) {
  Json steps = Json::array();
  for (const auto& s : f.steps()) steps.push_back({{"index", write(s.index)}, {"basis", write_basis(s.space)}});
  return {{"steps", steps}};
}

inline Json write_operators(const std::vector<NilpotentOperator>& ns) {
  Json a = Json::array();
  for (std::size_t i = 0; i < ns.size(); ++i)
    a.push_back({{"name", ns.size() == 1 ? std::string("N") : "N" + std::to_string(i + 1)}, {"matrix", write(ns[i].matrix())}});
  return a;
}

inline Json write_ints(const std::vector<std::int64_t>& v) { return Json(v); }

// task payloads

inline Json write_data(const MonodromyTask& t) {
  return {{"dim", t.n.dim()}, {"operator", write_operators({t.n}).at(0)}, {"center", write(t.center)}};
}

inline Json write_data(const RelativeMonodromyTask& t) {
  return {{"dim", t.n.dim()}, {"operator", write_operators({t.n}).at(0)}, {"filtration", write(t.l)}};
}

inline Json write_data(const MfTask& t) {
  return {{"dim", t.ns.empty() ? 0 : t.ns.front().dim()}, {"operators", write_operators(t.ns)}};
}

inline Json write_data(const LefschetzTask& t) {
  Json pieces = Json::array();
  for (const auto& [l, s] : t.g.space.pieces()) pieces.push_back({{"degree", write_ints(l)}, {"basis", write_basis(s)}});
  Json out{{"dim", t.g.dim()},       {"slots", t.g.slots()},          {"center", t.g.center},
           {"pieces", pieces},       {"operators", write_operators(t.g.ns)}, {"form", write(t.g.form)}};
  if (t.hodge) {
    Json hs = Json::array();
    for (const auto& [l, h] : *t.hodge) {
      Json types = Json::array();
      for (const auto& [pq, s] : h.pieces)
        types.push_back({{"type", {pq.first, pq.second}}, {"basis", write_basis(s)}});
      hs.push_back({{"degree", write_ints(l)}, {"weight", h.weight}, {"types", types}});
    }
    out["hodge"] = hs;
  }
  return out;
}

inline Json write_multifiltration(const MultiFiltration& mf) {
  Json fs = Json::array();
  for (const auto& f : mf.filtrations()) fs.push_back(write(f));
  return {{"dim", mf.ambient_dim()}, {"filtrations", fs}};
}

inline Json write_data(const CompatTask& t) { return write_multifiltration(t.mf); }
inline Json write_data(const ReesTask& t) { return write_multifiltration(t.mf); }

inline Json write_module(const ReesModule& r) {
  Json pieces = Json::array(), maps = Json::array();
  for_each_point(r.lo(), r.hi(), [&](const LatticePoint& k) {
    pieces.push_back({{"degree", write_ints(k)}, {"dim", r.piece_dim(k)}});
  });
  for (std::size_t i = 0; i < r.vars(); ++i)
    for_each_point(r.lo(), r.hi(), [&](const LatticePoint& k) {
      if (k[i] == r.hi()[i]) return;
      QMatrix m = r.structure_map(i, k);
      if (m.rows() == 0 || m.cols() == 0) return;
      maps.push_back({{"variable", i}, {"degree", write_ints(k)}, {"matrix", write(m)}});
    });
  return {{"lo", write_ints(r.lo())}, {"hi", write_ints(r.hi())}, {"pieces", pieces}, {"maps", maps}};
}

inline Json write_data(const KoszulTask& t) { return {{"module", write_module(t.module)}, {"sequence", t.sequence}}; }

inline Json write_data(const NilssonTask& t) {
  Json pieces = Json::array();
  for (const auto& [alpha, ns] : t.module.pieces())
    pieces.push_back({{"alpha", write(alpha)}, {"dim", ns.front().dim()}, {"operators", write_operators(ns)}});
  return {{"coordinates", t.module.coordinates()}, {"pieces", pieces}, {"alpha", write(t.alpha)}, {"k", t.k}};
}

inline Json write_data(const VkTask& t) { return {{"k", t.k}}; }

inline MonodromyTask read_monodromy(const Json& d, const std::string& p) {
  const std::size_t n = read_size(field(d, "dim", p), p + "/dim");
  auto op = read_operator(field(d, "operator", p), p + "/operator", n);
  Rational center = d.contains("center") ? read_rational(d["center"], p + "/center") : Rational(0);
  return {std::move(op), center};
}

inline RelativeMonodromyTask read_relmono(const Json& d, const std::string& p) {
  const std::size_t n = read_size(field(d, "dim", p), p + "/dim");
  auto op = read_operator(field(d, "operator", p), p + "/operator", n);
  return {std::move(op), read_filtration(field(d, "filtration", p), p + "/filtration", n)};
}

inline MfTask read_mf(const Json& d, const std::string& p) {
  const std::size_t n = read_size(field(d, "dim", p), p + "/dim");
  auto ops = read_operators(field(d, "operators", p), p + "/operators", n);
  if (ops.empty()) input_error(p + "/operators", "need at least one operator");
  at(p + "/operators", [&] { require_commuting(ops); });
  return {std::move(ops)};
}

inline LefschetzTask read_lefschetz(const Json& d, const std::string& p) {
  const std::size_t n = read_size(field(d, "dim", p), p + "/dim");
  const std::size_t slots = read_size(field(d, "slots", p), p + "/slots");
  const std::int64_t center = d.contains("center") ? read_int(d["center"], p + "/center") : 0;
  std::map<Multidegree, QSubspace> pieces;
  const Json& pj = array(field(d, "pieces", p), p + "/pieces");
  for (std::size_t i = 0; i < pj.size(); ++i) {
    const std::string q = p + "/pieces/" + std::to_string(i);
    Multidegree l = read_ints(field(pj[i], "degree", q), q + "/degree");
    if (l.size() != slots) input_error(q + "/degree", "expected " + std::to_string(slots) + " entries");
    if (!pieces.emplace(l, read_subspace(field(pj[i], "basis", q), q + "/basis", n)).second)
      input_error(q + "/degree", "repeated multidegree");
  }
  GradedSpace space = at(p + "/pieces", [&] { return GradedSpace(n, slots, std::move(pieces)); });
  auto ops = read_operators(field(d, "operators", p), p + "/operators", n);
  QMatrix form = read_matrix(field(d, "form", p), p + "/form", n, n);
  LefschetzTask t{at(p, [&] { return make_structure(std::move(space), std::move(ops), std::move(form), center); }),
                  std::nullopt};
  if (d.contains("hodge")) {
    std::map<Multidegree, RationalHodgeStructure> hs;
    const Json& hj = array(d["hodge"], p + "/hodge");
    for (std::size_t i = 0; i < hj.size(); ++i) {
      const std::string q = p + "/hodge/" + std::to_string(i);
      RationalHodgeStructure h;
      h.weight = read_int(field(hj[i], "weight", q), q + "/weight");
      const Json& types = array(field(hj[i], "types", q), q + "/types");
      for (std::size_t j = 0; j < types.size(); ++j) {
        const std::string r = q + "/types/" + std::to_string(j);
        auto pq = read_ints(field(types[j], "type", r), r + "/type");
        if (pq.size() != 2) input_error(r + "/type", "expected [p, q]");
        h.pieces.emplace(HodgeType{pq[0], pq[1]}, read_gsubspace(field(types[j], "basis", r), r + "/basis", n));
      }
      hs.emplace(read_ints(field(hj[i], "degree", q), q + "/degree"), std::move(h));
    }
    t.hodge = std::move(hs);
  }
  return t;
}

inline MultiFiltration read_multifiltration(const Json& d, const std::string& p) {
  const std::size_t n = read_size(field(d, "dim", p), p + "/dim");
  auto fs = read_filtrations(field(d, "filtrations", p), p + "/filtrations", n);
  return at(p, [&] { return MultiFiltration(n, std::move(fs)); });
}

inline KoszulTask read_koszul(const Json& d, const std::string& p) {
  const Json& m = field(d, "module", p);
  const std::string mp = p + "/module";
  LatticePoint lo = read_ints(field(m, "lo", mp), mp + "/lo");
  LatticePoint hi = read_ints(field(m, "hi", mp), mp + "/hi");
  if (lo.size() != hi.size()) input_error(mp, "lo and hi have different lengths");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) input_error(mp + "/hi", "empty box");
  std::map<LatticePoint, std::size_t> dims;
  const Json& pj = array(field(m, "pieces", mp), mp + "/pieces");
  for (std::size_t i = 0; i < pj.size(); ++i) {
    const std::string q = mp + "/pieces/" + std::to_string(i);
    LatticePoint k = read_ints(field(pj[i], "degree", q), q + "/degree");
    if (k.size() != lo.size()) input_error(q + "/degree", "wrong arity");
    for (std::size_t v = 0; v < k.size(); ++v)
      if (k[v] < lo[v] || k[v] > hi[v]) input_error(q + "/degree", "outside the box");
    dims[k] = read_size(field(pj[i], "dim", q), q + "/dim");
  }
  auto dim_at = [&](const LatticePoint& k) {
    auto it = dims.find(k);
    return it == dims.end() ? std::size_t{0} : it->second;
  };
  std::map<std::pair<std::size_t, LatticePoint>, QMatrix> maps;
  const Json& mj = array(field(m, "maps", mp), mp + "/maps");
  for (std::size_t i = 0; i < mj.size(); ++i) {
    const std::string q = mp + "/maps/" + std::to_string(i);
    const std::size_t var = read_size(field(mj[i], "variable", q), q + "/variable");
    if (var >= lo.size()) input_error(q + "/variable", "no such variable");
    LatticePoint k = read_ints(field(mj[i], "degree", q), q + "/degree");
    if (k.size() != lo.size()) input_error(q + "/degree", "wrong arity");
    for (std::size_t v = 0; v < k.size(); ++v)
      if (k[v] < lo[v] || k[v] > hi[v] || (v == var && k[v] == hi[v])) input_error(q + "/degree", "outside the box");
    LatticePoint k1 = k;
    k1[var] += 1;
    maps[{var, k}] = read_matrix(field(mj[i], "matrix", q), q + "/matrix", dim_at(k1), dim_at(k));
  }
  ReesModule r = at(mp, [&] {
    return ReesModule::build(lo, hi, dim_at, [&](std::size_t var, const LatticePoint& k) {
      auto it = maps.find({var, k});
      if (it != maps.end()) return it->second;
      LatticePoint k1 = k;
      k1[var] += 1;
      return QMatrix(dim_at(k1), dim_at(k));
    });
  });
  std::vector<std::size_t> seq = d.contains("sequence") ? read_sizes(d["sequence"], p + "/sequence")
                                                          : std::vector<std::size_t>{};
  for (auto s : seq)
    if (s >= lo.size()) input_error(p + "/sequence", "no such variable");
  return {std::move(r), std::move(seq)};
}

inline RationalIndex read_index(const Json& j, const std::string& path) {
  RationalIndex out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(read_rational(j[i], path + "/" + std::to_string(i)));
  return out;
}

inline NilssonTask read_nilsson(const Json& d, const std::string& p) {
  const std::size_t coords = read_size(field(d, "coordinates", p), p + "/coordinates");
  MonodromicModule m(coords);
  const Json& pj = array(field(d, "pieces", p), p + "/pieces");
  for (std::size_t i = 0; i < pj.size(); ++i) {
    const std::string q = p + "/pieces/" + std::to_string(i);
    RationalIndex alpha = read_index(field(pj[i], "alpha", q), q + "/alpha");
    const std::size_t n = read_size(field(pj[i], "dim", q), q + "/dim");
    auto ops = read_operators(field(pj[i], "operators", q), q + "/operators", n);
    at(q, [&] { m.add(alpha, std::move(ops)); });
  }
  RationalIndex alpha = read_index(field(d, "alpha", p), p + "/alpha");
  at(p + "/alpha", [&] { m.at(alpha); });
  std::vector<std::size_t> k = read_sizes(field(d, "k", p), p + "/k");
  if (k.size() != coords) input_error(p + "/k", "expected one order per coordinate");
  return {std::move(m), std::move(alpha), std::move(k)};
}

inline VkTask read_vk(const Json& d, const std::string& p) { return {read_size(field(d, "k", p), p + "/k")}; }

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace doc

inline Json to_json(const Task& t) {
  Json j{{"format", "hodgekit-document"}, {"version", document_version}, {"task", task_kind(t.data)}};
  if (!t.label.empty()) j["label"] = t.label;
  j["data"] = std::visit([](const auto& d) { return doc::write_data(d); }, t.data);
  return j;
}

inline std::string serialize(const Task& t) { return pretty_json(to_json(t)) + "\n"; }

inline Task from_json(const Json& j) {
  using namespace doc;
  const Json& fmt = field(j, "format", "");
  if (fmt != "hodgekit-document") input_error("/format", "expected \"hodgekit-document\"");
  if (read_int(field(j, "version", ""), "/version") != document_version)
    input_error("/version", "unsupported version (expected " + std::to_string(document_version) + ")");
  const Json& kind = field(j, "task", "");
  if (!kind.is_string()) input_error("/task", "expected a string");
  Task t;
  if (j.contains("label")) {
    if (!j["label"].is_string()) input_error("/label", "expected a string");
    t.label = j["label"].get<std::string>();
  }
  const Json& d = field(j, "data", "");
  const std::string k = kind.get<std::string>();
  if (k == "monodromy") t.data = read_monodromy(d, "/data");
  else if (k == "relmono") t.data = read_relmono(d, "/data");
  else if (k == "mf") t.data = read_mf(d, "/data");
  else if (k == "lefschetz") t.data = read_lefschetz(d, "/data");
  else if (k == "compat") t.data = CompatTask{read_multifiltration(d, "/data")};
  else if (k == "koszul") t.data = read_koszul(d, "/data");
  else if (k == "rees") t.data = ReesTask{read_multifiltration(d, "/data")};
  else if (k == "nilsson") t.data = read_nilsson(d, "/data");
  else if (k == "vk") t.data = read_vk(d, "/data");
  else input_error("/task", "unknown task \"" + k + "\"");
  return t;
}

/// Parses one document; syntax errors carry line and column, value errors
/// the JSON path of the offending entry.
inline Task parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    auto [line, col] = doc::line_column(text, e.byte);
    std::string msg = e.what();
    if (auto pos = msg.find(": "); pos != std::string::npos) msg = msg.substr(pos + 2);
    fail(ErrorCode::Parse, "syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
  return from_json(j);
}

}  // namespace hodge
