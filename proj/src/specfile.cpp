#include "u2/specfile.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "u2/error.hpp"

namespace u2 {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SyntaxError, where + ": " + what);
}

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

void only_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items())
    if (!ok.count(key)) fail(where + "/" + key, "unknown key");
}

const Json& require(const Json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing key \"") + key + "\"");
  return *it;
}

std::size_t as_index(const Json& j, const std::string& where, std::size_t dim) {
  if (!j.is_number_unsigned()) fail(where, "expected a non-negative integer");
  const auto v = j.get<std::uint64_t>();
  if (v >= dim) throw Error(ErrorCode::IndexOutOfRange, where + ": index " + std::to_string(v) + " >= dim " + std::to_string(dim));
  return static_cast<std::size_t>(v);
}

FieldDescriptor parse_field(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const Json& kind = require(j, where, "kind");
  if (kind == "ratfunc2") {
    only_keys(j, where, {"kind"});
    return FieldDescriptor::ratfunc2();
  }
  if (kind != "gf2k") fail(where + "/kind", "expected \"gf2k\" or \"ratfunc2\"");
  only_keys(j, where, {"kind", "k", "modulus"});
  const Json& k = require(j, where, "k");
  if (!k.is_number_unsigned() || k.get<std::uint64_t>() < 1 || k.get<std::uint64_t>() > 62)
    fail(where + "/k", "expected an integer in 1..62");
  const int deg = k.get<int>();
  const Json& bits = require(j, where, "modulus");
  if (!bits.is_array() || bits.size() != static_cast<std::size_t>(deg) + 1)
    fail(where + "/modulus", "expected k+1 coefficient bits, low to high");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i].is_number_unsigned() || bits[i].get<std::uint64_t>() > 1)
      fail(where + "/modulus/" + std::to_string(i), "expected 0 or 1");
    if (bits[i].get<std::uint64_t>() == 1) m |= std::uint64_t{1} << i;
  }
  return FieldDescriptor::gf2k(deg, m);
}

Vec parse_coords(const Json& j, const std::string& where, const Field& f, std::size_t dim) {
  if (!j.is_object()) fail(where, "expected a coordinate map");
  Vec v = zero_vec(dim);
  for (const auto& [key, value] : j.items()) {
    std::size_t idx = 0;
    std::size_t used = 0;
    try {
      idx = std::stoul(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != key.size() || key.front() == '-') fail(where + "/" + key, "coordinate keys are basis indices");
    if (idx >= dim)
      throw Error(ErrorCode::IndexOutOfRange, where + "/" + key + ": index " + key + " >= dim " + std::to_string(dim));
    if (!value.is_string()) fail(where + "/" + key, "scalars are strings");
    try {
      v[idx] = f.parse(value.get<std::string>());
    } catch (const Error& e) {
      fail(where + "/" + key, e.what());
    }
  }
  return v;
}

Json coords_json(const Field& f, const Vec& v) {
  Json out = Json::object();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out[std::to_string(i)] = f.format(v[i]);
  return out;
}

Json field_json(const FieldDescriptor& d) {
  Json out;
  if (d.kind == FieldKind::RatFunc2) {
    out["kind"] = "ratfunc2";
    return out;
  }
  out["kind"] = "gf2k";
  out["k"] = d.k;
  Json bits = Json::array();
  for (int i = 0; i <= d.k; ++i) bits.push_back((d.modulus >> i) & 1u);
  out["modulus"] = bits;
  return out;
}

Json base_json(const LieAlgebra& l, bool restricted) {
  Json out;
  out["format"] = kSpecFormatVersion;
  out["field"] = field_json(l.field().descriptor());
  out["restricted"] = restricted;
  out["dim"] = l.dim();
  out["names"] = l.names();
  Json br = Json::array();
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i + 1; j < l.dim(); ++j) {
      const Vec& v = l.bracket_basis(i, j);
      if (is_zero(v)) continue;
      Json e;
      e["i"] = i;
      e["j"] = j;
      e["value"] = coords_json(l.field(), v);
      br.push_back(std::move(e));
    }
  out["brackets"] = std::move(br);
  return out;
}

}  // namespace

AlgebraSpec parse_spec(std::string_view text, const SpecOptions& opt) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw Error(ErrorCode::SyntaxError, line_col(text, byte) + ": malformed JSON");
  }
  only_keys(doc, "/", {"format", "field", "restricted", "dim", "names", "brackets", "pmap"});
  const Json& fmt = require(doc, "/", "format");
  if (!fmt.is_number_integer() || fmt.get<int>() != kSpecFormatVersion)
    fail("/format", "unsupported format version");
  const Field f(parse_field(require(doc, "/", "field"), "/field"));
  const Json& restricted = require(doc, "/", "restricted");
  if (!restricted.is_boolean()) fail("/restricted", "expected true or false");
  const Json& dim_j = require(doc, "/", "dim");
  if (!dim_j.is_number_unsigned() || dim_j.get<std::uint64_t>() > 64) fail("/dim", "expected an integer in 0..64");
  const auto n = dim_j.get<std::size_t>();

  std::vector<std::string> names;
  if (auto it = doc.find("names"); it != doc.end()) {
    if (!it->is_array() || it->size() != n) fail("/names", "expected dim strings");
    for (std::size_t i = 0; i < n; ++i) {
      if (!(*it)[i].is_string()) fail("/names/" + std::to_string(i), "expected a string");
      names.push_back((*it)[i].get<std::string>());
    }
  }

  AlgebraSpec spec;
  spec.restricted = restricted.get<bool>();
  RestrictedLieAlgebra l(f, n, names);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  const Json& br = require(doc, "/", "brackets");
  if (!br.is_array()) fail("/brackets", "expected an array");
  for (std::size_t k = 0; k < br.size(); ++k) {
    const std::string where = "/brackets/" + std::to_string(k);
    only_keys(br[k], where, {"i", "j", "value"});
    const std::size_t i = as_index(require(br[k], where, "i"), where + "/i", n);
    const std::size_t j = as_index(require(br[k], where, "j"), where + "/j", n);
    if (i == j) fail(where, "[b_i, b_i] is zero and may not be listed");
    if (!seen.emplace(std::min(i, j), std::max(i, j)).second) fail(where, "pair listed twice");
    l.set_bracket(i, j, parse_coords(require(br[k], where, "value"), where + "/value", f, n));
  }

  const auto pm = doc.find("pmap");
  if (spec.restricted) {
    if (pm == doc.end()) fail("/", "restricted algebra without a \"pmap\" block");
    if (!pm->is_array() || pm->size() != n) fail("/pmap", "expected dim coordinate maps");
    for (std::size_t i = 0; i < n; ++i)
      l.set_pmap(i, parse_coords((*pm)[i], "/pmap/" + std::to_string(i), f, n));
  } else if (pm != doc.end()) {
    fail("/pmap", "ordinary algebra with a \"pmap\" block");
  }

  if (opt.check_axioms) {
    const AxiomReport rep = spec.restricted ? l.check_axioms() : l.check_lie_axioms();
    if (!rep.ok()) throw Error(ErrorCode::AxiomViolation, rep.to_string());
  }
  spec.algebra = std::move(l);
  return spec;
}

AlgebraSpec parse_spec_file(const std::filesystem::path& path, const SpecOptions& opt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SyntaxError, path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), opt);
}

std::string serialize_spec(const RestrictedLieAlgebra& l) {
  Json out = base_json(l, true);
  Json pm = Json::array();
  for (std::size_t i = 0; i < l.dim(); ++i) pm.push_back(coords_json(l.field(), l.pmap(i)));
  out["pmap"] = std::move(pm);
  return out.dump(2) + "\n";
}

std::string serialize_ordinary_spec(const LieAlgebra& l) { return base_json(l, false).dump(2) + "\n"; }

std::string serialize_spec(const AlgebraSpec& s) {
  return s.restricted ? serialize_spec(s.algebra) : serialize_ordinary_spec(s.lie());
}

}  // namespace u2
