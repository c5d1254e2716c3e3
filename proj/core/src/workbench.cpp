#include "scw/workbench.hpp"

#include <cctype>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "scw/lefschetz.hpp"

namespace scw {

using Json = nlohmann::ordered_json;

const DivisorClass* SurfaceEntry::named(std::string_view name) const {
  for (const auto& c : classes) {
    if (c.name == name) return &c.cls;
  }
  return nullptr;
}

const SurfaceEntry* WorkbenchFile::surface(std::string_view id) const {
  for (const auto& s : surfaces) {
    if (s.surface->id == id) return &s;
  }
  return nullptr;
}

const CoverEntry* WorkbenchFile::cover(std::string_view id) const {
  for (const auto& c : covers) {
    if (c.spec.id == id) return &c;
  }
  return nullptr;
}

namespace {

std::string child(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

const Json& member(const Json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw InputError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(path, std::string("missing field '") + key + "'");
  return *it;
}

const Json* optional_member(const Json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path, "expected a string");
  return j.get<std::string>();
}

std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path, "expected an integer");
  return j.get<std::int64_t>();
}

// strings stay as they are; numbers and booleans are printed
std::string as_scalar_text(const Json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer() || j.is_boolean()) return j.dump();
  throw InputError(path, "expected a string or integer");
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array");
  return j;
}

Residues as_residues(const Json& j, const std::string& path, std::size_t arity) {
  as_array(j, path);
  if (j.size() != arity)
    throw InputError(path, "expected " + std::to_string(arity) + " residues, got " + std::to_string(j.size()));
  Residues r;
  for (std::size_t i = 0; i < j.size(); ++i) r.push_back(as_int(j[i], child(path, i)));
  return r;
}

Rational as_coefficient(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw InputError(path, e.what());
    }
  }
  throw InputError(path, "coefficients are integers or \"p/q\" strings");
}

DivisorClass class_from_object(const Json& j, const LatticePtr& lattice, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected a {symbol: coefficient} object");
  DivisorClass d(lattice);
  for (const auto& [symbol, value] : j.items()) {
    auto idx = lattice->index_of(symbol);
    if (!idx) throw InputError(child(path, symbol), "unknown basis symbol '" + symbol + "'");
    d.set(*idx, d[*idx] + as_coefficient(value, child(path, symbol)));
  }
  return d;
}

Json class_to_json(const DivisorClass& d) {
  Json j = Json::object();
  const auto& names = d.lattice()->names();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    if (is_integral(d[i]) && d[i].get_num().fits_slong_p()) j[names[i]] = Json::number_integer_t(d[i].get_num().get_si());
    else j[names[i]] = to_string(d[i]);
  }
  return j;
}

Json residues_to_json(const Residues& r) {
  Json j = Json::array();
  for (auto v : r) j.push_back(v);
  return j;
}

ConstructionStep parse_step(const Json& j, const std::string& path) {
  const std::string op = as_string(member(j, path, "op"), child(path, "op"));
  auto field = [&](const char* key) { return as_string(member(j, path, key), child(path, key)); };
  if (op == "free_point") return FreePoint{field("id")};
  if (op == "free_line") return FreeLine{field("id")};
  if (op == "line_through") return LineThrough{field("id"), field("p"), field("q")};
  if (op == "point_on_line") return PointOnLine{field("id"), field("line")};
  if (op == "intersection") return IntersectionPoint{field("id"), field("l1"), field("l2")};
  throw InputError(child(path, "op"), "unknown construction step '" + op + "'");
}

Json step_to_json(const ConstructionStep& step) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FreePoint>) return {{"op", "free_point"}, {"id", s.id}};
        else if constexpr (std::is_same_v<T, FreeLine>) return {{"op", "free_line"}, {"id", s.id}};
        else if constexpr (std::is_same_v<T, LineThrough>)
          return {{"op", "line_through"}, {"id", s.id}, {"p", s.p}, {"q", s.q}};
        else if constexpr (std::is_same_v<T, PointOnLine>)
          return {{"op", "point_on_line"}, {"id", s.id}, {"line", s.line}};
        else return {{"op", "intersection"}, {"id", s.id}, {"l1", s.l1}, {"l2", s.l2}};
      },
      step);
}

SurfaceEntry parse_surface(const Json& j, const std::string& path) {
  const std::string id = as_string(member(j, path, "id"), child(path, "id"));
  ConstructionScript script;
  const Json& steps = as_array(member(j, path, "script"), child(path, "script"));
  for (std::size_t i = 0; i < steps.size(); ++i) script.push_back(parse_step(steps[i], child(child(path, "script"), i)));
  std::vector<BlownUpPoint> blowups;
  const Json& bl = as_array(member(j, path, "blowups"), child(path, "blowups"));
  for (std::size_t i = 0; i < bl.size(); ++i) {
    const std::string p = child(child(path, "blowups"), i);
    blowups.push_back({as_string(member(bl[i], p, "point"), child(p, "point")),
                       as_string(member(bl[i], p, "symbol"), child(p, "symbol"))});
  }
  SurfaceEntry entry;
  try {
    entry.surface = std::make_shared<const BlowupSurface>(build_surface(id, std::move(script), std::move(blowups)));
  } catch (const ScriptError& e) {
    throw InputError(path, e.what());
  }
  if (const Json* classes = optional_member(j, "classes")) {
    const std::string cpath = child(path, "classes");
    if (!classes->is_object()) throw InputError(cpath, "expected an object of named classes");
    for (const auto& [name, value] : classes->items()) {
      if (entry.named(name)) throw InputError(child(cpath, name), "class '" + name + "' defined twice");
      entry.classes.push_back({name, class_from_object(value, entry.surface->lattice, child(cpath, name))});
    }
  }
  return entry;
}

std::vector<std::string> name_list(const Json& j, const std::string& path) {
  as_array(j, path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], child(path, i)));
  return out;
}

CoverEntry parse_cover(const Json& j, const std::string& path, const WorkbenchFile& file) {
  CoverEntry entry;
  entry.spec.id = as_string(member(j, path, "id"), child(path, "id"));
  entry.surface = as_string(member(j, path, "surface"), child(path, "surface"));
  const SurfaceEntry* surface = file.surface(entry.surface);
  if (!surface) throw InputError(child(path, "surface"), "unknown surface '" + entry.surface + "'");
  entry.spec.base = surface->surface;

  const Json& orders = as_array(member(j, path, "group"), child(path, "group"));
  std::vector<std::int64_t> ords;
  for (std::size_t i = 0; i < orders.size(); ++i) ords.push_back(as_int(orders[i], child(child(path, "group"), i)));
  try {
    entry.spec.group = FiniteAbelianGroup(ords);
  } catch (const GroupError& e) {
    throw InputError(child(path, "group"), e.what());
  }
  const std::size_t arity = ords.size();

  const Json& chars = member(j, path, "characters");
  const std::string chpath = child(path, "characters");
  if (!chars.is_object()) throw InputError(chpath, "expected an object of named characters");
  for (const auto& [name, value] : chars.items()) {
    entry.spec.characters.push_back({name, as_residues(value, child(chpath, name), arity)});
  }

  const Json& branch = as_array(member(j, path, "branch"), child(path, "branch"));
  for (std::size_t i = 0; i < branch.size(); ++i) {
    const std::string bp = child(child(path, "branch"), i);
    const Json& b = branch[i];
    BranchComponent comp;
    comp.name = as_string(member(b, bp, "name"), child(bp, "name"));
    const Json& cls = member(b, bp, "class");
    std::string ref;
    if (cls.is_string()) {
      ref = cls.get<std::string>();
      const DivisorClass* named = surface->named(ref);
      if (!named) throw InputError(child(bp, "class"), "unknown class '" + ref + "'");
      comp.cls = *named;
    } else {
      comp.cls = class_from_object(cls, surface->surface->lattice, child(bp, "class"));
    }
    comp.pair.generator = as_residues(member(b, bp, "generator"), child(bp, "generator"), arity);
    if (const Json* e = optional_member(b, "exponent")) comp.pair.exponent = as_int(*e, child(bp, "exponent"));
    if (const Json* n = optional_member(b, "components")) comp.asserted_components = as_int(*n, child(bp, "components"));
    entry.spec.branch.push_back(std::move(comp));
    entry.class_refs.push_back(ref);
  }

  if (const Json* ls = optional_member(j, "L")) {
    const std::string lpath = child(path, "L");
    if (!ls->is_object()) throw InputError(lpath, "expected an object keyed by character name");
    for (const auto& [name, value] : ls->items()) {
      if (!entry.spec.character(name)) throw InputError(child(lpath, name), "unknown character '" + name + "'");
      entry.spec.reduced_L.emplace(name, class_from_object(value, surface->surface->lattice, child(lpath, name)));
    }
  }
  if (const Json* m = optional_member(j, "canonical_multiplier"))
    entry.spec.canonical_multiplier = as_int(*m, child(path, "canonical_multiplier"));

  if (const Json* plan = optional_member(j, "contraction")) {
    const std::string pp = child(path, "contraction");
    ContractionPlan p;
    auto read = [&](const char* key, std::vector<std::string>& out, bool branch_names) {
      if (!plan->is_object()) throw InputError(pp, "expected an object");
      const Json* v = optional_member(*plan, key);
      if (!v) return;
      out = name_list(*v, child(pp, key));
      for (std::size_t i = 0; i < out.size(); ++i) {
        const bool ok = branch_names ? entry.spec.component(out[i]) != nullptr : surface->named(out[i]) != nullptr;
        if (!ok) throw InputError(child(child(pp, key), i), "unknown curve '" + out[i] + "'");
      }
    };
    read("simple", p.simple, true);
    read("node_threading", p.node_threading, true);
    read("base_contracted", p.base_contracted, false);
    entry.plan = std::move(p);
  }
  return entry;
}

CheckRequest parse_check(const Json& j, const std::string& path, const WorkbenchFile& file) {
  CheckRequest c;
  c.name = as_string(member(j, path, "name"), child(path, "name"));
  c.kind = as_string(member(j, path, "kind"), child(path, "kind"));
  try {
    suite_of_kind(c.kind);
  } catch (const InputError& e) {
    throw InputError(child(path, "kind"), e.what());
  }
  if (const Json* params = optional_member(j, "params")) {
    const std::string pp = child(path, "params");
    if (!params->is_object()) throw InputError(pp, "expected an object");
    for (const auto& [key, value] : params->items()) c.params[key] = as_scalar_text(value, child(pp, key));
  }
  if (const Json* e = optional_member(j, "expected")) c.expected = as_scalar_text(*e, child(path, "expected"));
  if (const Json* cit = optional_member(j, "citation")) c.citation = as_string(*cit, child(path, "citation"));

  if (auto it = c.params.find("surface"); it != c.params.end() && !file.surface(it->second))
    throw InputError(child(child(path, "params"), "surface"), "unknown surface '" + it->second + "'");
  if (auto it = c.params.find("cover"); it != c.params.end() && !file.cover(it->second))
    throw InputError(child(child(path, "params"), "cover"), "unknown cover '" + it->second + "'");
  if (c.kind == "lefschetz") {
    auto it = c.params.find("tag");
    if (it == c.params.end()) throw InputError(child(path, "params"), "missing parameter 'tag'");
    if (!find_named_check(it->second))
      throw InputError(child(child(path, "params"), "tag"), "unknown check tag '" + it->second + "'");
  }
  return c;
}

}  // namespace

WorkbenchFile parse_workbench(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("", std::string("invalid JSON: ") + e.what());
  }
  WorkbenchFile file;
  if (!root.is_object()) throw InputError("", "top level must be an object");
  file.version = static_cast<int>(as_int(member(root, "", "version"), "/version"));
  if (file.version != kWorkbenchVersion)
    throw InputError("/version", "unsupported version " + std::to_string(file.version));

  std::set<std::string> ids;
  if (const Json* surfaces = optional_member(root, "surfaces")) {
    as_array(*surfaces, "/surfaces");
    for (std::size_t i = 0; i < surfaces->size(); ++i) {
      file.surfaces.push_back(parse_surface((*surfaces)[i], child("/surfaces", i)));
      if (!ids.insert("s:" + file.surfaces.back().surface->id).second)
        throw InputError(child("/surfaces", i), "duplicate surface id '" + file.surfaces.back().surface->id + "'");
    }
  }
  if (const Json* covers = optional_member(root, "covers")) {
    as_array(*covers, "/covers");
    for (std::size_t i = 0; i < covers->size(); ++i) {
      file.covers.push_back(parse_cover((*covers)[i], child("/covers", i), file));
      if (!ids.insert("c:" + file.covers.back().spec.id).second)
        throw InputError(child("/covers", i), "duplicate cover id '" + file.covers.back().spec.id + "'");
    }
  }
  if (const Json* checks = optional_member(root, "checks")) {
    as_array(*checks, "/checks");
    for (std::size_t i = 0; i < checks->size(); ++i) {
      file.checks.push_back(parse_check((*checks)[i], child("/checks", i), file));
      if (!ids.insert("k:" + file.checks.back().name).second)
        throw InputError(child("/checks", i), "duplicate check name '" + file.checks.back().name + "'");
    }
  }
  return file;
}

WorkbenchFile parse_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("", "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_workbench(buf.str());
}

std::string serialize(const WorkbenchFile& file) {
  Json root;
  root["version"] = file.version;
  root["surfaces"] = Json::array();
  for (const auto& s : file.surfaces) {
    Json js;
    js["id"] = s.surface->id;
    js["script"] = Json::array();
    for (const auto& step : s.surface->script) js["script"].push_back(step_to_json(step));
    js["blowups"] = Json::array();
    for (const auto& b : s.surface->blowups) js["blowups"].push_back({{"point", b.point}, {"symbol", b.symbol}});
    js["classes"] = Json::object();
    for (const auto& c : s.classes) js["classes"][c.name] = class_to_json(c.cls);
    root["surfaces"].push_back(std::move(js));
  }
  root["covers"] = Json::array();
  for (const auto& c : file.covers) {
    Json jc;
    jc["id"] = c.spec.id;
    jc["surface"] = c.surface;
    jc["group"] = Json::array();
    for (auto o : c.spec.group.orders()) jc["group"].push_back(o);
    jc["characters"] = Json::object();
    for (const auto& ch : c.spec.characters) jc["characters"][ch.name] = residues_to_json(ch.residues);
    jc["branch"] = Json::array();
    for (std::size_t i = 0; i < c.spec.branch.size(); ++i) {
      const auto& b = c.spec.branch[i];
      Json jb;
      jb["name"] = b.name;
      if (i < c.class_refs.size() && !c.class_refs[i].empty()) jb["class"] = c.class_refs[i];
      else jb["class"] = class_to_json(b.cls);
      jb["generator"] = residues_to_json(b.pair.generator);
      jb["exponent"] = b.pair.exponent;
      jb["components"] = b.asserted_components;
      jc["branch"].push_back(std::move(jb));
    }
    if (!c.spec.reduced_L.empty()) {
      jc["L"] = Json::object();
      // character order, not map order, so files keep their layout
      for (const auto& ch : c.spec.characters) {
        auto it = c.spec.reduced_L.find(ch.name);
        if (it != c.spec.reduced_L.end()) jc["L"][ch.name] = class_to_json(it->second);
      }
    }
    if (c.spec.canonical_multiplier != 0) jc["canonical_multiplier"] = c.spec.canonical_multiplier;
    if (c.plan) {
      jc["contraction"] = {{"simple", c.plan->simple},
                           {"node_threading", c.plan->node_threading},
                           {"base_contracted", c.plan->base_contracted}};
    }
    root["covers"].push_back(std::move(jc));
  }
  root["checks"] = Json::array();
  for (const auto& k : file.checks) {
    Json jk;
    jk["name"] = k.name;
    jk["kind"] = k.kind;
    jk["params"] = Json::object();
    for (const auto& [key, value] : k.params) jk["params"][key] = value;
    jk["expected"] = k.expected;
    if (!k.citation.empty()) jk["citation"] = k.citation;
    root["checks"].push_back(std::move(jk));
  }
  return root.dump(2) + "\n";
}

namespace {

bool same_classes(const std::vector<NamedClass>& a, const std::vector<NamedClass>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || !(a[i].cls.coefficients() == b[i].cls.coefficients())) return false;
  }
  return true;
}

bool same_plan(const std::optional<ContractionPlan>& a, const std::optional<ContractionPlan>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (a->simple == b->simple && a->node_threading == b->node_threading &&
                a->base_contracted == b->base_contracted);
}

bool same_cover(const CoverEntry& a, const CoverEntry& b) {
  if (a.surface != b.surface || a.spec.id != b.spec.id || !(a.spec.group == b.spec.group) ||
      a.spec.canonical_multiplier != b.spec.canonical_multiplier || a.class_refs != b.class_refs ||
      !same_plan(a.plan, b.plan) || a.spec.characters.size() != b.spec.characters.size() ||
      a.spec.branch.size() != b.spec.branch.size() || a.spec.reduced_L.size() != b.spec.reduced_L.size())
    return false;
  for (std::size_t i = 0; i < a.spec.characters.size(); ++i) {
    if (a.spec.characters[i].name != b.spec.characters[i].name ||
        a.spec.characters[i].residues != b.spec.characters[i].residues)
      return false;
  }
  for (std::size_t i = 0; i < a.spec.branch.size(); ++i) {
    const auto &x = a.spec.branch[i], &y = b.spec.branch[i];
    if (x.name != y.name || x.cls.coefficients() != y.cls.coefficients() || x.pair.generator != y.pair.generator ||
        x.pair.exponent != y.pair.exponent || x.asserted_components != y.asserted_components)
      return false;
  }
  for (const auto& [name, cls] : a.spec.reduced_L) {
    auto it = b.spec.reduced_L.find(name);
    if (it == b.spec.reduced_L.end() || it->second.coefficients() != cls.coefficients()) return false;
  }
  return true;
}

}  // namespace

bool equivalent(const WorkbenchFile& a, const WorkbenchFile& b) {
  if (a.version != b.version || a.surfaces.size() != b.surfaces.size() || a.covers.size() != b.covers.size() ||
      a.checks.size() != b.checks.size())
    return false;
  for (std::size_t i = 0; i < a.surfaces.size(); ++i) {
    const auto &x = a.surfaces[i], &y = b.surfaces[i];
    if (x.surface->id != y.surface->id || x.surface->fingerprint() != y.surface->fingerprint() ||
        !same_classes(x.classes, y.classes))
      return false;
  }
  for (std::size_t i = 0; i < a.covers.size(); ++i) {
    if (!same_cover(a.covers[i], b.covers[i])) return false;
  }
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    const auto &x = a.checks[i], &y = b.checks[i];
    if (x.name != y.name || x.kind != y.kind || x.params != y.params || x.expected != y.expected ||
        x.citation != y.citation)
      return false;
  }
  return true;
}

DivisorClass parse_class_expression(std::string_view text, const SurfaceEntry& surface,
                                    const std::map<std::string, DivisorClass>* extra) {
  const LatticePtr& lattice = surface.surface->lattice;
  const std::string s(text);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> DivisorClass {
    throw InputError("", why + " in class expression '" + s + "'");
  };
  auto resolve = [&](const std::string& name) -> DivisorClass {
    if (extra) {
      if (auto it = extra->find(name); it != extra->end()) return it->second;
    }
    if (const DivisorClass* named = surface.named(name)) return *named;
    if (name == "K") return surface.surface->canonical;
    if (lattice->index_of(name)) return DivisorClass::basis(lattice, name);
    return fail("unknown symbol '" + name + "'");
  };

  DivisorClass total(lattice);
  skip();
  if (pos == s.size()) return fail("empty expression");
  bool first = true;
  while (pos < s.size()) {
    Rational sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
      skip();
    } else if (!first) {
      return fail("expected '+' or '-'");
    }
    first = false;
    Rational coeff = 1;
    bool has_coeff = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      std::size_t start = pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
      try {
        coeff = parse_rational(s.substr(start, pos - start));
      } catch (const ParseError&) {
        return fail("bad coefficient '" + s.substr(start, pos - start) + "'");
      }
      has_coeff = true;
      skip();
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        skip();
      }
    }
    if (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
      std::size_t start = pos;
      while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' || s[pos] == '\''))
        ++pos;
      total += sign * coeff * resolve(s.substr(start, pos - start));
    } else if (has_coeff) {
      if (coeff != 0) return fail("constant term");
    } else {
      return fail("expected a term");
    }
    skip();
  }
  return total;
}

DivisorClass parse_class_json(std::string_view json_text, const SurfaceEntry& surface) {
  Json j;
  try {
    j = Json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error&) {
    // bare expressions are accepted too
    return parse_class_expression(json_text, surface);
  }
  if (j.is_string()) return parse_class_expression(j.get<std::string>(), surface);
  return class_from_object(j, surface.surface->lattice, "");
}

Suite parse_suite(std::string_view name) {
  if (name == "lattice") return Suite::Lattice;
  if (name == "surface") return Suite::Surface;
  if (name == "cover") return Suite::Cover;
  if (name == "lefschetz") return Suite::Lefschetz;
  if (name == "all") return Suite::All;
  throw InputError("", "unknown suite '" + std::string(name) + "'");
}

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::Lattice: return "lattice";
    case Suite::Surface: return "surface";
    case Suite::Cover: return "cover";
    case Suite::Lefschetz: return "lefschetz";
    case Suite::All: break;
  }
  return "all";
}

int exit_code(const VerificationReport& report) { return report.any_failed() ? 1 : 0; }

}  // namespace scw
