#include <algorithm>
#include <set>
#include <sstream>

#include "scw/lefschetz.hpp"
#include "scw/workbench.hpp"

namespace scw {

namespace {

const std::string kRelationsCitation = "building-data";

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

const std::string& param(const CheckRequest& c, const std::string& key) {
  auto it = c.params.find(key);
  if (it == c.params.end()) throw InputError("", "check '" + c.name + "' is missing parameter '" + key + "'");
  return it->second;
}

std::optional<std::string> optional_param(const CheckRequest& c, const std::string& key) {
  auto it = c.params.find(key);
  if (it == c.params.end()) return std::nullopt;
  return it->second;
}

Rational expected_rational(const CheckRequest& c) {
  try {
    return parse_rational(c.expected);
  } catch (const ParseError&) {
    throw InputError("", "check '" + c.name + "' expects a number, got '" + c.expected + "'");
  }
}

// Set equality of ';'- or ','-separated items, ignoring order and spacing.
bool same_items(const std::string& a, const std::string& b, char sep) {
  auto x = split(a, sep), y = split(b, sep);
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

std::string subgroup_generator(const FiniteAbelianGroup& g, const Subgroup& s) {
  const Residues* best = nullptr;
  std::int64_t best_order = 0;
  for (const auto& x : s) {
    const std::int64_t o = g.element_order(x);
    if (o > best_order) {
      best_order = o;
      best = &x;
    }
  }
  if (best && static_cast<std::size_t>(best_order) == s.size()) return "<" + format_residues(*best) + ">";
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : " ") + format_residues(x);
  return "{" + out + "}";
}

class Runner {
 public:
  Runner(const WorkbenchFile& file, InterpolationOracle& oracle) : file_(file), oracle_(oracle) {}

  VerificationReport run(Suite suite) {
    if (suite == Suite::Cover || suite == Suite::All) {
      for (const auto& c : file_.covers) state(c);
    }
    for (const auto& check : file_.checks) {
      if (suite != Suite::All && suite_of_kind(check.kind) != suite) continue;
      run_check(check);
    }
    return std::move(report_);
  }

 private:
  struct CoverState {
    CoverSpec spec;
    bool valid = true;
    std::string invalid_reason;
    std::optional<std::variant<CharacterSheaves, PathConflict>> sheaves;
    std::optional<std::variant<CoverInvariants, PathConflict>> inv;
  };

  const SurfaceEntry& surface_for(const CheckRequest& c) { return *file_.surface(param(c, "surface")); }

  const std::vector<CurveRecord>& catalog(const SurfaceEntry& s) {
    auto it = catalogs_.find(s.surface->id);
    if (it == catalogs_.end()) it = catalogs_.emplace(s.surface->id, catalog_negative_curves(*s.surface, oracle_)).first;
    return it->second;
  }

  // Named class if one matches, else the exceptional symbol, else the class.
  static std::string curve_name(const SurfaceEntry& s, const DivisorClass& cls) {
    for (const auto& n : s.classes) {
      if (n.cls == cls) return n.name;
    }
    const auto& names = cls.lattice()->names();
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (cls == DivisorClass::basis(cls.lattice(), names[i])) return names[i];
    }
    return cls.to_string();
  }

  CoverState& state(const CoverEntry& entry) {
    auto it = covers_.find(entry.spec.id);
    if (it != covers_.end()) return it->second;
    CoverState st;
    st.spec = entry.spec;
    const std::string prefix = entry.spec.id + "/relations/";
    if (st.spec.reduced_L.empty()) {
      auto solved = solve_building_data(st.spec);
      if (auto* bad = std::get_if<Unsolvable>(&solved)) {
        st.valid = false;
        st.invalid_reason = "building data has no integral solution";
        report_.add(prefix + "solve", false, "unsolvable", "integral L classes", kRelationsCitation,
                    "coefficient of " + bad->symbol + " is " + to_string(bad->offending_value) + " modulo " +
                        bad->modulus.get_str());
      } else {
        st.spec.reduced_L = std::get<std::map<std::string, DivisorClass>>(solved);
        std::vector<std::string> shown;
        for (const auto& ch : st.spec.characters) {
          auto l = st.spec.reduced_L.find(ch.name);
          if (l != st.spec.reduced_L.end()) shown.push_back("L_" + ch.name + " = " + l->second.to_string());
        }
        report_.add(prefix + "solve", true, join(shown, "; "), "integral L classes", kRelationsCitation);
      }
    }
    if (st.valid) {
      VerificationReport v = validate_cover_data(st.spec, oracle_);
      for (auto c : v.checks()) {
        c.name = prefix + c.name;
        if (c.citation.empty()) c.citation = kRelationsCitation;
        if (c.status != CheckStatus::Pass) {
          st.valid = false;
          st.invalid_reason = "building data failed " + c.name;
        }
        report_.add(std::move(c));
      }
    }
    for (const auto& b : st.spec.branch) {
      const ConsistencyVerdict v = preimage_consistency(st.spec, b);
      std::string computed = std::to_string(b.asserted_components) + " component(s)";
      if (v.genus) computed += ", genus " + to_string(*v.genus);
      report_.add(entry.spec.id + "/preimages/" + b.name, v.consistent, computed, "consistent", kRelationsCitation,
                  join(v.violations, "; "));
    }
    return covers_.emplace(entry.spec.id, std::move(st)).first->second;
  }

  const std::variant<CharacterSheaves, PathConflict>& sheaves(CoverState& st) {
    if (!st.sheaves) st.sheaves = derive_all_L(st.spec);
    return *st.sheaves;
  }

  const std::variant<CoverInvariants, PathConflict>& invariants_of(CoverState& st) {
    if (!st.inv) st.inv = invariants(st.spec, oracle_);
    return *st.inv;
  }

  Residues parse_character(const CoverSpec& spec, const std::string& text) {
    const auto& g = spec.group;
    if (text == "1") return g.identity();
    if (text.find(',') != std::string::npos || std::isdigit(static_cast<unsigned char>(text[0]))) {
      Residues r;
      for (const auto& part : split(text, ',')) r.push_back(std::stoll(part));
      if (r.size() != g.factors()) throw InputError("", "character '" + text + "' has the wrong arity");
      return g.normalize(r);
    }
    Residues acc = g.identity();
    for (const auto& factor : split(text, '*')) {
      const auto caret = factor.find('^');
      const std::string name = trim(factor.substr(0, caret));
      const std::int64_t power = caret == std::string::npos ? 1 : std::stoll(factor.substr(caret + 1));
      const NamedCharacter* ch = spec.character(name);
      if (!ch) throw InputError("", "unknown character '" + name + "'");
      acc = g.add(acc, g.scale(ch->residues, power));
    }
    return acc;
  }

  void add(const CheckRequest& c, bool ok, const std::string& computed, const std::string& detail = {}) {
    report_.add(c.name, ok, computed, c.expected, c.citation, detail);
  }

  void add_rational(const CheckRequest& c, const Rational& value) {
    add(c, value == expected_rational(c), to_string(value));
  }

  void add_class(const CheckRequest& c, const DivisorClass& value, const SurfaceEntry& s,
                 const std::map<std::string, DivisorClass>* extra = nullptr) {
    const DivisorClass want = parse_class_expression(c.expected, s, extra);
    add(c, value == want, value.to_string(),
        value == want ? "" : "differs at " + join(value.differing_symbols(want), ", "));
  }

  void run_check(const CheckRequest& c) {
    try {
      if (c.kind == "lefschetz") return run_lefschetz(c);
      if (c.kind == "cover") return run_cover(c);
      return run_surface_level(c);
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      report_.add(c.name, false, "error", c.expected, c.citation, e.what());
    }
  }

  void run_lefschetz(const CheckRequest& c) {
    std::map<std::string, std::string> params = c.params;
    const std::string tag = params.at("tag");
    params.erase("tag");
    VerificationReport sub;
    try {
      sub = run_named_check(tag, params);
    } catch (const std::invalid_argument& e) {
      throw InputError("", "check '" + c.name + "': " + e.what());
    }
    for (auto r : sub.checks()) {
      // sub-check names already carry the tag
      r.name = c.name + "/" + r.name.substr(tag.size() + 1);
      if (!c.citation.empty()) r.citation = c.citation;
      report_.add(std::move(r));
    }
  }

  void run_surface_level(const CheckRequest& c) {
    const SurfaceEntry& s = surface_for(c);
    auto cls = [&](const std::string& key) { return parse_class_expression(param(c, key), s); };
    if (c.kind == "intersection") return add_rational(c, intersect(cls("a"), cls("b")));
    if (c.kind == "self_intersection") {
      Rational scale = 1;
      if (auto sc = optional_param(c, "scale")) scale = parse_rational(*sc);
      return add_rational(c, scale * self_intersection(cls("class")));
    }
    if (c.kind == "genus") return add_rational(c, adjunction_genus(cls("class"), s.surface->canonical));
    if (c.kind == "gram_det") {
      std::vector<DivisorClass> classes;
      for (const auto& e : split(param(c, "classes"), ',')) classes.push_back(parse_class_expression(e, s));
      return add_rational(c, gram_det(classes));
    }
    if (c.kind == "class_equal") return add_class(c, cls("class"), s);
    if (c.kind == "h0") return add_rational(c, Rational(static_cast<unsigned long>(oracle_.h0(*s.surface, cls("class")))));
    if (c.kind == "catalog_count") {
      const Integer want = parse_rational(param(c, "self_intersection")).get_num();
      std::size_t n = 0;
      for (const auto& r : catalog(s)) n += r.self_int == want ? 1 : 0;
      return add_rational(c, Rational(static_cast<unsigned long>(n)));
    }
    if (c.kind == "catalog_select") {
      // catalogued curves matching the filters, by name
      const auto self = optional_param(c, "self_intersection");
      const auto disjoint = optional_param(c, "disjoint_from_minus_two");
      std::vector<std::string> names;
      for (const auto& r : catalog(s)) {
        if (self && r.self_int != parse_rational(*self).get_num()) continue;
        if (disjoint && r.disjoint_from_minus_two != (*disjoint == "true")) continue;
        names.push_back(curve_name(s, r.cls));
      }
      std::sort(names.begin(), names.end());
      return add(c, same_items(join(names, ", "), c.expected, ','), join(names, ", "));
    }
    if (c.kind == "singular_members") return run_singular_members(c, s);
    if (c.kind == "contraction") {
      std::vector<CurveRecord> curves;
      for (const auto& e : split(param(c, "curves"), ',')) curves.push_back(make_curve(*s.surface, parse_class_expression(e, s)));
      const ContractionRecord r = contract(*s.surface, curves, catalog(s));
      return add_rational(c, Rational(r.k2_after));
    }
    throw InputError("", "unknown check kind '" + c.kind + "'");
  }

  // Members compare as multisets of (class, multiplicity).
  void run_singular_members(const CheckRequest& c, const SurfaceEntry& s) {
    const DivisorClass pencil = parse_class_expression(param(c, "class"), s);
    using Key = std::multiset<std::pair<std::string, long>>;
    std::set<Key> got, want;
    std::vector<std::string> shown;
    for (const auto& d : singular_members(*s.surface, pencil, catalog(s))) {
      Key k;
      std::vector<std::string> parts;
      for (const auto& p : d) {
        k.insert({p.curve.cls.to_string(), p.multiplicity});
        parts.push_back((p.multiplicity == 1 ? "" : std::to_string(p.multiplicity)) + curve_name(s, p.curve.cls));
      }
      got.insert(k);
      shown.push_back(join(parts, " + "));
    }
    for (const auto& member : split(c.expected, ';')) {
      Key k;
      for (const auto& term : split(member, '+')) {
        std::size_t i = 0;
        while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) ++i;
        const long mult = i == 0 ? 1 : std::stol(term.substr(0, i));
        k.insert({parse_class_expression(term.substr(i), s).to_string(), mult});
      }
      want.insert(k);
    }
    add(c, got == want, join(shown, "; "));
  }

  void run_cover(const CheckRequest& c) {
    const CoverEntry& entry = *file_.cover(param(c, "cover"));
    CoverState& st = state(entry);
    const SurfaceEntry& s = *file_.surface(entry.surface);
    const std::string q = param(c, "quantity");
    static const std::set<std::string> dependent = {"L", "quotient_branch", "quotient_k2", "chi", "p_g", "q",
                                                    "h0_adjoint"};
    if (dependent.count(q) && !st.valid) {
      report_.unsupported(c.name, st.invalid_reason, c.citation);
      return;
    }
    std::map<std::string, DivisorClass> extra;
    for (const auto& [name, cls] : st.spec.reduced_L) extra.emplace("L_" + name, cls);

    if (q == "k2_cover") return add_rational(c, canonical_cover(st.spec).k2);
    if (q == "P") return add_class(c, canonical_cover(st.spec).P, s, &extra);
    if (q == "P2") return add_rational(c, canonical_cover(st.spec).P2);
    if (q == "nodes") {
      Integer nodes = 0;
      for (const auto& p : classify_branch_points(st.spec)) {
        if (p.verdict == PointVerdict::NodeA1) nodes += p.points * p.preimage_count;
      }
      return add_rational(c, Rational(nodes));
    }
    if (q == "branch_points") {
      // every crossing that is not smooth
      std::vector<std::string> items;
      for (const auto& p : classify_branch_points(st.spec)) {
        if (p.verdict == PointVerdict::Smooth) continue;
        items.push_back(p.first + "*" + p.second + " " + to_string(p.verdict) + " points=" + p.points.get_str() +
                        " preimages=" + std::to_string(p.preimage_count) + " inertia=" +
                        subgroup_generator(st.spec.group, p.inertia));
      }
      return add(c, same_items(join(items, "; "), c.expected, ';'), join(items, "; "));
    }
    if (q == "pullback_s" || q == "pullback_d") {
      const BranchComponent* b = st.spec.component(param(c, "component"));
      if (!b) throw InputError("", "check '" + c.name + "': unknown component");
      auto pb = pullback(st.spec, *b);
      if (auto* bad = std::get_if<InconsistentAssertion>(&pb)) return add(c, false, "inconsistent", bad->detail);
      const auto& r = std::get<PullbackRecord>(pb);
      return add_rational(c, q == "pullback_s" ? r.s : r.d);
    }
    if (q == "k2_minimal" || q == "k2_minimal_class" || q == "P_min" || q == "ample") return run_minimal(c, entry, st, s);
    if (q == "L") {
      const auto& sh = sheaves(st);
      if (auto* pc = std::get_if<PathConflict>(&sh)) return add(c, false, "path conflict", pc->detail);
      const Residues psi = parse_character(st.spec, param(c, "character"));
      return add_class(c, std::get<CharacterSheaves>(sh).at(psi), s, &extra);
    }
    if (q == "quotient_branch" || q == "quotient_k2") {
      auto quotient = quotient_cover(st.spec, parse_character(st.spec, param(c, "character")));
      if (auto* err = std::get_if<std::string>(&quotient)) return add(c, false, "no quotient", *err);
      const CoverSpec& qs = std::get<CoverSpec>(quotient);
      if (q == "quotient_k2") return add_rational(c, canonical_cover(qs).k2);
      std::vector<std::string> names;
      for (const auto& b : qs.branch) names.push_back(b.name);
      std::sort(names.begin(), names.end());
      return add(c, same_items(join(names, ", "), c.expected, ','), join(names, ", "));
    }
    // invariants
    const auto& inv = invariants_of(st);
    if (auto* pc = std::get_if<PathConflict>(&inv)) return add(c, false, "path conflict", pc->detail);
    const auto& values = std::get<CoverInvariants>(inv);
    if (q == "chi") return add_rational(c, values.chi);
    if (q == "p_g") return add_rational(c, Rational(values.p_g));
    if (q == "q") return add_rational(c, Rational(values.q));
    if (q == "h0_adjoint") {
      const Residues psi = parse_character(st.spec, param(c, "character"));
      for (const auto& t : values.terms) {
        if (t.character == psi) return add_rational(c, Rational(static_cast<unsigned long>(t.h0_adjoint)));
      }
    }
    throw InputError("", "check '" + c.name + "': unknown quantity '" + q + "'");
  }

  void run_minimal(const CheckRequest& c, const CoverEntry& entry, CoverState& st, const SurfaceEntry& s) {
    if (!entry.plan) throw InputError("", "check '" + c.name + "': cover '" + entry.spec.id + "' has no contraction plan");
    std::vector<std::pair<std::string, DivisorClass>> curves;
    for (const auto& r : catalog(s)) curves.emplace_back(curve_name(s, r.cls), r.cls);
    auto mm = minimal_model(st.spec, *entry.plan, curves);
    if (auto* bad = std::get_if<InconsistentAssertion>(&mm))
      return add(c, false, "inconsistent", (bad->component.empty() ? "" : bad->component + ": ") + bad->detail);
    const auto& m = std::get<MinimalModel>(mm);
    const std::string q = param(c, "quantity");
    if (q == "k2_minimal") return add_rational(c, m.k2_counted);
    if (q == "k2_minimal_class") return add_rational(c, m.k2_class);
    if (q == "P_min") return add_class(c, m.P_min, s);
    add(c, m.ample && c.expected == "ample", m.ample ? "ample" : "not ample", join(m.ampleness_failures, "; "));
  }

  const WorkbenchFile& file_;
  InterpolationOracle& oracle_;
  VerificationReport report_;
  std::map<std::string, std::vector<CurveRecord>> catalogs_;
  std::map<std::string, CoverState> covers_;
};

}  // namespace

Suite suite_of_kind(std::string_view kind) {
  static const std::map<std::string, Suite, std::less<>> kinds = {
      {"intersection", Suite::Lattice},     {"self_intersection", Suite::Lattice},
      {"genus", Suite::Lattice},            {"gram_det", Suite::Lattice},
      {"class_equal", Suite::Lattice},      {"h0", Suite::Surface},
      {"catalog_count", Suite::Surface},    {"catalog_select", Suite::Surface},
      {"singular_members", Suite::Surface}, {"contraction", Suite::Surface},
      {"cover", Suite::Cover},              {"lefschetz", Suite::Lefschetz},
  };
  auto it = kinds.find(kind);
  if (it == kinds.end()) throw InputError("", "unknown check kind '" + std::string(kind) + "'");
  return it->second;
}

VerificationReport run_suite(const WorkbenchFile& file, Suite suite, InterpolationOracle& oracle) {
  VerificationReport r = Runner(file, oracle).run(suite);
  r.set_seed(oracle.policy().seed);
  return r;
}

VerificationReport paper_suite(const std::filesystem::path& data_dir, const SeedPolicy& policy) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(data_dir, ec)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  if (ec || files.empty()) throw InputError("", "no fixtures found in '" + data_dir.string() + "'");
  std::sort(files.begin(), files.end());

  InterpolationOracle oracle(policy);
  VerificationReport out;
  for (const auto& path : files) {
    const WorkbenchFile file = parse_spec(path);
    out.merge(run_suite(file, Suite::All, oracle), path.stem().string() + "/");
  }
  for (const auto& check : named_checks()) {
    if (check.examples.empty()) {
      out.merge(run_named_check(check.tag), "numerics/");
      continue;
    }
    for (std::size_t i = 0; i < check.examples.size(); ++i)
      out.merge(run_named_check(check.tag, check.examples[i]), "numerics/example-" + std::to_string(i + 1) + "/");
  }
  out.set_seed(policy.seed);
  return out;
}

}  // namespace scw
