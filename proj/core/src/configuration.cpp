#include "scw/configuration.hpp"

#include <random>
#include <sstream>

namespace scw {

const std::string& step_id(const ConstructionStep& step) {
  return std::visit([](const auto& s) -> const std::string& { return s.id; }, step);
}

bool defines_point(const ConstructionStep& step) {
  return std::holds_alternative<FreePoint>(step) || std::holds_alternative<PointOnLine>(step) ||
         std::holds_alternative<IntersectionPoint>(step);
}

void validate_script(const ConstructionScript& script) {
  std::map<std::string, bool> kind;  // id -> is point
  auto need = [&](const std::string& ref, bool point, const std::string& owner) {
    auto it = kind.find(ref);
    if (it == kind.end()) throw ScriptError("step '" + owner + "' references undefined id '" + ref + "'");
    if (it->second != point)
      throw ScriptError("step '" + owner + "' expects " + (point ? "a point" : "a line") + " but '" + ref +
                        "' is " + (point ? "a line" : "a point"));
  };
  for (const auto& step : script) {
    const std::string& id = step_id(step);
    if (id.empty()) throw ScriptError("construction step with empty id");
    if (kind.count(id)) throw ScriptError("duplicate id '" + id + "' in construction script");
    if (const auto* s = std::get_if<LineThrough>(&step)) {
      need(s->p, true, id);
      need(s->q, true, id);
      if (s->p == s->q) throw ScriptError("line '" + id + "' passes through the same point twice");
    } else if (const auto* s = std::get_if<PointOnLine>(&step)) {
      need(s->line, false, id);
    } else if (const auto* s = std::get_if<IntersectionPoint>(&step)) {
      need(s->l1, false, id);
      need(s->l2, false, id);
      if (s->l1 == s->l2) throw ScriptError("point '" + id + "' intersects a line with itself");
    }
    kind[id] = defines_point(step);
  }
}

std::map<std::string, std::set<std::string>> declared_incidences(const ConstructionScript& script) {
  std::map<std::string, std::set<std::string>> on;
  for (const auto& step : script) {
    if (const auto* s = std::get_if<FreeLine>(&step)) {
      on[s->id];
    } else if (const auto* s = std::get_if<LineThrough>(&step)) {
      on[s->id].insert({s->p, s->q});
    } else if (const auto* s = std::get_if<PointOnLine>(&step)) {
      on[s->line].insert(s->id);
    } else if (const auto* s = std::get_if<IntersectionPoint>(&step)) {
      on[s->l1].insert(s->id);
      on[s->l2].insert(s->id);
    }
  }
  return on;
}

std::vector<std::set<std::string>> collinear_sets(const ConstructionScript& script,
                                                  const std::vector<std::string>& points) {
  std::set<std::string> wanted(points.begin(), points.end());
  std::set<std::set<std::string>> out;
  for (const auto& [line, on] : declared_incidences(script)) {
    std::set<std::string> hit;
    for (const auto& p : on) {
      if (wanted.count(p)) hit.insert(p);
    }
    if (hit.size() >= 3) out.insert(hit);
  }
  return {out.begin(), out.end()};
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Integer dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Integer det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

bool is_zero(const Vec3& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }

namespace {

// divide out the content so coordinates stay small
Vec3 primitive(Vec3 v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1) {
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  return v;
}

Vec3 draw(std::mt19937_64& rng) {
  constexpr std::uint64_t span = 20001;
  Vec3 v;
  for (auto& x : v) x = static_cast<long>(rng() % span) - 10000;
  return v;
}

bool inside(const std::set<std::string>& s, const std::string& a, const std::string& b, const std::string& c) {
  return s.count(a) && s.count(b) && s.count(c);
}

}  // namespace

Realization realize_configuration(const ConstructionScript& script,
                                  const std::vector<std::string>& blown_up, std::uint64_t seed,
                                  std::size_t max_attempts) {
  validate_script(script);
  const auto declared = collinear_sets(script, blown_up);
  std::mt19937_64 rng(seed);
  std::string last_reason = "no attempts made";
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    Realization r;
    r.seed = seed;
    r.attempts = attempt;
    bool ok = true;
    for (const auto& step : script) {
      Vec3 v;
      bool point = defines_point(step);
      if (std::holds_alternative<FreePoint>(step) || std::holds_alternative<FreeLine>(step)) {
        v = draw(rng);
      } else if (const auto* s = std::get_if<LineThrough>(&step)) {
        v = cross(r.points.at(s->p), r.points.at(s->q));
      } else if (const auto* s = std::get_if<PointOnLine>(&step)) {
        v = cross(r.lines.at(s->line), draw(rng));
      } else if (const auto* s = std::get_if<IntersectionPoint>(&step)) {
        v = cross(r.lines.at(s->l1), r.lines.at(s->l2));
      }
      v = primitive(std::move(v));
      if (is_zero(v)) {
        last_reason = "degenerate " + std::string(point ? "point" : "line") + " '" + step_id(step) + "'";
        ok = false;
        break;
      }
      (point ? r.points : r.lines)[step_id(step)] = std::move(v);
    }
    if (ok) {
      const std::size_t n = blown_up.size();
      for (std::size_t i = 0; i < n && ok; ++i) {
        if (!r.points.count(blown_up[i]))
          throw ScriptError("blown-up id '" + blown_up[i] + "' is not a point of the script");
        for (std::size_t j = i + 1; j < n && ok; ++j) {
          if (is_zero(cross(r.points.at(blown_up[i]), r.points.at(blown_up[j])))) {
            last_reason = "points '" + blown_up[i] + "' and '" + blown_up[j] + "' coincide";
            ok = false;
          }
        }
      }
      for (std::size_t i = 0; i < n && ok; ++i) {
        for (std::size_t j = i + 1; j < n && ok; ++j) {
          for (std::size_t k = j + 1; k < n && ok; ++k) {
            const auto &a = blown_up[i], &b = blown_up[j], &c = blown_up[k];
            bool expected = false;
            for (const auto& s : declared) expected = expected || inside(s, a, b, c);
            bool actual = det3(r.points.at(a), r.points.at(b), r.points.at(c)) == 0;
            if (expected != actual) {
              last_reason = "points '" + a + "', '" + b + "', '" + c + "' are " +
                            (actual ? "collinear without being declared so" : "not collinear as declared");
              ok = false;
            }
          }
        }
      }
    }
    if (ok) return r;
  }
  throw RealizationError("could not realize configuration with seed " + std::to_string(seed) + " after " +
                         std::to_string(max_attempts) + " attempts (last: " + last_reason + ")");
}

std::vector<std::string> BlowupSurface::blown_up_points() const {
  std::vector<std::string> out;
  for (const auto& b : blowups) out.push_back(b.point);
  return out;
}

std::string BlowupSurface::fingerprint() const {
  std::ostringstream out;
  for (const auto& step : script) {
    out << step.index() << ':' << step_id(step);
    if (const auto* s = std::get_if<LineThrough>(&step)) out << '(' << s->p << ',' << s->q << ')';
    if (const auto* s = std::get_if<PointOnLine>(&step)) out << '(' << s->line << ')';
    if (const auto* s = std::get_if<IntersectionPoint>(&step)) out << '(' << s->l1 << ',' << s->l2 << ')';
    out << ';';
  }
  out << '|';
  for (const auto& b : blowups) out << b.point << '=' << b.symbol << ';';
  return out.str();
}

BlowupSurface build_surface(std::string id, ConstructionScript script, std::vector<BlownUpPoint> blowups) {
  validate_script(script);
  std::map<std::string, bool> is_point;
  for (const auto& step : script) is_point[step_id(step)] = defines_point(step);
  std::set<std::string> seen_points, seen_symbols;
  std::vector<std::string> symbols;
  std::map<std::string, std::string> symbol_of;
  for (const auto& b : blowups) {
    auto it = is_point.find(b.point);
    if (it == is_point.end() || !it->second)
      throw ScriptError("blown-up id '" + b.point + "' is not a point of the script");
    if (!seen_points.insert(b.point).second) throw ScriptError("point '" + b.point + "' is blown up twice");
    if (b.symbol == "L" || !seen_symbols.insert(b.symbol).second)
      throw ScriptError("exceptional symbol '" + b.symbol + "' is reserved or repeated");
    symbols.push_back(b.symbol);
    symbol_of[b.point] = b.symbol;
  }
  BlowupSurface s;
  s.id = std::move(id);
  s.script = std::move(script);
  s.blowups = std::move(blowups);
  s.lattice = Lattice::blowup(symbols);
  s.canonical = canonical_class(s.lattice);
  for (const auto& set : collinear_sets(s.script, s.blown_up_points())) {
    std::set<std::string> named;
    for (const auto& p : set) named.insert(symbol_of.at(p));
    s.collinear.push_back(std::move(named));
  }
  return s;
}

BlowupSurface build_surface(std::string id, ConstructionScript script) {
  std::vector<BlownUpPoint> blowups;
  for (const auto& step : script) {
    if (defines_point(step)) blowups.push_back({step_id(step), step_id(step)});
  }
  return build_surface(std::move(id), std::move(script), std::move(blowups));
}

}  // namespace scw
