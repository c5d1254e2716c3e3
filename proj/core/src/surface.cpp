#include "scw/surface.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace scw {

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::MinusOne: return "minus-one";
    case CurveKind::MinusTwo: return "minus-two";
    case CurveKind::Other: break;
  }
  return "other";
}

std::string to_string(ContractionTarget target) {
  switch (target) {
    case ContractionTarget::NodalSurface: return "nodal-surface";
    case ContractionTarget::SmoothBlowdown: return "smooth-blowdown";
    case ContractionTarget::Identity: break;
  }
  return "identity";
}

CurveRecord make_curve(const BlowupSurface& surface, DivisorClass cls, std::string provenance) {
  if (!cls.is_integral()) throw LatticeError("curve class must be integral: " + cls.to_string());
  CurveRecord c;
  const Rational s = self_intersection(cls);
  const Rational k = intersect(surface.canonical, cls);
  c.self_int = s.get_num();
  c.k_degree = k.get_num();
  c.genus = adjunction_genus(cls, surface.canonical);
  if (c.genus == 0 && c.self_int == -1 && c.k_degree == -1) c.kind = CurveKind::MinusOne;
  if (c.genus == 0 && c.self_int == -2 && c.k_degree == 0) c.kind = CurveKind::MinusTwo;
  c.cls = std::move(cls);
  c.provenance = std::move(provenance);
  return c;
}

namespace {

// all m in [0, cap]^n with sum m = total and sum m^2 = squares
void enumerate_multiplicities(std::size_t n, long cap, long total, long squares,
                              const std::function<void(const std::vector<long>&)>& emit) {
  std::vector<long> m(n, 0);
  std::function<void(std::size_t, long, long)> rec = [&](std::size_t i, long left, long sq_left) {
    if (i == n) {
      if (left == 0 && sq_left == 0) emit(m);
      return;
    }
    const long slots = static_cast<long>(n - i);
    if (left > slots * cap || left < 0 || sq_left < 0) return;
    for (long v = 0; v <= std::min(cap, left); ++v) {
      if (v * v > sq_left) break;
      m[i] = v;
      rec(i + 1, left - v, sq_left - v * v);
    }
    m[i] = 0;
  };
  rec(0, total, squares);
}

DivisorClass class_of(const LatticePtr& lattice, long d, const std::vector<long>& m) {
  DivisorClass c(lattice);
  c.set(0, d);
  for (std::size_t i = 0; i < m.size(); ++i) c.set(i + 1, -m[i]);
  return c;
}

std::string describe(const BlowupSurface& surface, long d, const std::vector<long>& m) {
  static const char* names[] = {"", "line", "conic", "cubic"};
  std::ostringstream out;
  out << (d < 4 ? names[d] : ("degree " + std::to_string(d) + " curve")) << " through";
  bool any = false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    out << (any ? ", " : " ") << surface.blowups[i].point;
    if (m[i] > 1) out << " (mult " << m[i] << ")";
    any = true;
  }
  if (!any) out << " no blown-up point";
  return out.str();
}

bool splits(const BlowupSurface& surface, InterpolationOracle& oracle, long d, const std::vector<long>& m) {
  const auto& lattice = surface.lattice;
  const DivisorClass c = class_of(lattice, d, m);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (oracle.h0(surface, c - DivisorClass::basis(lattice, lattice->names()[i + 1])) > 0) return true;
  }
  std::vector<long> a(m.size(), 0);
  for (long dp = 1; dp < d; ++dp) {
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
      if (i == a.size()) {
        DivisorClass part = class_of(lattice, dp, a);
        return oracle.h0(surface, part) > 0 && oracle.h0(surface, c - part) > 0;
      }
      for (long v = 0; v <= m[i]; ++v) {
        a[i] = v;
        if (rec(i + 1)) return true;
      }
      a[i] = 0;
      return false;
    };
    if (rec(0)) return true;
  }
  return false;
}

}  // namespace

std::vector<CurveRecord> catalog_negative_curves(const BlowupSurface& surface, InterpolationOracle& oracle,
                                                 long degree_bound) {
  if (degree_bound < 1) throw std::invalid_argument("degree bound must be at least 1");
  std::vector<CurveRecord> out;
  const auto& lattice = surface.lattice;
  for (std::size_t i = 0; i < surface.blowups.size(); ++i) {
    out.push_back(make_curve(surface, DivisorClass::basis(lattice, surface.blowups[i].symbol),
                             "exceptional curve over " + surface.blowups[i].point));
  }
  const std::size_t n = surface.blowups.size();
  for (long d = 1; d <= degree_bound; ++d) {
    // (-1): sum m = 3d - 1, sum m^2 = d^2 + 1; (-2): sum m = 3d, sum m^2 = d^2 + 2
    for (long shift : {1L, 2L}) {
      enumerate_multiplicities(n, d, 3 * d - 2 + shift, d * d + shift, [&](const std::vector<long>& m) {
        DivisorClass c = class_of(lattice, d, m);
        if (oracle.h0(surface, c) != 1) return;
        if (splits(surface, oracle, d, m)) return;
        out.push_back(make_curve(surface, std::move(c), describe(surface, d, m)));
      });
    }
  }
  for (auto& c : out) {
    c.disjoint_from_minus_two = std::none_of(out.begin(), out.end(), [&](const CurveRecord& other) {
      return other.kind == CurveKind::MinusTwo && !(other.cls == c.cls) && intersect(other.cls, c.cls) != 0;
    });
  }
  return out;
}

DivisorClass decomposition_sum(const Decomposition& parts, const LatticePtr& lattice) {
  DivisorClass sum(lattice);
  for (const auto& p : parts) sum += Rational(p.multiplicity) * p.curve.cls;
  return sum;
}

std::string to_string(const Decomposition& parts) {
  std::string s;
  for (const auto& p : parts) {
    if (!s.empty()) s += " + ";
    if (p.multiplicity != 1) s += std::to_string(p.multiplicity) + "(" + p.curve.cls.to_string() + ")";
    else s += "(" + p.curve.cls.to_string() + ")";
  }
  return s;
}

std::vector<Pencil> find_pencils(const BlowupSurface& surface, const std::vector<CurveRecord>& catalog,
                                 InterpolationOracle& oracle, long degree_bound) {
  std::vector<Pencil> out;
  const std::size_t n = surface.blowups.size();
  for (long d = 1; d <= degree_bound; ++d) {
    enumerate_multiplicities(n, d, 3 * d - 2, d * d, [&](const std::vector<long>& m) {
      DivisorClass f = class_of(surface.lattice, d, m);
      for (const auto& c : catalog) {
        if (intersect(f, c.cls) < 0) return;
      }
      if (oracle.h0(surface, f) != 2) return;
      out.push_back(Pencil{std::move(f), {}});
    });
  }
  return out;
}

std::vector<Decomposition> singular_members(const BlowupSurface& surface, const DivisorClass& pencil,
                                            const std::vector<CurveRecord>& catalog) {
  const auto& lattice = surface.lattice;
  std::vector<const CurveRecord*> movable;  // non-exceptional parts
  std::vector<const CurveRecord*> exceptional(surface.blowups.size(), nullptr);
  for (const auto& c : catalog) {
    if (intersect(c.cls, pencil) != 0) continue;
    if (c.cls[0] == 0) {
      for (std::size_t i = 1; i < c.cls.size(); ++i) {
        if (c.cls[i] == 1) exceptional[i - 1] = &c;
      }
    } else if (c.cls[0] > 0) {
      movable.push_back(&c);
    }
  }
  const Rational degree = pencil[0];
  std::vector<Decomposition> out;
  Decomposition current;
  std::function<void(std::size_t, DivisorClass)> rec = [&](std::size_t start, DivisorClass rest) {
    if (rest[0] == 0 && !current.empty()) {
      // the remainder must be a nonnegative sum of orthogonal exceptional curves
      Decomposition full = current;
      for (std::size_t i = 1; i < rest.size(); ++i) {
        if (rest[i] < 0) return;
        if (rest[i] == 0) continue;
        if (!exceptional[i - 1] || !is_integral(rest[i])) return;
        full.push_back({*exceptional[i - 1], rest[i].get_num().get_si()});
      }
      long parts = 0;
      for (const auto& p : full) parts += p.multiplicity;
      if (parts >= 2 && decomposition_sum(full, lattice) == pencil) out.push_back(std::move(full));
      return;
    }
    for (std::size_t k = start; k < movable.size(); ++k) {
      const CurveRecord& c = *movable[k];
      if (c.cls[0] > rest[0]) continue;
      const bool same = !current.empty() && current.back().curve.cls == c.cls;
      if (same) {
        ++current.back().multiplicity;
        rec(k, rest - c.cls);
        --current.back().multiplicity;
      } else {
        current.push_back({c, 1});
        rec(k, rest - c.cls);
        current.pop_back();
      }
    }
  };
  if (degree > 0) rec(0, pencil);
  return out;
}

ContractionRecord contract(const BlowupSurface& surface, const std::vector<CurveRecord>& curves,
                           const std::vector<CurveRecord>& catalog) {
  ContractionRecord r;
  r.k2_before = self_intersection(surface.canonical).get_num();
  r.k2_after = r.k2_before;
  r.contracted = curves;
  if (curves.empty()) return r;
  const CurveKind kind = curves.front().kind;
  if (kind == CurveKind::Other) throw ContractionError("only (-1)- and (-2)-curves can be contracted");
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (curves[i].kind != kind) throw ContractionError("contraction mixes (-1)- and (-2)-curves");
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      if (intersect(curves[i].cls, curves[j].cls) != 0)
        throw ContractionError("curves " + curves[i].cls.to_string() + " and " + curves[j].cls.to_string() +
                               " meet");
    }
  }
  if (kind == CurveKind::MinusTwo) {
    r.target = ContractionTarget::NodalSurface;
    r.nodes = curves.size();
  } else {
    r.target = ContractionTarget::SmoothBlowdown;
    r.k2_after += static_cast<long>(curves.size());
  }
  for (const auto& c : catalog) {
    if (c.kind != CurveKind::MinusTwo) continue;
    bool touched = false;
    for (const auto& x : curves) touched = touched || x.cls == c.cls || intersect(x.cls, c.cls) != 0;
    if (!touched) r.remaining_minus_two.push_back(c);
  }
  return r;
}

}  // namespace scw
