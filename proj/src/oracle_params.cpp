#include "gsift/oracle_params.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace gsift {

namespace {

// smallest enumeration index in each orbit {z^l : l in L}, plus a witness
// l with z^l equal to that representative
struct OrbitSplit {
  std::vector<uint32_t> reps;                 // sorted ascending
  std::vector<uint32_t> witness;              // witness[i] conjugates z onto reps[i]
  std::vector<uint32_t> points;               // whole orbit, sorted
};

OrbitSplit split_into_classes(const EnumeratedGroup& G, const std::vector<uint32_t>& points,
                              const std::vector<uint32_t>& L) {
  OrbitSplit out;
  out.points = points;
  std::vector<bool> seen(points.size(), false);
  for (size_t i = 0; i < points.size(); ++i) {
    if (seen[i]) continue;
    // representative = least element of the class under the value order
    uint32_t rep = points[i];
    for (uint32_t l : L) {
      uint32_t img = G.conj(points[i], l);
      auto it = std::lower_bound(points.begin(), points.end(), img);
      if (it != points.end() && *it == img) seen[it - points.begin()] = true;
      if (G.at(img) < G.at(rep)) rep = img;
    }
    out.reps.push_back(rep);
  }
  std::sort(out.reps.begin(), out.reps.end());
  return out;
}

}  // namespace

Rational sifting_parameter(const EnumeratedGroup& G, const std::vector<uint32_t>& H,
                           const std::vector<uint32_t>& K, const std::vector<uint32_t>& L) {
  if (H.empty() || L.empty()) throw std::invalid_argument("sifting_parameter: empty input");
  std::vector<bool> visited(G.order(), false);
  uint64_t best = L.size() + 1;
  std::vector<uint32_t> coset(L.size());
  for (uint32_t h : H) {
    if (visited[h]) continue;
    uint64_t hits = 0;
    for (size_t i = 0; i < L.size(); ++i) {
      coset[i] = G.mul(h, L[i]);
      if (set_contains(K, coset[i])) ++hits;
    }
    for (uint32_t c : coset) visited[c] = true;
    best = std::min(best, hits);
    if (best == 0) break;
  }
  return Rational(static_cast<int64_t>(best), static_cast<int64_t>(L.size()));
}

Rational sifting_parameter_over_set(const EnumeratedGroup& G, const std::vector<uint32_t>& H,
                                    const std::vector<uint32_t>& K,
                                    const std::vector<uint32_t>& S) {
  if (H.empty() || S.empty()) throw std::invalid_argument("sifting_parameter: empty input");
  uint64_t best = S.size() + 1;
  for (uint32_t h : H) {
    uint64_t hits = 0;
    for (uint32_t s : S)
      if (set_contains(K, G.mul(h, s))) ++hits;
    best = std::min(best, hits);
    if (best == 0) break;
  }
  return Rational(static_cast<int64_t>(best), static_cast<int64_t>(S.size()));
}

bool is_sifting_triple(const EnumeratedGroup& G, const std::vector<uint32_t>& H,
                       const std::vector<uint32_t>& K, const std::vector<uint32_t>& L) {
  if (!set_subset(K, H)) return false;
  std::vector<bool> in_h(G.order(), false);
  for (uint32_t h : H) in_h[h] = true;
  std::vector<bool> visited(G.order(), false);
  for (uint32_t h : H) {
    if (visited[h]) continue;
    bool met = false;
    for (uint32_t l : L) {
      uint32_t hl = G.mul(h, l);
      if (!in_h[hl]) return false;
      visited[hl] = true;
      if (!met && set_contains(K, hl)) met = true;
    }
    if (!met) return false;
  }
  return true;
}

TsetChain build_tsets(const EnumeratedGroup& G, const Element& a,
                      const std::vector<std::vector<uint32_t>>& subgroups) {
  TsetChain R;
  if (a.is_identity()) {
    R.reason = "base element is the identity";
    return R;
  }
  auto ai_opt = G.index_of(a);
  if (!ai_opt) {
    R.reason = "base element lies outside the group";
    return R;
  }
  uint32_t ai = *ai_opt;
  R.centralizer = G.centralizer(a);

  std::vector<uint32_t> all = G.all();
  const std::vector<uint32_t>* prev_sub = &all;
  std::vector<uint32_t> tset_prev = {G.identity_index()};

  for (size_t lvl = 0; lvl < subgroups.size(); ++lvl) {
    const std::vector<uint32_t>& next_sub = subgroups[lvl];
    TsetLevel level;
    level.reps_u.resize(tset_prev.size());
    for (size_t yi = 0; yi < tset_prev.size(); ++yi) {
      uint32_t y = tset_prev[yi];
      // orbit a^{y L_prev}, then its part inside the next subgroup
      uint32_t base = G.conj(ai, y);
      std::vector<uint32_t> orbit = G.conjugacy_class_in(*prev_sub, base);
      std::vector<uint32_t> inside = set_intersect(orbit, next_sub);
      if (inside.empty()) {
        R.reason = "conjugacy class of a^{y} under level " + std::to_string(lvl) +
                   " misses the next subgroup (y index " + std::to_string(y) + ")";
        return R;
      }
      OrbitSplit split = split_into_classes(G, inside, next_sub);
      for (uint32_t rep : split.reps) {
        // witness u in L_prev with a^{y u} = rep
        uint32_t u = UINT32_MAX;
        for (uint32_t l : *prev_sub) {
          if (G.conj(base, l) == rep) {
            u = l;
            break;
          }
        }
        if (u == UINT32_MAX) throw std::logic_error("orbit representative has no witness");
        level.reps_u[yi].push_back(u);
        level.tset.push_back(G.mul(y, u));
      }
    }
    std::sort(level.tset.begin(), level.tset.end());
    level.tset.erase(std::unique(level.tset.begin(), level.tset.end()), level.tset.end());

    // refinement keeps the previous product set: T_{i+1} L_i = T_i L_i
    if (G.product_set(level.tset, *prev_sub) != G.product_set(tset_prev, *prev_sub))
      throw std::logic_error("refined T-set changed the product with the previous subgroup at level " +
                             std::to_string(lvl));

    // target set via membership: x in C T L exactly when a^x lies in L
    std::vector<uint32_t> target;
    for (uint32_t x = 0; x < G.order(); ++x)
      if (set_contains(next_sub, G.conj(ai, x))) target.push_back(x);
    level.target = std::move(target);

    R.levels.push_back(std::move(level));
    tset_prev = R.levels.back().tset;
    prev_sub = &subgroups[lvl];
  }
  R.ok = true;
  return R;
}

Rational conj_ratio_orbit(const EnumeratedGroup& G, uint32_t a, uint32_t x,
                          const std::vector<uint32_t>& L, const std::vector<uint32_t>& Lnext) {
  uint32_t base = G.conj(a, x);
  std::vector<uint32_t> orbit = G.conjugacy_class_in(L, base);
  std::vector<uint32_t> inside = set_intersect(orbit, Lnext);
  return Rational(static_cast<int64_t>(inside.size()), static_cast<int64_t>(orbit.size()));
}

Rational conj_ratio_centralizer(const EnumeratedGroup& G, uint32_t a, uint32_t x,
                                const std::vector<uint32_t>& L,
                                const std::vector<uint32_t>& Lnext) {
  uint32_t base = G.conj(a, x);
  std::vector<uint32_t> orbit = G.conjugacy_class_in(L, base);
  std::vector<uint32_t> inside = set_intersect(orbit, Lnext);
  if (inside.empty()) return Rational(0, 1);
  OrbitSplit split = split_into_classes(G, inside, Lnext);

  int64_t cl = static_cast<int64_t>(G.centralizer_in(L, G.at(base)).size());
  Rational sum = Rational(0, 1);
  for (uint32_t rep : split.reps) {
    int64_t c = static_cast<int64_t>(G.centralizer_in(Lnext, G.at(rep)).size());
    sum = sum + Rational(1, c);
  }
  Rational index = Rational(static_cast<int64_t>(L.size()),
                                  static_cast<int64_t>(Lnext.size()));
  return Rational(cl, 1) * sum / index;
}

Rational sifting_parameter_translated(const EnumeratedGroup& G, const std::vector<uint32_t>& H,
                                      const std::vector<uint32_t>& K,
                                      const std::vector<uint32_t>& L,
                                      const std::vector<uint32_t>& T) {
  if (H.empty() || K.empty() || L.empty() || T.empty())
    throw std::invalid_argument("sifting_parameter_translated: empty input");

  // one id per left coset of L; h and h' share an id exactly when hL = h'L
  std::vector<uint32_t> coset_id(G.order(), UINT32_MAX);
  uint32_t next_id = 0;
  for (uint32_t x = 0; x < G.order(); ++x) {
    if (coset_id[x] != UINT32_MAX) continue;
    for (uint32_t l : L) coset_id[G.mul(x, l)] = next_id;
    ++next_id;
  }

  // the draw is a pair (l, t); |{(l, t) : h l t in K}| = sum over t of
  // |hL ∩ K t^{-1}|, translates counted with multiplicity
  std::vector<uint64_t> per_coset(next_id, 0);
  for (uint32_t t : T) {
    uint32_t ti = G.inv(t);
    for (uint32_t k : K) ++per_coset[coset_id[G.mul(k, ti)]];
  }

  uint64_t best = UINT64_MAX;
  for (uint32_t h : H) best = std::min(best, per_coset[coset_id[h]]);
  return Rational(static_cast<int64_t>(best),
                  static_cast<int64_t>(L.size() * T.size()));
}

Rational sifting_parameter_exact(const EnumeratedGroup& G, const std::vector<uint32_t>& H,
                                 const std::vector<uint32_t>& K,
                                 const std::vector<uint32_t>& L) {
  if (H.empty() || K.empty() || L.empty())
    throw std::invalid_argument("sifting_parameter_exact: empty input");
  std::vector<bool> in_h(G.order(), false);
  for (uint32_t h : H) in_h[h] = true;
  uint64_t best = L.size() + 1;
  for (uint32_t h : H) {
    uint64_t hits = 0;
    for (uint32_t l : L) {
      uint32_t hl = G.mul(h, l);
      if (!in_h[hl])
        throw std::invalid_argument("HL is not contained in H: witness h = " + G.at(h).str() +
                                    ", l = " + G.at(l).str());
      if (set_contains(K, hl)) ++hits;
    }
    if (hits == 0)
      throw std::invalid_argument("hL does not meet K: witness h = " + G.at(h).str());
    best = std::min(best, hits);
  }
  return Rational(static_cast<int64_t>(best), static_cast<int64_t>(L.size()));
}

Rational conjugate_orbit_ratio(const EnumeratedGroup& G, uint32_t a, uint32_t x,
                               const std::vector<uint32_t>& L,
                               const std::vector<uint32_t>& Lnext) {
  if (!set_contains(L, G.conj(a, x)))
    throw std::invalid_argument("conjugate_orbit_ratio: a^x lies outside L");
  Rational orbit_form = conj_ratio_orbit(G, a, x, L, Lnext);
  Rational centralizer_form = conj_ratio_centralizer(G, a, x, L, Lnext);
  if (!(orbit_form == centralizer_form))
    throw std::logic_error("acceptance-ratio expressions disagree: " + orbit_form.str() +
                           " vs " + centralizer_form.str());
  return orbit_form;
}

Rational element_order_profile(const EnumeratedGroup& G, const std::vector<uint32_t>& M,
                               const std::vector<uint64_t>& I) {
  if (M.empty()) throw std::invalid_argument("element_order_profile: empty set");
  uint64_t hits = 0;
  for (uint32_t m : M) {
    uint64_t n = G.order_of(m);
    if (std::find(I.begin(), I.end(), n) != I.end()) ++hits;
  }
  return Rational(static_cast<int64_t>(hits), static_cast<int64_t>(M.size()));
}

}  // namespace gsift
