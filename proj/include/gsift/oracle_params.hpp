#pragma once

#include <string>
#include <vector>

#include "gsift/oracle.hpp"
#include "gsift/rational.hpp"

namespace gsift {

// p(H, K, L) = min_{h in H} |hL ∩ K| / |L| for a subgroup L. Counts are
// constant on left L-cosets, so the scan marks each coset once.
Rational sifting_parameter(const EnumeratedGroup& G, const std::vector<uint32_t>& H,
                           const std::vector<uint32_t>& K, const std::vector<uint32_t>& L);
// same quantity for an arbitrary sampling set S (no coset shortcuts)
Rational sifting_parameter_over_set(const EnumeratedGroup& G, const std::vector<uint32_t>& H,
                                    const std::vector<uint32_t>& K,
                                    const std::vector<uint32_t>& S);

// K ⊆ H, HL ⊆ H, and hL meets K for every h in H
bool is_sifting_triple(const EnumeratedGroup& G, const std::vector<uint32_t>& H,
                       const std::vector<uint32_t>& K, const std::vector<uint32_t>& L);

// Auxiliary subset data for sifting with conjugates of a fixed element a
// down a subgroup chain G0 > L_1 > ... > L_m: level i holds T_i, the chosen
// U(y) words grouped by the previous level's members, and the resulting
// target set C_{G0}(a) * T_i * L_i. Construction fails cleanly when some
// L_i-conjugacy class of a^{G0} ∩ L_i misses L_{i+1}, which is exactly the
// obstruction the recursion cannot cross.
struct TsetLevel {
  std::vector<uint32_t> tset;
  std::vector<std::vector<uint32_t>> reps_u;  // U(y) for each y in the level above
  std::vector<uint32_t> target;               // C T_i L_i as a sorted index set
};

struct TsetChain {
  bool ok = false;
  std::string reason;
  std::vector<uint32_t> centralizer;  // C_{G0}(a)
  std::vector<TsetLevel> levels;      // levels[i] belongs to subgroups[i]
};

TsetChain build_tsets(const EnumeratedGroup& G, const Element& a,
                      const std::vector<std::vector<uint32_t>>& subgroups);

// The two expressions for the per-coset acceptance ratio of a conjugate
// step, evaluated along independent routes: one counts the orbit a^{xL} and
// its part inside L', the other combines centralizer orders over the
// L'-class representatives of a^{xL} ∩ L'.
Rational conj_ratio_orbit(const EnumeratedGroup& G, uint32_t a, uint32_t x,
                          const std::vector<uint32_t>& L, const std::vector<uint32_t>& Lnext);
Rational conj_ratio_centralizer(const EnumeratedGroup& G, uint32_t a, uint32_t x,
                                const std::vector<uint32_t>& L,
                                const std::vector<uint32_t>& Lnext);

// Worst-case per-draw acceptance probability of a translated sampler: the
// draw is l t with l from the subgroup L and t from T (with multiplicity),
// and the value is min_h |{(l, t) : h l t in K}| / (|L| |T|). With T = {1}
// this is p(H, K, L).
Rational sifting_parameter_translated(const EnumeratedGroup& G, const std::vector<uint32_t>& H,
                                      const std::vector<uint32_t>& K,
                                      const std::vector<uint32_t>& L,
                                      const std::vector<uint32_t>& T);

// Checked form of sifting_parameter: requires HL ⊆ H and that every coset
// hL meets K, and throws a diagnostic naming the violated condition and a
// witness element otherwise. L need not be a subgroup.
Rational sifting_parameter_exact(const EnumeratedGroup& G, const std::vector<uint32_t>& H,
                                 const std::vector<uint32_t>& K,
                                 const std::vector<uint32_t>& L);

// Evaluates both acceptance-ratio expressions (requires a^x in L, checked)
// and throws if they disagree; returns the common value.
Rational conjugate_orbit_ratio(const EnumeratedGroup& G, uint32_t a, uint32_t x,
                               const std::vector<uint32_t>& L,
                               const std::vector<uint32_t>& Lnext);

// exact fraction of M whose element orders lie in I
Rational element_order_profile(const EnumeratedGroup& G, const std::vector<uint32_t>& M,
                               const std::vector<uint64_t>& I);

}  // namespace gsift
