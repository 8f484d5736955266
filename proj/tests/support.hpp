#pragma once

// Independent reference implementations used by the unit tests and the
// acceptance binary.  Everything here works on plain 32-bit masks and
// exhaustive enumeration, sharing no search code with the library.

#include <cstdint>
#include <random>
#include <vector>

#include "mt/construct.hpp"
#include "mt/core.hpp"
#include "mt/prefs.hpp"

namespace oracle {

using mt::HypothesisClass;
using mt::Index;
using mt::PreferenceFunction;
using Mask = std::uint32_t;

inline constexpr int kInf = 1 << 29;

Mask full(const HypothesisClass& c);
// Hypotheses labelling x with y.
Mask with_label(const HypothesisClass& c, Index x, bool y);
mt::Bits to_bits(Mask m, std::size_t n);
Mask from(const mt::VersionSpace& V);

// argmin of σ(·; V, h) over V.
Mask argmin(const PreferenceFunction& s, Mask V, Index h, std::size_t n);

// Teaching dimension by enumerating instance subsets in increasing size.
std::size_t td(const HypothesisClass& c);
std::size_t teaching_set_size(const HypothesisClass& c, Mask H, Index h);
std::size_t rtd(const HypothesisClass& c);
std::size_t vcd(const HypothesisClass& c, Mask H, const std::vector<Index>& X);
// Plain backtracking over all subsets of size <= k per hypothesis; tiny classes only.
std::size_t nctd(const HypothesisClass& c);

// D_σ by Bellman iteration to the least fixed point over all states.
int d_sigma_fixpoint(const PreferenceFunction& s, const HypothesisClass& c, Mask V, Index h, Index target);
// Plain game-tree search; revisiting a state on the current path counts as failure.
int d_sigma_naive(const PreferenceFunction& s, const HypothesisClass& c, Mask V, Index h, Index target);

// Collusion check straight from the definition: every premise ℋ(Z), every current h and every S ⊆ ĥ-consistent examples.
bool collusion_free_exhaustive(const PreferenceFunction& s, const HypothesisClass& c);

// Failed partition properties on one recursion level: blocks non-empty, disjoint and
// covering H, pivot labels opposite the reference, last block {reference}, and each
// block's dimension on the remaining compact instances at most one less.
int partition_violations(const mt::LvsLevel& lv, const HypothesisClass& c);

// Smallest k with 2^d <= sum_{i<=k} (2d)^i, in 128-bit arithmetic.
std::size_t counting_bound(std::size_t d);

HypothesisClass random_class(std::mt19937_64& rng, std::size_t min_h, std::size_t max_h, std::size_t min_x,
                             std::size_t max_x);
// Small ranks on purpose: ties exercise every tie-handling path.
PreferenceFunction random_sigma(std::mt19937_64& rng, mt::Family f, const HypothesisClass& c);

}  // namespace oracle
