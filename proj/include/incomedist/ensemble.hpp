// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "incomedist/grid.hpp"
#include "incomedist/rng.hpp"

namespace incomedist {

// How the space of equal-probability allocations is traversed.
enum class EnsembleMode {
  EnumerateLabeled,    // ordered compositions of Pi/delta into N parts
  EnumerateUnlabeled,  // partitions of Pi/delta into at most N parts
  SampleContinuous,    // uniform on the simplex sum R_i = Pi, R_i >= 0
  SampleDiscrete,      // uniform over labeled compositions
};

struct EnsembleSpec {
  EconomyParams params;
  EnsembleMode mode = EnsembleMode::EnumerateLabeled;
  std::uint64_t sample_count = 0;  // sampling modes only
  std::uint64_t rng_seed = 0;      // sampling modes only
};

// Pi/delta as an exact integer; rejects totals that are not integer
// multiples of the quantum (1e-9 relative slack).
long long quanta(const EconomyParams& params);

// ln C(q + N - 1, N - 1), the labeled composition count, used by the
// enumeration guard (enumeration refuses above 1e7 compositions).
double log_composition_count(long long q, long long n_consumers);

// Streams every allocation of the enumeration mode in deterministic
// lexicographic order as quantum counts (multiply by delta for incomes).
// Unlabeled mode yields each partition once, parts non-increasing.
void enumerate_allocations(
    const EnsembleSpec& spec,
    const std::function<void(const std::vector<long long>&)>& visit);

// Stream of uniform allocations. Continuous mode normalizes unit-rate
// exponentials onto the simplex; discrete mode draws a uniform (N-1)-subset
// of the q+N-1 star-and-bar positions (Knuth selection sampling), which is
// exactly uniform over labeled compositions.
class AllocationSampler {
 public:
  explicit AllocationSampler(const EnsembleSpec& spec);
  Allocation next();
  // Independent sub-stream for parallel use; no cross-stream ordering.
  AllocationSampler substream(std::uint64_t stream) const;

 private:
  EnsembleSpec spec_;
  long long quanta_ = 0;
  Rng rng_;
};

using MacrostateKey = std::vector<long long>;  // integer occupancy

// Tally of binned occupancies over the enumerated or sampled ensemble.
std::map<MacrostateKey, std::uint64_t> macrostate_histogram(
    const EnsembleSpec& spec, const IncomeGrid& grid);

// Argmax entries of the histogram; ties are all returned, ordered
// lexicographically by occupancy.
std::vector<std::pair<MacrostateKey, std::uint64_t>> most_probable_macrostate(
    const EnsembleSpec& spec, const IncomeGrid& grid);

}  // namespace incomedist
