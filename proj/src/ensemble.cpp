// SPDX-License-Identifier: Apache-2.0
#include "incomedist/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "incomedist/errors.hpp"

namespace incomedist {

namespace {

constexpr double kEnumerationGuard = 1e7;

// Exact partition count p(q, at most n parts) via the conjugate form
// (parts of size at most n), saturating well above the guard.
double partition_count(long long q, long long n) {
  const long long pmax = std::min(q, n);
  if (q == 0) return 1.0;
  // Cost guard: the DP is O(q * min(q, n)); anything too big to count is
  // certainly too big to enumerate.
  if (static_cast<double>(q) * static_cast<double>(pmax) > 2e8)
    return 2.0 * kEnumerationGuard;
  std::vector<double> dp(static_cast<std::size_t>(q) + 1, 0.0);
  dp[0] = 1.0;
  for (long long part = 1; part <= pmax; ++part)
    for (long long j = part; j <= q; ++j) {
      dp[j] = std::min(dp[j] + dp[j - part], 2.0 * kEnumerationGuard);
    }
  return dp[static_cast<std::size_t>(q)];
}

// Ascending lexicographic walk from (0,...,0,q) to (q,0,...,0). The lex
// successor bumps the last position that has weight after it and parks the
// moved weight at the end; iterative so depth never tracks N.
void enumerate_labeled(long long q, std::size_t n,
                       const std::function<void(const std::vector<long long>&)>&
                           visit) {
  std::vector<long long> r(n, 0);
  r[n - 1] = q;
  visit(r);
  if (n == 1) return;
  while (r[0] != q) {
    std::size_t l = n - 1;
    while (r[l] == 0) --l;
    const std::size_t i = (l == n - 1) ? n - 2 : l - 1;
    const long long s = r[l];
    for (std::size_t j = i + 1; j < n; ++j) r[j] = 0;
    r[i] += 1;
    r[n - 1] = s - 1;
    visit(r);
  }
}

// Non-increasing parts, ascending lexicographic over the padded vector:
// the first part starts at the balanced ceil(q / slots) and grows.
void enumerate_unlabeled(std::vector<long long>& r, std::size_t i,
                         long long remaining, long long cap,
                         const std::function<
                             void(const std::vector<long long>&)>& visit) {
  if (remaining == 0) {
    std::fill(r.begin() + static_cast<std::ptrdiff_t>(i), r.end(), 0);
    visit(r);
    return;
  }
  const long long slots = static_cast<long long>(r.size() - i);
  if (slots <= 0) return;
  const long long lo = (remaining + slots - 1) / slots;
  const long long hi = std::min(remaining, cap);
  for (long long v = lo; v <= hi; ++v) {
    r[i] = v;
    enumerate_unlabeled(r, i + 1, remaining - v, v, visit);
  }
}

}  // namespace

long long quanta(const EconomyParams& params) {
  params.validate();
  const double qd = params.total_income / params.quantum;
  const double qr = std::round(qd);
  if (qr < 1.0 || std::fabs(qd - qr) > 1e-9 * std::max(1.0, qd))
    throw InputError("quanta: total income " +
                     std::to_string(params.total_income) +
                     " is not a positive integer multiple of the quantum " +
                     std::to_string(params.quantum));
  if (qr > 9e18)
    throw InputError("quanta: total income / quantum exceeds 64-bit range");
  return static_cast<long long>(qr);
}

double log_composition_count(long long q, long long n_consumers) {
  if (q < 0 || n_consumers < 1)
    throw InputError("log_composition_count: need q >= 0 and N >= 1");
  return std::lgamma(static_cast<double>(q + n_consumers)) -
         std::lgamma(static_cast<double>(q) + 1.0) -
         std::lgamma(static_cast<double>(n_consumers));
}

void enumerate_allocations(
    const EnsembleSpec& spec,
    const std::function<void(const std::vector<long long>&)>& visit) {
  const long long q = quanta(spec.params);
  const long long n = spec.params.n_consumers;
  if (spec.mode == EnsembleMode::EnumerateLabeled) {
    if (log_composition_count(q, n) > std::log(kEnumerationGuard))
      throw DomainError(
          "enumerate_allocations: more than 1e7 labeled allocations (q = " +
          std::to_string(q) + ", N = " + std::to_string(n) +
          "); use sampling instead");
    enumerate_labeled(q, static_cast<std::size_t>(n), visit);
  } else if (spec.mode == EnsembleMode::EnumerateUnlabeled) {
    if (partition_count(q, n) > kEnumerationGuard)
      throw DomainError(
          "enumerate_allocations: more than 1e7 partitions (q = " +
          std::to_string(q) + ", N = " + std::to_string(n) +
          "); use sampling instead");
    std::vector<long long> r(static_cast<std::size_t>(n), 0);
    enumerate_unlabeled(r, 0, q, q, visit);
  } else {
    throw InputError("enumerate_allocations: spec.mode is a sampling mode");
  }
}

AllocationSampler::AllocationSampler(const EnsembleSpec& spec)
    : spec_(spec), rng_(spec.rng_seed, 0) {
  spec_.params.validate();
  if (spec_.mode == EnsembleMode::SampleDiscrete)
    quanta_ = quanta(spec_.params);
  else if (spec_.mode != EnsembleMode::SampleContinuous)
    throw InputError("AllocationSampler: spec.mode is an enumeration mode");
}

Allocation AllocationSampler::next() {
  const long long n = spec_.params.n_consumers;
  Allocation alloc;
  alloc.incomes.resize(static_cast<std::size_t>(n));
  if (spec_.mode == EnsembleMode::SampleContinuous) {
    double total = 0.0;
    do {
      total = 0.0;
      for (auto& x : alloc.incomes) {
        x = rng_.exponential();
        total += x;
      }
    } while (total == 0.0);
    const double scale = spec_.params.total_income / total;
    for (auto& x : alloc.incomes) x *= scale;
    return alloc;
  }
  // Discrete: a uniform (N-1)-subset of the q+N-1 star-and-bar positions is
  // exactly a uniform labeled composition. Selection sampling keeps each
  // remaining position with probability (bars still needed)/(positions left).
  if (n == 1) {
    alloc.incomes[0] =
        static_cast<double>(quanta_) * spec_.params.quantum;
    return alloc;
  }
  const long long total_pos = quanta_ + n - 1;
  long long need = n - 1;
  std::vector<long long> bars;
  bars.reserve(static_cast<std::size_t>(need));
  for (long long j = 0; j < total_pos && need > 0; ++j) {
    if (rng_.uniform_below(static_cast<std::uint64_t>(total_pos - j)) <
        static_cast<std::uint64_t>(need)) {
      bars.push_back(j);
      --need;
    }
  }
  long long prev = -1;
  for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(n); ++i) {
    alloc.incomes[i] =
        static_cast<double>(bars[i] - prev - 1) * spec_.params.quantum;
    prev = bars[i];
  }
  alloc.incomes[static_cast<std::size_t>(n) - 1] =
      static_cast<double>(total_pos - 1 - prev) * spec_.params.quantum;
  return alloc;
}

AllocationSampler AllocationSampler::substream(std::uint64_t stream) const {
  AllocationSampler s = *this;
  s.rng_ = rng_.split(stream + 1);
  return s;
}

std::map<MacrostateKey, std::uint64_t> macrostate_histogram(
    const EnsembleSpec& spec, const IncomeGrid& grid) {
  std::map<MacrostateKey, std::uint64_t> hist;
  auto bin_quanta = [&](const std::vector<long long>& r) {
    Allocation alloc;
    alloc.incomes.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      alloc.incomes[i] = static_cast<double>(r[i]) * spec.params.quantum;
    Occupancy occ = bin_allocation(alloc, grid);
    ++hist[occ.as_integers()];
  };
  switch (spec.mode) {
    case EnsembleMode::EnumerateLabeled:
    case EnsembleMode::EnumerateUnlabeled:
      enumerate_allocations(spec, bin_quanta);
      break;
    case EnsembleMode::SampleContinuous:
    case EnsembleMode::SampleDiscrete: {
      if (spec.sample_count == 0)
        throw InputError("macrostate_histogram: sample_count must be >= 1 "
                         "for sampling modes");
      AllocationSampler sampler(spec);
      for (std::uint64_t i = 0; i < spec.sample_count; ++i) {
        Occupancy occ = bin_allocation(sampler.next(), grid);
        ++hist[occ.as_integers()];
      }
      break;
    }
  }
  return hist;
}

std::vector<std::pair<MacrostateKey, std::uint64_t>> most_probable_macrostate(
    const EnsembleSpec& spec, const IncomeGrid& grid) {
  const auto hist = macrostate_histogram(spec, grid);
  if (hist.empty()) throw DomainError("most_probable_macrostate: empty "
                                      "ensemble");
  std::uint64_t best = 0;
  for (const auto& [key, count] : hist) best = std::max(best, count);
  std::vector<std::pair<MacrostateKey, std::uint64_t>> out;
  for (const auto& [key, count] : hist)
    if (count == best) out.emplace_back(key, count);
  return out;
}

}  // namespace incomedist
