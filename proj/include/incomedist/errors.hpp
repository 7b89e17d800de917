// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace incomedist {

// Malformed arguments, bad schemas, out-of-contract calls. CLI maps these to
// usage errors (exit 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Infeasible inputs, guard refusals, convergence failures. CLI maps these to
// domain errors (exit 1).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace incomedist
