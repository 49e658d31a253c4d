/*
 * Copyright 2026 The AERW Lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace aerw {

// Invalid model parameters (p, q outside [0,1], beta < 0, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bad call arguments that are not model parameters (k out of range, s > t).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Function evaluated outside its mathematical domain (Gamma poles, n too small).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A regime-specific quantity requested in the wrong regime.
class RegimeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Parameters on the line a(beta+1) = beta, where N_n and the limit
// covariance are undefined.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Request too large for an exhaustive computation.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace aerw
