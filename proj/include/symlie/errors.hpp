// Copyright 2026 The symlie Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace symlie {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidSpec : public Error {
  public:
    using Error::Error;
};

class PreconditionViolation : public Error {
  public:
    using Error::Error;
};

/// Group order exceeds the enumeration cap. `order()` holds the decimal order.
class OrderCapExceeded : public Error {
  public:
    OrderCapExceeded(std::string order, std::string cap)
        : Error("OrderCapExceeded: group order " + order + " exceeds cap " + cap),
          order_(std::move(order)) {}
    const std::string &order() const noexcept { return order_; }

  private:
    std::string order_;
};

class StateSpaceCapExceeded : public Error {
  public:
    using Error::Error;
};

/// Dense 2^N x 2^N construction refused because N is above the configured cap.
class DimensionCapExceeded : public Error {
  public:
    using Error::Error;
};

class NonIntegralEvaluation : public Error {
  public:
    using Error::Error;
};

class IndeterminateRank : public Error {
  public:
    using Error::Error;
};

class DatasetGenerationFailed : public Error {
  public:
    using Error::Error;
};

}  // namespace symlie
