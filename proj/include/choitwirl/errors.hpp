/*
 * This code is part of choitwirl.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace choitwirl {

/// Violated precondition: dimension/order mismatch, bad argument values.
struct contract_error : std::invalid_argument {
    explicit contract_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Operand shapes do not conform.
struct shape_error : contract_error {
    explicit shape_error(const std::string& what) : contract_error(what) {}
};

/// A resource guard (factorial order, total dimension) was exceeded.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// A randomized numerical routine failed to converge after retries.
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace choitwirl
