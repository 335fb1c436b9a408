// SPDX-License-Identifier: Apache-2.0
//
// fsochan - statistical channel model for hovering-UAV optical links
// Copyright (C) 2026 The fsochan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef FSOCHAN_ERRORS_HPP
#define FSOCHAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fsochan
{
    // Argument outside the mathematical domain of a function.
    class DomainError : public std::domain_error
    {
    public:
        explicit DomainError(const std::string &what) : std::domain_error(what) {}
    };

    // Series or adaptive quadrature did not reach the requested tolerance.
    class ConvergenceError : public std::runtime_error
    {
    public:
        explicit ConvergenceError(const std::string &what) : std::runtime_error(what) {}
    };

    // Beam axis (numerically) parallel to the receiver plane x = 0.
    class BeamParallelError : public std::domain_error
    {
    public:
        explicit BeamParallelError(const std::string &what) : std::domain_error(what) {}
    };

    // Mean orientation where the linearisation coefficients blow up.
    class DegenerateMeanError : public std::domain_error
    {
    public:
        explicit DegenerateMeanError(const std::string &what) : std::domain_error(what) {}
    };

    // Model parameters violating an invariant (negative variance etc.).
    class InvalidParameterError : public std::invalid_argument
    {
    public:
        explicit InvalidParameterError(const std::string &what) : std::invalid_argument(what) {}
    };

    // Malformed scenario file or CLI input.
    class ScenarioError : public std::runtime_error
    {
    public:
        explicit ScenarioError(const std::string &what) : std::runtime_error(what) {}
    };
}

#endif
