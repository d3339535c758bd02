/*
 * Copyright 2026 The illposed-gd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
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

namespace illposed
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Binary operation on vectors of different dimension.
class DimensionError : public Error
{
public:
    using Error::Error;
};

/// Argument outside the documented domain of an operation.
class InvalidArgument : public Error
{
public:
    using Error::Error;
};

/// An operation refuses to run because a precondition on its inputs fails
/// (starting point outside the ball, Lipschitz constant too large, ...).
class Refusal : public Error
{
public:
    using Error::Error;
};

/// A computation produced a non-finite value.
class NumericalError : public Error
{
public:
    using Error::Error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error
{
public:
    using Error::Error;
};

}  // namespace illposed
