// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace bridgecons {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands disagree on node count or state dimension.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Metropolis weights requested for a directed topology.
class MetropolisOnDirected : public Error {
public:
    using Error::Error;
};

/// No node participates, so no average is defined.
class NoParticipants : public Error {
public:
    using Error::Error;
};

/// A participating node has no initial value.
class MissingValue : public Error {
public:
    using Error::Error;
};

/// A matrix required to be symmetric positive definite is not.
class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

/// A type invariant was violated at construction.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Scenario text could not be parsed; message names the field or position.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A parsed scenario fails semantic validation.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoFailure : public Error {
public:
    using Error::Error;
};

}  // namespace bridgecons
