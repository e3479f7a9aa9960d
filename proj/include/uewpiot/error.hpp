// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

#ifndef UEWPIOT_ERROR_HPP
#define UEWPIOT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace uewpiot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameter or configuration value.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Link geometry violates d >= H >= 0 or d > 0.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// A requested operating point cannot be met (height, latency, dead link).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Requested solver cannot handle the instance size.
class CapabilityError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace uewpiot

#endif
