// Copyright 2026 forensic-dl contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FDL_ERRORS_HPP
#define FDL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fdl {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An axiom uses a construct outside the executable Horn fragment.
class UnsupportedConstructError : public Error {
public:
    using Error::Error;
};

/// A query concept uses a construct the query evaluator does not accept.
class UnsupportedQueryError : public Error {
public:
    using Error::Error;
};

/// Materialization exceeded the configured derived-fact cap.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

class UnknownClassError : public Error {
public:
    using Error::Error;
};

/// Requested an explanation for a fact that is not in the closure.
class NotDerivedError : public Error {
public:
    using Error::Error;
};

/// The learner found no hypothesis scoring above Top.
class NoHypothesisError : public Error {
public:
    using Error::Error;
};

/// An annotation record references an identifier that was never declared.
class DanglingReferenceError : public Error {
public:
    using Error::Error;
};

class MalformedCoordinateError : public Error {
public:
    using Error::Error;
};

/// The generator was asked to plant instances of a class with no GCI bodies.
class NoGciForClassError : public Error {
public:
    using Error::Error;
};

} // namespace fdl

#endif
