// SPDX-License-Identifier: Apache-2.0
//
// aperiodic-mimo: Monte-Carlo MU-MIMO evaluation and aperiodic array synthesis
// Copyright (C) 2026 The aperiodic-mimo authors
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

#ifndef APERIODIC_ERRORS_HPP
#define APERIODIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aperiodic
{
    // Every error thrown by the library derives from Error and carries a short,
    // stable category string that the command-line tool reports on failure.
    class Error : public std::runtime_error
    {
    public:
        Error(std::string category, const std::string &what)
            : std::runtime_error(what), category_(std::move(category)) {}

        const std::string &category() const noexcept { return category_; }

    private:
        std::string category_;
    };

    class InvalidArgument : public Error
    {
    public:
        explicit InvalidArgument(const std::string &what) : Error("invalid-argument", what) {}
    };

    class InvalidState : public Error
    {
    public:
        explicit InvalidState(const std::string &what) : Error("invalid-state", what) {}
    };

    // H H^dagger is numerically rank deficient (condition number above threshold).
    class SingularChannel : public Error
    {
    public:
        SingularChannel(const std::string &what, double condition)
            : Error("singular-channel", what), condition_(condition) {}

        double condition() const noexcept { return condition_; }

    private:
        double condition_;
    };

    class DegenerateProfile : public Error
    {
    public:
        explicit DegenerateProfile(const std::string &what) : Error("degenerate-profile", what) {}
    };

    class ParseError : public Error
    {
    public:
        ParseError(std::string key, const std::string &what)
            : Error("parse-error", what), key_(std::move(key)) {}

        const std::string &key() const noexcept { return key_; }

    private:
        std::string key_;
    };

    class IoError : public Error
    {
    public:
        explicit IoError(const std::string &what) : Error("io-error", what) {}
    };

} // namespace aperiodic

#endif
