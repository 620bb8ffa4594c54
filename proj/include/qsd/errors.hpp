// Copyright 2026 The qsd developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qsd {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Something the caller handed in is unusable: bad files, bad arguments,
// mismatched shapes. The command line reports these as exit code 2.
struct InputError : Error {
  using Error::Error;
};

// An internal numerical routine failed on input that passed validation.
// The command line reports these as exit code 3.
struct NumericError : Error {
  using Error::Error;
};

// A matrix that must be Hermitian is not, within hermitian_tol.
struct NotHermitian : NumericError {
  using NumericError::NumericError;
};

// An iterative routine hit its sweep or iteration cap.
struct NoConvergence : NumericError {
  using NumericError::NumericError;
};

// An eigenvalue fell below -psd_tol where positive semidefiniteness is required.
struct NotPsd : NumericError {
  using NumericError::NumericError;
};

struct DimensionMismatch : InputError {
  using InputError::InputError;
};

// Schatten exponent outside (0, inf).
struct InvalidP : InputError {
  using InputError::InputError;
};

// A scalar argument outside its documented range.
struct InvalidInput : InputError {
  using InputError::InputError;
};

// Ensemble priors are negative or do not sum to one within trace_tol.
struct BadPriors : InputError {
  using InputError::InputError;
};

// A state fails the density-matrix invariants.
struct BadState : InputError {
  using InputError::InputError;
};

// The construction would exceed the configured dimension cap.
struct TooLarge : InputError {
  using InputError::InputError;
};

struct NotTwoStates : InputError {
  using InputError::InputError;
};

// POVM outcome count differs from the ensemble state count.
struct CountMismatch : InputError {
  using InputError::InputError;
};

struct NonUniformPriors : InputError {
  using InputError::InputError;
};

struct NotPureStates : InputError {
  using InputError::InputError;
};

struct TooFewStates : InputError {
  using InputError::InputError;
};

// File content that is not syntactically or structurally readable.
// field_path points at the offending spot, e.g. "entries[2].matrix[0][1]";
// message is the description alone, what() combines the two.
struct ParseError : InputError {
  std::string field_path;
  std::string message;
  ParseError(std::string path, std::string msg)
      : InputError(path.empty() ? msg : path + ": " + msg),
        field_path(std::move(path)),
        message(std::move(msg)) {}
};

// File content that parses but violates a semantic invariant.
struct ValidationError : InputError {
  std::string field_path;
  std::string message;
  ValidationError(std::string path, std::string msg)
      : InputError(path.empty() ? msg : path + ": " + msg),
        field_path(std::move(path)),
        message(std::move(msg)) {}
};

}  // namespace qsd
