// scspeech/common.h

// Copyright 2026  scspeech authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SCSPEECH_COMMON_H_
#define SCSPEECH_COMMON_H_

#include <sstream>
#include <stdexcept>
#include <string>

namespace scspeech {

inline constexpr const char *kVersion = "0.1.0";

// All signal processing and model math runs in double precision; file
// formats that the toolkit defines as float32 cast on the way out.
using real = double;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

#define SC_CHECK(cond, msg)                                     \
  do {                                                          \
    if (!(cond)) {                                              \
      std::ostringstream sc_check_os_;                          \
      sc_check_os_ << "check failed: " #cond ": " << msg;       \
      throw ::scspeech::Error(sc_check_os_.str());              \
    }                                                           \
  } while (0)

}  // namespace scspeech

#endif  // SCSPEECH_COMMON_H_
