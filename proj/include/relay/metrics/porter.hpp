// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

namespace relay::metrics {

// Classic five-step Porter stemmer (the original published rule set, no
// later extensions). Expects a lowercase word; tokens containing anything
// outside [a-z] are returned unchanged, as are words of length <= 2.
std::string porter_stem(std::string_view word);

}  // namespace relay::metrics
