// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

namespace hydronoise::cli {

/// Entry point of the `hydronoise` tool. Returns 0 on success, 1 on a
/// runtime failure and 2 on a usage or configuration error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hydronoise::cli
