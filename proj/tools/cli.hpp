// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <string>
#include <vector>

namespace proxylight::cli {

// Full command-line entry point, argv[0] excluded. Returns the process exit
// code: 0 success, 1 runtime/I-O failure, 2 usage or constraint violation.
int run(const std::vector<std::string>& args);

}  // namespace proxylight::cli
