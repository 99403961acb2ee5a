// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "sandpile/graph.hpp"

namespace sandpile {

/// Reads "n m k", m edge lines, n chip counts and k sink ids. Ids are 1-based
/// in the text. The result is not validated beyond graph construction.
SandpileInstance read_instance(std::istream& in);
SandpileInstance read_instance_file(const std::string& path);

void write_instance(std::ostream& out, const SandpileInstance& instance);

}  // namespace sandpile
