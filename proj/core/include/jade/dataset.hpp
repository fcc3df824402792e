// SPDX-License-Identifier: Apache-2.0
//
// jade: joint angle and delay estimation for faded multipath arrays
// Copyright (C) 2026 The jade authors
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

#pragma once

#include <iosfwd>
#include <string>

#include "jade/channel.hpp"

namespace jade {

// Text dataset:
//   JADE1 M=<M> N=<N> S=<S> delta=<delta>
// followed by S*M lines (snapshot major, sensor minor), each holding N
// comma-separated re:im samples.

void write_dataset(std::ostream& os, const SnapshotSet& snaps);
SnapshotSet read_dataset(std::istream& is);

void save_dataset(const std::string& path, const SnapshotSet& snaps);
SnapshotSet load_dataset(const std::string& path);

}  // namespace jade
