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

#include "jade/dataset.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include "jade/error.hpp"

namespace jade {
namespace {

constexpr std::string_view kMagic = "JADE1";

void append_number(std::string& out, double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    out.append(buf, static_cast<std::size_t>(len));
}

double parse_double(std::string_view text, std::size_t line_no) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ValidationError("dataset: line " + std::to_string(line_no) + ": bad number '" + std::string(text) + "'");
    return v;
}

std::size_t parse_count(const std::string& text, const char* key) {
    std::size_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || v == 0)
        throw ValidationError(std::string("dataset: header field ") + key + " must be a positive integer");
    return v;
}

}  // namespace

void write_dataset(std::ostream& os, const SnapshotSet& snaps) {
    std::string line;
    line.append(kMagic);
    line += " M=" + std::to_string(snaps.sensors()) + " N=" + std::to_string(snaps.samples()) +
            " S=" + std::to_string(snaps.snapshots()) + " delta=";
    append_number(line, snaps.array().delta);
    os << line << '\n';
    for (std::size_t s = 0; s < snaps.snapshots(); ++s) {
        for (std::size_t k = 0; k < snaps.sensors(); ++k) {
            line.clear();
            const auto row = snaps.series(s, k);
            for (std::size_t n = 0; n < row.size(); ++n) {
                if (n) line += ',';
                append_number(line, row[n].real());
                line += ':';
                append_number(line, row[n].imag());
            }
            os << line << '\n';
        }
    }
    if (!os) throw ValidationError("dataset: write failed");
}

SnapshotSet read_dataset(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw ValidationError("dataset: empty input");
    std::istringstream hs(header);
    std::string magic;
    hs >> magic;
    if (magic != kMagic) throw ValidationError("dataset: missing JADE1 header");
    std::map<std::string, std::string> fields;
    for (std::string tok; hs >> tok;) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ValidationError("dataset: bad header token '" + tok + "'");
        fields[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    for (const char* key : {"M", "N", "S", "delta"})
        if (!fields.count(key)) throw ValidationError(std::string("dataset: header lacks ") + key);

    const std::size_t m = parse_count(fields["M"], "M");
    const std::size_t n = parse_count(fields["N"], "N");
    const std::size_t s = parse_count(fields["S"], "S");
    ArrayConfig arr{static_cast<int>(m), parse_double(fields["delta"], 1)};

    ComplexVector data;
    data.reserve(s * m * n);
    std::string line;
    for (std::size_t row = 0; row < s * m; ++row) {
        const std::size_t line_no = row + 2;
        if (!std::getline(is, line))
            throw ValidationError("dataset: expected " + std::to_string(s * m) + " rows, got " + std::to_string(row));
        std::string_view rest(line);
        if (!rest.empty() && rest.back() == '\r') rest.remove_suffix(1);
        std::size_t count = 0;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = rest.substr(0, comma);
            const auto colon = item.find(':');
            if (colon == std::string_view::npos)
                throw ValidationError("dataset: line " + std::to_string(line_no) + ": sample lacks ':'");
            data.emplace_back(parse_double(item.substr(0, colon), line_no),
                              parse_double(item.substr(colon + 1), line_no));
            ++count;
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (count != n)
            throw ValidationError("dataset: line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                                  " samples, got " + std::to_string(count));
    }
    return SnapshotSet(arr, s, n, std::move(data));
}

void save_dataset(const std::string& path, const SnapshotSet& snaps) {
    std::ofstream os(path);
    if (!os) throw ValidationError("dataset: cannot open " + path + " for writing");
    write_dataset(os, snaps);
}

SnapshotSet load_dataset(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("dataset: cannot open " + path);
    return read_dataset(is);
}

}  // namespace jade
