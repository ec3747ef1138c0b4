// irslink - link-level Monte Carlo simulator for IRS-aided multi-user MIMO downlink
// Copyright (C) 2026 the irslink authors
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
//
// Result serialization: the records CSV (one row per drop/scheme/mode) and
// the summary JSON, both byte-stable for a fixed resolved config.

#ifndef IRSLINK_REPORTS_HPP
#define IRSLINK_REPORTS_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "campaign.hpp"
#include "types.hpp"
#include "version.hpp"

namespace irslink {

struct RunManifest {
    std::string config_digest;
    std::string tool_version = IRSLINK_VERSION;
    std::string started_at;
    std::string finished_at;
    std::uint64_t degenerate_drop_count = 0;
};

// Numbers in reports carry 9 significant digits.
inline std::string format_g9(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// ISO-8601 UTC timestamp. Honors SOURCE_DATE_EPOCH so archived runs can be
// reproduced byte-for-byte.
inline std::string iso8601_utc_now()
{
    std::time_t t = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

// CSV rows sorted by (scheme, phase mode, drop); the bits column is empty
// for non-discrete modes.
inline std::string records_csv_text(const CampaignResult& result)
{
    std::vector<DropRecord> rows = result.records;
    std::stable_sort(rows.begin(), rows.end(), [](const DropRecord& a, const DropRecord& b) {
        if (scheme_order(a.scheme) != scheme_order(b.scheme))
            return scheme_order(a.scheme) < scheme_order(b.scheme);
        if (a.phase_mode.order_key() != b.phase_mode.order_key())
            return a.phase_mode.order_key() < b.phase_mode.order_key();
        return a.drop_index < b.drop_index;
    });

    std::ostringstream out;
    out << "drop,scheme,phase_mode,bits,sum_rate_bps_hz\n";
    for (const DropRecord& r : rows) {
        out << r.drop_index << ',' << scheme_name(r.scheme) << ',' << r.phase_mode.csv_name()
            << ',';
        if (r.phase_mode.is_discrete())
            out << r.phase_mode.bits;
        out << ',' << format_g9(r.sum_rate) << '\n';
    }
    return out.str();
}

// Summary JSON: scheme -> mode -> {mean, p5, p50}, manifest last; fixed key
// order throughout.
inline std::string summary_json_text(const CampaignResult& result, const RunManifest& manifest)
{
    std::ostringstream out;
    out << "{\n";
    Scheme last_scheme{};
    bool have_scheme = false;
    for (std::size_t i = 0; i < result.summaries.size(); ++i) {
        const SummaryEntry& e = result.summaries[i];
        if (!have_scheme || !(e.scheme == last_scheme)) {
            if (have_scheme)
                out << "\n  },\n";
            out << "  \"" << scheme_name(e.scheme) << "\": {\n";
            last_scheme = e.scheme;
            have_scheme = true;
        } else {
            out << ",\n";
        }
        out << "    \"" << e.phase_mode.label() << "\": {\"mean\": " << format_g9(e.mean)
            << ", \"p5\": " << format_g9(e.p5) << ", \"p50\": " << format_g9(e.p50) << "}";
    }
    if (have_scheme)
        out << "\n  },\n";
    out << "  \"manifest\": {\n";
    out << "    \"config_digest\": \"" << manifest.config_digest << "\",\n";
    out << "    \"tool_version\": \"" << manifest.tool_version << "\",\n";
    out << "    \"started_at\": \"" << manifest.started_at << "\",\n";
    out << "    \"finished_at\": \"" << manifest.finished_at << "\",\n";
    out << "    \"degenerate_drop_count\": " << manifest.degenerate_drop_count << "\n";
    out << "  }\n";
    out << "}\n";
    return out.str();
}

inline void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

inline void write_records_csv(const CampaignResult& result, const std::string& path)
{
    write_text_file(path, records_csv_text(result));
}

inline void write_summary_json(const CampaignResult& result, const RunManifest& manifest,
                               const std::string& path)
{
    write_text_file(path, summary_json_text(result, manifest));
}

} // namespace irslink

#endif
