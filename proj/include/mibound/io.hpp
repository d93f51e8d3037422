#pragma once

// External formats: the JSON joint-distribution schema {"pxy": [[...],[...]]},
// the two-line whitespace-separated counts file, and the sweep-curve CSV.

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mibound/confidence.hpp"
#include "mibound/distribution.hpp"
#include "mibound/errors.hpp"
#include "mibound/sweep.hpp"

namespace mibound {

// Value formatted with 12 significant digits (curve CSV and JSON reports).
inline std::string format_sig(double x, int sig = 12) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", sig, x);
    return buf;
}

inline JointDist parse_joint_json(const std::string& text, ValidationPolicy policy) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("pxy")) {
        throw ParseError("expected an object with a \"pxy\" key");
    }
    const auto& pxy = doc["pxy"];
    if (!pxy.is_array() || pxy.size() != 2) {
        throw ParseError("\"pxy\" must be an array of exactly 2 rows");
    }
    std::vector<std::vector<double>> raw(2);
    for (int i = 0; i < 2; ++i) {
        const auto& row = pxy[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.empty()) {
            throw ParseError("\"pxy\" rows must be non-empty arrays");
        }
        for (const auto& x : row) {
            if (!x.is_number()) throw ParseError("\"pxy\" entries must be numbers");
            raw[static_cast<std::size_t>(i)].push_back(x.get<double>());
        }
    }
    if (raw[0].size() != raw[1].size()) {
        throw ParseError("\"pxy\" rows must have equal length");
    }
    return validate_joint(raw, policy);
}

inline nlohmann::json joint_to_json(const JointDist& j) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 2; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < j.my; ++k) row.push_back(j.at(i, k));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"pxy", std::move(rows)}};
}

// Counts file: exactly two non-blank lines of whitespace-separated
// nonnegative integers with the same count per line.
inline CountsTable parse_counts(std::istream& in) {
    std::vector<std::vector<long long>> raw;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<long long> row;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t pos = 0;
                const long long v = std::stoll(tok, &pos);
                if (pos != tok.size()) throw ParseError("counts entry is not an integer: " + tok);
                row.push_back(v);
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception&) {
                throw ParseError("counts entry is not an integer: " + tok);
            }
        }
        if (!row.empty()) raw.push_back(std::move(row));
    }
    if (raw.size() != 2) {
        throw ParseError("counts file needs exactly 2 non-blank lines, got " +
                         std::to_string(raw.size()));
    }
    if (raw[0].size() != raw[1].size()) {
        throw ParseError("counts lines must have the same number of entries");
    }
    return make_counts_table(raw);
}

// Plot-ready curve CSV: one row per grid point, gamma ascending,
// 12 significant digits.
inline void write_curve_csv(std::ostream& out, const std::vector<SweepPoint>& curve) {
    out << "gamma,I_bits,I_nats,gap_nats,status\n";
    for (const SweepPoint& pt : curve) {
        out << format_sig(pt.gamma) << ',' << format_sig(pt.value.bits()) << ','
            << format_sig(pt.value.nats) << ',' << format_sig(pt.gap_nats) << ','
            << to_string(pt.status) << '\n';
    }
}

}  // namespace mibound
