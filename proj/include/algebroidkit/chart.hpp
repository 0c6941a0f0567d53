// Coordinate charts: ordered lists of named coordinates. A chart with no
// coordinates is a point; polynomials over it are constants.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace algebroidkit {

/// Identifier grammar shared by coordinate and frame names.
inline bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); };
    if (!alpha(s[0])) return false;
    for (char c : s.substr(1))
        if (!alnum(c)) return false;
    return true;
}

inline void require_distinct_identifiers(const std::vector<std::string>& names,
                                         const std::string& what) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!is_identifier(n)) throw SchemaError(what, "invalid name '" + n + "'");
        if (!seen.insert(n).second) throw SchemaError(what, "duplicate name '" + n + "'");
    }
}

class Chart {
public:
    Chart() = default;
    explicit Chart(std::vector<std::string> coords) : coords_(std::move(coords)) {
        require_distinct_identifiers(coords_, "chart");
    }

    std::size_t dim() const { return coords_.size(); }
    const std::vector<std::string>& coords() const { return coords_; }
    const std::string& coord(std::size_t a) const { return coords_.at(a); }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t a = 0; a < coords_.size(); ++a)
            if (coords_[a] == name) return a;
        return std::nullopt;
    }

    /// index_of, but throwing.
    std::size_t require(std::string_view name) const {
        if (auto a = index_of(name)) return *a;
        throw UnknownCoordinate("unknown coordinate '" + std::string(name) + "'");
    }

    friend bool operator==(const Chart& a, const Chart& b) { return a.coords_ == b.coords_; }
    friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

private:
    std::vector<std::string> coords_;
};

} // namespace algebroidkit
