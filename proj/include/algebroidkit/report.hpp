// Check reports: a deterministic list of named PASS/FAIL items. A FAIL
// always carries a witness (offending indices and residuals rendered in the
// polynomial grammar).
#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace algebroidkit {

struct CheckItem {
    std::string name;
    bool pass = false;
    std::string witness; // empty on PASS, nonempty on FAIL
};

struct CheckReport {
    std::string subject;
    std::vector<CheckItem> items;

    void add_pass(std::string name) { items.push_back({std::move(name), true, {}}); }
    void add_fail(std::string name, std::string witness) {
        if (witness.empty()) witness = "(no witness)";
        items.push_back({std::move(name), false, std::move(witness)});
    }
    void add(std::string name, bool pass, std::string witness) {
        if (pass)
            add_pass(std::move(name));
        else
            add_fail(std::move(name), std::move(witness));
    }
    void append(const CheckReport& other) {
        for (const auto& item : other.items) items.push_back(item);
    }

    bool overall() const {
        for (const auto& item : items)
            if (!item.pass) return false;
        return true;
    }

    const CheckItem* find(const std::string& name) const {
        for (const auto& item : items)
            if (item.name == name) return &item;
        return nullptr;
    }
};

inline std::string render_text(const CheckReport& r) {
    std::ostringstream out;
    out << r.subject << "\n";
    for (const auto& item : r.items) {
        out << "  " << item.name << ": " << (item.pass ? "PASS" : "FAIL");
        if (!item.pass) out << "  [" << item.witness << "]";
        out << "\n";
    }
    out << "  overall: " << (r.overall() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

} // namespace algebroidkit
