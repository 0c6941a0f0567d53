// Polynomial vector fields and polynomial maps between charts.
#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "chart.hpp"
#include "errors.hpp"
#include "poly.hpp"

namespace algebroidkit {

class VectorField {
public:
    VectorField(Chart chart, std::vector<Poly> components)
        : chart_(std::move(chart)), comps_(std::move(components)) {
        if (comps_.size() != chart_.dim())
            throw SchemaError("vector field", "component count != chart dimension");
        for (const auto& c : comps_)
            if (c.chart() != chart_)
                throw ChartMismatch("vector field component over wrong chart");
    }

    static VectorField zero(const Chart& chart) {
        return VectorField(chart, std::vector<Poly>(chart.dim(), Poly::zero(chart)));
    }

    /// The coordinate field d/dx_a.
    static VectorField coordinate(const Chart& chart, std::size_t a) {
        auto v = zero(chart);
        v.comps_.at(a) = Poly::constant(chart, 1);
        return v;
    }

    const Chart& chart() const { return chart_; }
    const std::vector<Poly>& components() const { return comps_; }
    const Poly& component(std::size_t a) const { return comps_.at(a); }

    bool is_zero() const {
        for (const auto& c : comps_)
            if (!c.is_zero()) return false;
        return true;
    }

    VectorField& operator+=(const VectorField& o) {
        require_same_chart(o);
        for (std::size_t a = 0; a < comps_.size(); ++a) comps_[a] += o.comps_[a];
        return *this;
    }
    VectorField& operator-=(const VectorField& o) {
        require_same_chart(o);
        for (std::size_t a = 0; a < comps_.size(); ++a) comps_[a] -= o.comps_[a];
        return *this;
    }
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator-(VectorField a) {
        for (auto& c : a.comps_) c = -c;
        return a;
    }
    friend VectorField operator*(const Poly& f, VectorField v) {
        for (auto& c : v.comps_) c = f * c;
        return v;
    }
    friend bool operator==(const VectorField& a, const VectorField& b) {
        return a.chart_ == b.chart_ && a.comps_ == b.comps_;
    }
    friend bool operator!=(const VectorField& a, const VectorField& b) { return !(a == b); }

    void require_same_chart(const VectorField& o) const {
        if (chart_ != o.chart_) throw ChartMismatch("vector fields over different charts");
    }

private:
    Chart chart_;
    std::vector<Poly> comps_;
};

/// V(f) = sum_a V_a df/dx_a.
inline Poly vf_apply(const VectorField& v, const Poly& f) {
    if (v.chart() != f.chart()) throw ChartMismatch("vf_apply: chart mismatch");
    Poly out(v.chart());
    for (std::size_t a = 0; a < v.chart().dim(); ++a) {
        if (v.component(a).is_zero()) continue;
        out += v.component(a) * f.derivative(a);
    }
    return out;
}

/// [V,W]_a = V(W_a) - W(V_a).
inline VectorField vf_bracket(const VectorField& v, const VectorField& w) {
    v.require_same_chart(w);
    std::vector<Poly> comps;
    comps.reserve(v.chart().dim());
    for (std::size_t a = 0; a < v.chart().dim(); ++a)
        comps.push_back(vf_apply(v, w.component(a)) - vf_apply(w, v.component(a)));
    return VectorField(v.chart(), std::move(comps));
}

/// "(p1, p2, ...)" with canonical polynomial rendering.
inline std::string to_string(const VectorField& v) {
    std::ostringstream out;
    out << "(";
    for (std::size_t a = 0; a < v.components().size(); ++a) {
        if (a) out << ", ";
        out << to_string(v.component(a));
    }
    out << ")";
    return out.str();
}

/// A polynomial map source -> target: one formula over the source chart per
/// target coordinate.
class ChartMap {
public:
    ChartMap(Chart source, Chart target, std::vector<Poly> formulas)
        : source_(std::move(source)), target_(std::move(target)), formulas_(std::move(formulas)) {
        if (formulas_.size() != target_.dim())
            throw SchemaError("map", "formula count != target chart dimension");
        for (const auto& f : formulas_)
            if (f.chart() != source_) throw ChartMismatch("map formula over wrong chart");
    }

    static ChartMap identity(const Chart& chart) {
        std::vector<Poly> fs;
        for (std::size_t a = 0; a < chart.dim(); ++a) fs.push_back(Poly::coordinate(chart, a));
        return ChartMap(chart, chart, std::move(fs));
    }

    /// Projection selecting the named source coordinates, in target order.
    static ChartMap projection(const Chart& source, const Chart& target,
                               const std::vector<std::string>& coords) {
        if (coords.size() != target.dim())
            throw SchemaError("q", "projection coordinate count != target dimension");
        std::vector<Poly> fs;
        for (const auto& name : coords) fs.push_back(Poly::coordinate(source, name));
        return ChartMap(source, target, std::move(fs));
    }

    const Chart& source() const { return source_; }
    const Chart& target() const { return target_; }
    const std::vector<Poly>& formulas() const { return formulas_; }
    const Poly& formula(std::size_t a) const { return formulas_.at(a); }

    /// True when every formula is a single source coordinate (with unit
    /// coefficient) and no coordinate is used twice.
    bool is_coordinate_projection() const {
        std::vector<bool> used(source_.dim(), false);
        for (const auto& f : formulas_) {
            if (f.terms().size() != 1) return false;
            const auto& [m, c] = *f.terms().begin();
            if (c != 1 || total_degree(m) != 1) return false;
            for (std::size_t b = 0; b < m.size(); ++b)
                if (m[b] == 1) {
                    if (used[b]) return false;
                    used[b] = true;
                }
        }
        return true;
    }

    friend bool operator==(const ChartMap& a, const ChartMap& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.formulas_ == b.formulas_;
    }

private:
    Chart source_;
    Chart target_;
    std::vector<Poly> formulas_;
};

/// f . q for f over the target of q; the result lives over the source.
inline Poly compose(const Poly& f, const ChartMap& q) {
    if (f.chart() != q.target()) throw ChartMismatch("compose: polynomial not over map target");
    Poly out(q.source());
    for (const auto& [m, c] : f.terms()) {
        Poly term = Poly::constant(q.source(), c);
        for (std::size_t a = 0; a < m.size(); ++a)
            if (m[a] > 0) term = term * q.formula(a).pow(m[a]);
        out += term;
    }
    return out;
}

/// outer . inner as a chart map.
inline ChartMap compose(const ChartMap& outer, const ChartMap& inner) {
    if (outer.source() != inner.target())
        throw ChartMismatch("compose: chart maps do not chain");
    std::vector<Poly> fs;
    for (const auto& f : outer.formulas()) fs.push_back(compose(f, inner));
    return ChartMap(inner.source(), outer.target(), std::move(fs));
}

/// True iff V is q-projectable onto W, i.e. V(f.q) = W(f).q for all f.
/// Checked as the identity sum_b V_b d(q_a)/dy_b = W_a . q per target
/// coordinate a.
inline bool pushforward_check(const VectorField& v, const VectorField& w, const ChartMap& q) {
    if (v.chart() != q.source()) throw ChartMismatch("pushforward_check: field not over map source");
    if (w.chart() != q.target()) throw ChartMismatch("pushforward_check: field not over map target");
    for (std::size_t a = 0; a < q.target().dim(); ++a)
        if (vf_apply(v, q.formula(a)) != compose(w.component(a), q)) return false;
    return true;
}

} // namespace algebroidkit
