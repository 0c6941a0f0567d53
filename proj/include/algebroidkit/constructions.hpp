// Builders for the standard algebroid constructions: tangent and zero
// algebroids, bundles of Lie algebras, transformation algebroids of
// infinitesimal Lie algebra actions, and Poisson cotangent algebroids.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "algebroid.hpp"
#include "morphism.hpp"
#include "report.hpp"

namespace algebroidkit {

/// T(M): identity anchor over the coordinate frame, zero structure. Frame
/// names are "d"+coordinate.
inline Algebroid tangent_algebroid(const Chart& chart) {
    const std::size_t m = chart.dim();
    std::vector<std::string> frame;
    PolyMatrix anchor(m, std::vector<Poly>(m, Poly::zero(chart)));
    for (std::size_t a = 0; a < m; ++a) {
        frame.push_back("d" + chart.coord(a));
        anchor[a][a] = Poly::constant(chart, 1);
    }
    return Algebroid(chart, std::move(frame), std::move(anchor), {});
}

/// The zero bundle over the chart: rank 0, all checks vacuous.
inline Algebroid zero_algebroid(const Chart& chart) {
    return Algebroid(chart, {}, {}, {});
}

/// Bundle of Lie algebras: zero anchor, user-supplied fiberwise structure
/// functions.
inline Algebroid lie_algebra_bundle(const Chart& chart, std::vector<std::string> frame,
                                    StructureMap structure) {
    PolyMatrix anchor(frame.size(), std::vector<Poly>(chart.dim(), Poly::zero(chart)));
    return Algebroid(chart, std::move(frame), std::move(anchor), std::move(structure));
}

/// A finite dimensional Lie algebra by structure constants (i<j only;
/// antisymmetry structural). The natural home of these is the chart with no
/// coordinates (a point), but any chart works via lie_algebra_bundle.
struct LieAlgebraPresentation {
    std::vector<std::string> basis;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Rational>> constants;

    std::size_t dim() const { return basis.size(); }

    void validate() const {
        require_distinct_identifiers(basis, "basis");
        for (const auto& [key, vec] : constants) {
            auto [i, j] = key;
            std::string path =
                "constants/" + std::to_string(i + 1) + "," + std::to_string(j + 1);
            if (i >= j) throw SchemaError(path, "pairs must have i<j");
            if (j >= basis.size()) throw SchemaError(path, "basis index out of range");
            if (vec.size() != basis.size()) throw SchemaError(path, "entry count != dim");
        }
    }

    /// As an algebroid over a point.
    Algebroid as_algebroid() const {
        validate();
        Chart point;
        StructureMap s;
        for (const auto& [key, vec] : constants) {
            std::vector<Poly> row;
            for (const auto& c : vec) row.push_back(Poly::constant(point, c));
            s.emplace(key, std::move(row));
        }
        return lie_algebra_bundle(point, basis, std::move(s));
    }
};

/// gamma: g -> X(M), one vector field per basis element.
struct InfinitesimalGroupAction {
    LieAlgebraPresentation algebra;
    Chart chart;
    std::vector<VectorField> fields;

    void validate() const {
        algebra.validate();
        if (fields.size() != algebra.dim())
            throw SchemaError("fields", "field count != algebra dimension");
        for (const auto& f : fields)
            if (f.chart() != chart) throw ChartMismatch("action field over wrong chart");
    }
};

/// The transformation algebroid of an infinitesimal action: anchor row i is
/// gamma(xi_i), structure functions are the constant structure constants.
/// The report records whether gamma is a Lie algebra homomorphism, which is
/// exactly the anchor-homomorphism check of the output.
inline std::pair<Algebroid, CheckReport> transformation_algebroid(
    const InfinitesimalGroupAction& a, const std::string& subject = "transformation") {
    a.validate();
    PolyMatrix anchor;
    for (const auto& f : a.fields) anchor.push_back(f.components());
    StructureMap s;
    for (const auto& [key, vec] : a.algebra.constants) {
        std::vector<Poly> row;
        for (const auto& c : vec) row.push_back(Poly::constant(a.chart, c));
        s.emplace(key, std::move(row));
    }
    Algebroid out(a.chart, a.algebra.basis, std::move(anchor), std::move(s));
    CheckReport rep = check_anchor_homomorphism(out, subject);
    return {out, rep};
}

/// Poisson bivector Pi on a chart, components stored for a<b only.
struct PoissonBivector {
    Chart chart;
    std::map<std::pair<std::size_t, std::size_t>, Poly> components;

    void validate() const {
        for (const auto& [key, p] : components) {
            auto [a, b] = key;
            std::string path =
                "components/" + std::to_string(a + 1) + "," + std::to_string(b + 1);
            if (a >= b) throw SchemaError(path, "pairs must have a<b");
            if (b >= chart.dim()) throw SchemaError(path, "coordinate index out of range");
            if (p.chart() != chart) throw SchemaError(path, "entry over wrong chart");
        }
    }

    /// Pi^{ab} for arbitrary a,b with structural antisymmetry.
    Poly component(std::size_t a, std::size_t b) const {
        if (a == b) return Poly::zero(chart);
        bool flip = a > b;
        if (flip) std::swap(a, b);
        auto it = components.find({a, b});
        if (it == components.end()) return Poly::zero(chart);
        return flip ? -it->second : it->second;
    }
};

/// The cotangent algebroid of a bivector: frame dx_a, anchor -Pi~ (so the
/// anchor row a has components -Pi^{ab}), and exact-form bracket
/// [dx_a, dx_b] = -sum_k dPi^{ab}/dx_k dx_k. The relative sign of anchor
/// and bracket is pinned by the Lie-Poisson so(3)* case: with this pairing
/// the output passes anchor_hom and jacobi_frame exactly when the Schouten
/// bracket [Pi,Pi] vanishes.
inline std::pair<Algebroid, CheckReport> poisson_cotangent(const PoissonBivector& b,
                                                           const std::string& subject =
                                                               "poisson_cotangent") {
    b.validate();
    const Chart& chart = b.chart;
    const std::size_t m = chart.dim();
    std::vector<std::string> frame;
    for (std::size_t a = 0; a < m; ++a) frame.push_back("d" + chart.coord(a));
    PolyMatrix anchor(m, std::vector<Poly>(m, Poly::zero(chart)));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t c = 0; c < m; ++c) anchor[a][c] = -b.component(a, c);
    StructureMap s;
    for (const auto& [key, pi] : b.components) {
        std::vector<Poly> row;
        row.reserve(m);
        for (std::size_t k = 0; k < m; ++k) row.push_back(-pi.derivative(k));
        s.emplace(key, std::move(row));
    }
    Algebroid out(chart, std::move(frame), std::move(anchor), std::move(s));
    CheckReport rep = check_anchor_homomorphism(out, subject);
    rep.append(check_jacobi_frame(out, subject));
    rep.subject = subject;
    return {out, rep};
}

/// The anchor as a morphism g -> T(M) over the identity: the matrix is the
/// transposed anchor matrix. It verifies as a morphism exactly when the
/// algebroid's own axiom checks pass.
inline AlgebroidMorphism anchor_morphism(const Algebroid& a) {
    Algebroid tangent = tangent_algebroid(a.base());
    PolyMatrix m(a.dim(), std::vector<Poly>(a.rank(), Poly::zero(a.base())));
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t c = 0; c < a.dim(); ++c) m[c][i] = a.anchor()[i][c];
    return AlgebroidMorphism(a, tangent, ChartMap::identity(a.base()), std::move(m));
}

} // namespace algebroidkit
