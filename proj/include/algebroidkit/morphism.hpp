// Bundle maps over polynomial chart maps, canonical Phi-decompositions and
// the two morphism conditions (anchor and bracket compatibility). The
// bracket condition is checked against the canonical decomposition, which
// determines the class of all decompositions.
#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "algebroid.hpp"
#include "vector_field.hpp"

namespace algebroidkit {

class AlgebroidMorphism {
public:
    /// matrix[j][i] (over the source chart) is the coefficient of the pulled
    /// back target frame element e_j in the image of source frame element
    /// f_i: Phi(f_i) = sum_j matrix[j][i] phi*(e_j).
    AlgebroidMorphism(Algebroid source, Algebroid target, ChartMap base_map, PolyMatrix matrix)
        : source_(std::move(source)), target_(std::move(target)), base_map_(std::move(base_map)),
          matrix_(std::move(matrix)) {
        if (base_map_.source() != source_.base())
            throw ChartMismatch("morphism base map source != source algebroid base");
        if (base_map_.target() != target_.base())
            throw ChartMismatch("morphism base map target != target algebroid base");
        if (matrix_.size() != target_.rank()) throw SchemaError("matrix", "row count != target rank");
        for (const auto& row : matrix_) {
            if (row.size() != source_.rank())
                throw SchemaError("matrix", "entry count != source rank");
            for (const auto& p : row)
                if (p.chart() != source_.base())
                    throw SchemaError("matrix", "entry over wrong chart (must be source chart)");
        }
    }

    static AlgebroidMorphism identity(const Algebroid& a) {
        PolyMatrix m(a.rank(), std::vector<Poly>(a.rank(), Poly::zero(a.base())));
        for (std::size_t i = 0; i < a.rank(); ++i) m[i][i] = Poly::constant(a.base(), 1);
        return AlgebroidMorphism(a, a, ChartMap::identity(a.base()), std::move(m));
    }

    const Algebroid& source() const { return source_; }
    const Algebroid& target() const { return target_; }
    const ChartMap& base_map() const { return base_map_; }
    const PolyMatrix& matrix() const { return matrix_; }
    const Poly& entry(std::size_t j, std::size_t i) const { return matrix_.at(j).at(i); }

private:
    Algebroid source_;
    Algebroid target_;
    ChartMap base_map_;
    PolyMatrix matrix_;
};

/// Canonical Phi-decomposition of Phi(Y): coefficient g_j = sum_i f_i Phi^j_i
/// against the pulled-back target frame.
inline std::vector<Poly> phi_decompose(const AlgebroidMorphism& m, const Section& s) {
    if (s.algebroid() != m.source())
        throw AlgebroidMismatch("phi_decompose: section not over the morphism source");
    std::vector<Poly> out(m.target().rank(), Poly::zero(m.source().base()));
    for (std::size_t j = 0; j < m.target().rank(); ++j)
        for (std::size_t i = 0; i < m.source().rank(); ++i) {
            if (s.coeff(i).is_zero() || m.entry(j, i).is_zero()) continue;
            out[j] += s.coeff(i) * m.entry(j, i);
        }
    return out;
}

/// Anchor condition: sum_j Phi^j_i (rho_target)^a_j . phi
///                 = sum_b d(phi_a)/dy_b (rho_source)^b_i, per i and a.
/// Bracket condition on source frame pairs i<i', per target index m:
///   sum_k c_src^k_ii' Phi^m_k
///     = sum_{k<l} (Phi^k_i Phi^l_i' - Phi^l_i Phi^k_i') (c_tgt^m_kl . phi)
///       + rho_src(f_i)(Phi^m_i') - rho_src(f_i')(Phi^m_i).
inline CheckReport check_morphism(const AlgebroidMorphism& f,
                                  const std::string& subject = "morphism") {
    CheckReport rep;
    rep.subject = subject;
    const Algebroid& src = f.source();
    const Algebroid& tgt = f.target();
    const ChartMap& phi = f.base_map();

    bool ok = true;
    for (std::size_t i = 0; i < src.rank() && ok; ++i)
        for (std::size_t a = 0; a < tgt.dim() && ok; ++a) {
            Poly lhs(src.base());
            for (std::size_t j = 0; j < tgt.rank(); ++j) {
                if (f.entry(j, i).is_zero() || tgt.anchor()[j][a].is_zero()) continue;
                lhs += f.entry(j, i) * compose(tgt.anchor()[j][a], phi);
            }
            Poly rhs(src.base());
            for (std::size_t b = 0; b < src.dim(); ++b) {
                if (src.anchor()[i][b].is_zero()) continue;
                rhs += phi.formula(a).derivative(b) * src.anchor()[i][b];
            }
            if (lhs != rhs) {
                std::ostringstream w;
                w << "frame element " << i + 1 << ", target coordinate '" << tgt.base().coord(a)
                  << "': residual " << to_string(lhs - rhs);
                rep.add_fail("morphism_anchor", w.str());
                ok = false;
            }
        }
    if (ok) rep.add_pass("morphism_anchor");

    ok = true;
    for (std::size_t i = 0; i < src.rank() && ok; ++i)
        for (std::size_t i2 = i + 1; i2 < src.rank() && ok; ++i2) {
            auto cs = src.structure_coeffs(i, i2);
            VectorField rho_i = src.anchor_row(i);
            VectorField rho_i2 = src.anchor_row(i2);
            for (std::size_t m = 0; m < tgt.rank() && ok; ++m) {
                Poly lhs(src.base());
                for (std::size_t k = 0; k < src.rank(); ++k) {
                    if (cs[k].is_zero() || f.entry(m, k).is_zero()) continue;
                    lhs += cs[k] * f.entry(m, k);
                }
                Poly rhs(src.base());
                for (const auto& [key, cvec] : tgt.structure()) {
                    auto [k, l] = key;
                    if (cvec[m].is_zero()) continue;
                    Poly w = f.entry(k, i) * f.entry(l, i2) - f.entry(l, i) * f.entry(k, i2);
                    if (w.is_zero()) continue;
                    rhs += w * compose(cvec[m], phi);
                }
                rhs += vf_apply(rho_i, f.entry(m, i2)) - vf_apply(rho_i2, f.entry(m, i));
                if (lhs != rhs) {
                    std::ostringstream w;
                    w << "pair (" << i + 1 << "," << i2 + 1 << "), target index " << m + 1
                      << ": residual " << to_string(lhs - rhs);
                    rep.add_fail("morphism_bracket", w.str());
                    ok = false;
                }
            }
        }
    if (ok) rep.add_pass("morphism_bracket");

    return rep;
}

/// g . f: matrix product with base-map composition.
inline AlgebroidMorphism compose(const AlgebroidMorphism& g, const AlgebroidMorphism& f) {
    if (f.target() != g.source())
        throw AlgebroidMismatch("compose: morphisms do not chain");
    const std::size_t rows = g.target().rank();
    const std::size_t mid = g.source().rank();
    const std::size_t cols = f.source().rank();
    PolyMatrix m(rows, std::vector<Poly>(cols, Poly::zero(f.source().base())));
    for (std::size_t j = 0; j < rows; ++j)
        for (std::size_t i = 0; i < cols; ++i)
            for (std::size_t k = 0; k < mid; ++k) {
                if (g.entry(j, k).is_zero() || f.entry(k, i).is_zero()) continue;
                m[j][i] += compose(g.entry(j, k), f.base_map()) * f.entry(k, i);
            }
    return AlgebroidMorphism(f.source(), g.target(), compose(g.base_map(), f.base_map()),
                             std::move(m));
}

} // namespace algebroidkit
