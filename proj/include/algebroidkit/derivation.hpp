// Derivations (D,V) on an algebroid. D is presented by its frame matrix and
// extended to all sections by Leibniz, so D(fX) = fD(X) + V(f)X holds by
// construction; the remaining axioms are checked.
#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "algebroid.hpp"
#include "vector_field.hpp"

namespace algebroidkit {

class Derivation {
public:
    /// matrix[j][i] is the e_j-coefficient of D(e_i); field is V.
    Derivation(Algebroid algebroid, PolyMatrix matrix, VectorField field)
        : alg_(std::move(algebroid)), matrix_(std::move(matrix)), field_(std::move(field)) {
        const std::size_t r = alg_.rank();
        if (matrix_.size() != r) throw SchemaError("matrix", "row count != rank");
        for (const auto& row : matrix_) {
            if (row.size() != r) throw SchemaError("matrix", "entry count != rank");
            for (const auto& p : row)
                if (p.chart() != alg_.base()) throw ChartMismatch("matrix entry over wrong chart");
        }
        if (field_.chart() != alg_.base()) throw ChartMismatch("base field over wrong chart");
    }

    static Derivation zero(const Algebroid& a) {
        return Derivation(a, PolyMatrix(a.rank(), std::vector<Poly>(a.rank(), Poly::zero(a.base()))),
                          VectorField::zero(a.base()));
    }

    const Algebroid& algebroid() const { return alg_; }
    const PolyMatrix& matrix() const { return matrix_; }
    const Poly& matrix_entry(std::size_t j, std::size_t i) const { return matrix_.at(j).at(i); }
    const VectorField& field() const { return field_; }

    Section column(std::size_t i) const {
        std::vector<Poly> coeffs;
        coeffs.reserve(alg_.rank());
        for (std::size_t j = 0; j < alg_.rank(); ++j) coeffs.push_back(matrix_[j][i]);
        return Section(alg_, std::move(coeffs));
    }

    bool is_zero() const {
        if (!field_.is_zero()) return false;
        for (const auto& row : matrix_)
            for (const auto& p : row)
                if (!p.is_zero()) return false;
        return true;
    }

    Derivation& operator+=(const Derivation& o) {
        require_same_algebroid(o);
        for (std::size_t j = 0; j < matrix_.size(); ++j)
            for (std::size_t i = 0; i < matrix_.size(); ++i) matrix_[j][i] += o.matrix_[j][i];
        field_ += o.field_;
        return *this;
    }
    Derivation& operator-=(const Derivation& o) {
        require_same_algebroid(o);
        for (std::size_t j = 0; j < matrix_.size(); ++j)
            for (std::size_t i = 0; i < matrix_.size(); ++i) matrix_[j][i] -= o.matrix_[j][i];
        field_ -= o.field_;
        return *this;
    }
    friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
    friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }

    /// Module action g.(D,V) = (gD, gV).
    friend Derivation operator*(const Poly& g, Derivation d) {
        for (auto& row : d.matrix_)
            for (auto& p : row) p = g * p;
        d.field_ = g * d.field_;
        return d;
    }

    friend bool operator==(const Derivation& a, const Derivation& b) {
        return a.alg_ == b.alg_ && a.matrix_ == b.matrix_ && a.field_ == b.field_;
    }
    friend bool operator!=(const Derivation& a, const Derivation& b) { return !(a == b); }

    void require_same_algebroid(const Derivation& o) const {
        if (alg_ != o.alg_) throw AlgebroidMismatch("derivations on different algebroids");
    }

private:
    Algebroid alg_;
    PolyMatrix matrix_;
    VectorField field_;
};

/// D(Y)_j = sum_i f_i d^j_i + V(f_j).
inline Section derivation_apply(const Derivation& d, const Section& s) {
    if (d.algebroid() != s.algebroid())
        throw AlgebroidMismatch("derivation_apply: algebroid mismatch");
    const std::size_t r = d.algebroid().rank();
    std::vector<Poly> out(r, Poly::zero(d.algebroid().base()));
    for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t i = 0; i < r; ++i) {
            if (s.coeff(i).is_zero() || d.matrix_entry(j, i).is_zero()) continue;
            out[j] += s.coeff(i) * d.matrix_entry(j, i);
        }
        out[j] += vf_apply(d.field(), s.coeff(j));
    }
    return Section(d.algebroid(), std::move(out));
}

/// ad(s) = [s,-] with base field rho(s).
inline Derivation inner_derivation(const Section& s) {
    const Algebroid& a = s.algebroid();
    const std::size_t r = a.rank();
    PolyMatrix m(r, std::vector<Poly>(r, Poly::zero(a.base())));
    for (std::size_t i = 0; i < r; ++i) {
        Section col = bracket(s, Section::frame(a, i));
        for (std::size_t j = 0; j < r; ++j) m[j][i] = col.coeff(j);
    }
    return Derivation(a, std::move(m), anchor_of(s));
}

/// [(D,V),(D',V')] = (D.D' - D'.D, [V,V']), normalized back to frame-matrix
/// form via the Leibniz extension.
inline Derivation der_bracket(const Derivation& d1, const Derivation& d2) {
    d1.require_same_algebroid(d2);
    const Algebroid& a = d1.algebroid();
    const std::size_t r = a.rank();
    PolyMatrix m(r, std::vector<Poly>(r, Poly::zero(a.base())));
    for (std::size_t i = 0; i < r; ++i) {
        Section col = derivation_apply(d1, d2.column(i)) - derivation_apply(d2, d1.column(i));
        for (std::size_t j = 0; j < r; ++j) m[j][i] = col.coeff(j);
    }
    return Derivation(a, std::move(m), vf_bracket(d1.field(), d2.field()));
}

/// Verifies the derivation axioms: (i) on all frame pairs, (iii) on all
/// frame elements; (ii) holds by construction and is re-verified on 5
/// random (f, s) pairs as a self-test.
inline CheckReport check_derivation(const Derivation& d,
                                    const std::string& subject = "derivation") {
    CheckReport rep;
    rep.subject = subject;
    const Algebroid& a = d.algebroid();
    const std::size_t r = a.rank();

    bool ok = true;
    for (std::size_t i = 0; i < r && ok; ++i)
        for (std::size_t j = i + 1; j < r && ok; ++j) {
            Section ei = Section::frame(a, i), ej = Section::frame(a, j);
            Section residual = derivation_apply(d, bracket(ei, ej)) -
                               bracket(derivation_apply(d, ei), ej) -
                               bracket(ei, derivation_apply(d, ej));
            if (!residual.is_zero()) {
                std::ostringstream w;
                w << "pair (" << i + 1 << "," << j + 1 << "): residual section "
                  << to_string(residual);
                rep.add_fail("derivation_i", w.str());
                ok = false;
            }
        }
    if (ok) rep.add_pass("derivation_i");

    std::mt19937_64 rng(2);
    ok = true;
    for (int trial = 0; trial < 5 && ok; ++trial) {
        Poly f = sample_poly(a.base(), 2, rng);
        Section s = sample_section(a, 2, rng);
        Section residual = derivation_apply(d, f * s) - f * derivation_apply(d, s) -
                           vf_apply(d.field(), f) * s;
        if (!residual.is_zero()) {
            rep.add_fail("derivation_ii", "self-test residual " + to_string(residual));
            ok = false;
        }
    }
    if (ok) rep.add_pass("derivation_ii");

    ok = true;
    for (std::size_t i = 0; i < r && ok; ++i) {
        VectorField residual = anchor_of(derivation_apply(d, Section::frame(a, i))) -
                               vf_bracket(d.field(), a.anchor_row(i));
        if (!residual.is_zero()) {
            std::ostringstream w;
            w << "frame element " << i + 1 << ": residual field " << to_string(residual);
            rep.add_fail("derivation_iii", w.str());
            ok = false;
        }
    }
    if (ok) rep.add_pass("derivation_iii");

    return rep;
}

} // namespace algebroidkit
