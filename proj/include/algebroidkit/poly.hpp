// Exact multivariate polynomials over a chart, with rational coefficients.
// Canonical form: a term map ordered by graded lexicographic order on the
// exponent vectors (chart coordinate order breaks degree ties); no zero
// coefficients are ever stored, so equal polynomials have identical maps
// and is_zero is map emptiness.
#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chart.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace algebroidkit {

using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), std::uint64_t{0});
}

struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        auto da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

class Poly {
public:
    using TermMap = std::map<Monomial, Rational, GrlexLess>;

    Poly() = default;
    explicit Poly(Chart chart) : chart_(std::move(chart)) {}

    static Poly zero(const Chart& chart) { return Poly(chart); }

    static Poly constant(const Chart& chart, const Rational& c) {
        Poly p(chart);
        if (c != 0) p.terms_.emplace(Monomial(chart.dim(), 0), c);
        return p;
    }

    static Poly monomial(const Chart& chart, Monomial exps, const Rational& c) {
        if (exps.size() != chart.dim())
            throw SchemaError("monomial", "exponent vector length != chart dimension");
        Poly p(chart);
        if (c != 0) p.terms_.emplace(std::move(exps), c);
        return p;
    }

    static Poly coordinate(const Chart& chart, std::size_t a) {
        Monomial m(chart.dim(), 0);
        m.at(a) = 1;
        return monomial(chart, std::move(m), 1);
    }

    static Poly coordinate(const Chart& chart, std::string_view name) {
        return coordinate(chart, chart.require(name));
    }

    const Chart& chart() const { return chart_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Total degree; -1 for the zero polynomial.
    int degree() const {
        return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.rbegin()->first));
    }

    bool is_constant() const { return terms_.empty() || degree() == 0; }

    /// The constant term (0 if absent).
    Rational constant_term() const {
        auto it = terms_.find(Monomial(chart_.dim(), 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Poly& operator+=(const Poly& o) {
        require_same_chart(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        require_same_chart(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Poly& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto& [m, v] : terms_) v *= c;
        }
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.require_same_chart(b);
        Poly out(a.chart_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma);
                for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                out.add_term(m, ca * cb);
            }
        return out;
    }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

    Poly pow(std::uint32_t k) const {
        Poly result = constant(chart_, 1);
        Poly base = *this;
        while (k > 0) {
            if (k & 1u) result = result * base;
            base = base * base;
            k >>= 1u;
        }
        return result;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.chart_ == b.chart_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Formal partial derivative with respect to coordinate index a.
    Poly derivative(std::size_t a) const {
        if (a >= chart_.dim()) throw UnknownCoordinate("coordinate index out of range");
        Poly out(chart_);
        for (const auto& [m, c] : terms_) {
            if (m[a] == 0) continue;
            Monomial d(m);
            d[a] -= 1;
            out.add_term(d, c * Rational(m[a]));
        }
        return out;
    }
    Poly derivative(std::string_view coord) const { return derivative(chart_.require(coord)); }

    Rational evaluate(std::span<const Rational> point) const {
        if (point.size() != chart_.dim())
            throw ChartMismatch("evaluation point has wrong dimension");
        Rational acc = 0;
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (std::size_t a = 0; a < m.size(); ++a)
                for (std::uint32_t k = 0; k < m[a]; ++k) t *= point[a];
            acc += t;
        }
        return acc;
    }

    /// Leading term in grlex order; polynomial must be nonzero.
    std::pair<Monomial, Rational> leading_term() const {
        return {terms_.rbegin()->first, terms_.rbegin()->second};
    }

    void require_same_chart(const Poly& o) const {
        if (chart_ != o.chart_) throw ChartMismatch("polynomials over different charts");
    }

private:
    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Chart chart_;
    TermMap terms_;
};

/// Exact quotient a/b, or nullopt when b does not divide a.
inline std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    a.require_same_chart(b);
    if (b.is_zero()) return std::nullopt;
    Poly rem = a;
    Poly quot(a.chart());
    const auto [lmb, lcb] = b.leading_term();
    while (!rem.is_zero()) {
        const auto [lmr, lcr] = rem.leading_term();
        Monomial q(lmr);
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] < lmb[i]) return std::nullopt;
            q[i] -= lmb[i];
        }
        Poly t = Poly::monomial(a.chart(), std::move(q), lcr / lcb);
        quot += t;
        rem -= t * b;
    }
    return quot;
}

// ---------------------------------------------------------------------------
// Text grammar. Terms joined by +/-; a term is multiplicative atoms joined
// by '*', where an atom is a rational "a" or "a/b" (first atom only) or a
// power "name" / "name^k". Whitespace is insignificant. The empty sum is "0".
// ---------------------------------------------------------------------------

namespace detail {

struct PolyLexer {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                     text[pos] == '\r'))
            ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos == text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    Integer integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == start) throw GrammarError("expected integer", start);
        return Integer(std::string(text.substr(start, pos - start)));
    }
    std::string name() {
        skip_ws();
        std::size_t start = pos;
        auto alpha = [](char c) {
            return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
        };
        auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); };
        if (pos >= text.size() || !alpha(text[pos])) throw GrammarError("expected name", start);
        ++pos;
        while (pos < text.size() && alnum(text[pos])) ++pos;
        return std::string(text.substr(start, pos - start));
    }
};

} // namespace detail

inline Poly parse_poly(const Chart& chart, std::string_view text) {
    detail::PolyLexer lex{text};
    Poly result(chart);

    auto parse_term = [&](bool negative) {
        Rational coeff = negative ? -1 : 1;
        Monomial exps(chart.dim(), 0);
        bool first_atom = true;
        while (true) {
            char c = lex.peek();
            if (c >= '0' && c <= '9') {
                if (!first_atom)
                    throw GrammarError("coefficient must lead its term", lex.pos);
                Integer num = lex.integer();
                Integer den = 1;
                if (lex.accept('/')) den = lex.integer();
                coeff *= make_rational(num, den);
            } else {
                std::size_t name_pos = lex.pos;
                std::string id = lex.name();
                auto idx = chart.index_of(id);
                if (!idx)
                    throw GrammarError("unknown coordinate '" + id + "'", name_pos);
                std::uint32_t k = 1;
                if (lex.accept('^')) {
                    lex.skip_ws();
                    if (lex.peek() == '-' || lex.peek() == '+')
                        throw GrammarError("exponent must be a non-negative integer", lex.pos);
                    k = static_cast<std::uint32_t>(lex.integer());
                }
                exps[*idx] += k;
            }
            first_atom = false;
            if (!lex.accept('*')) break;
        }
        result += Poly::monomial(chart, std::move(exps), coeff);
    };

    if (lex.at_end()) throw GrammarError("empty polynomial", 0);
    bool neg = false;
    if (lex.accept('-'))
        neg = true;
    else
        lex.accept('+');
    parse_term(neg);
    while (!lex.at_end()) {
        if (lex.accept('+'))
            parse_term(false);
        else if (lex.accept('-'))
            parse_term(true);
        else
            throw GrammarError("expected '+' or '-'", lex.pos);
    }
    return result;
}

/// Canonical rendering: terms in descending grlex order, '*' between factors,
/// '^' for exponents >= 2, unit coefficients omitted next to factors.
inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool has_factor = total_degree(m) > 0;
        bool coeff_shown = !has_factor || a != 1;
        if (coeff_shown) out << to_string(a);
        bool need_star = coeff_shown;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (need_star) out << "*";
            out << p.chart().coord(i);
            if (m[i] >= 2) out << "^" << m[i];
            need_star = true;
        }
    }
    return out.str();
}

} // namespace algebroidkit
