// Infinitesimal actions of one algebroid on another along a submersion,
// semi-direct products, split extensions and their curvature.
#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "algebroid.hpp"
#include "derivation.hpp"
#include "report.hpp"
#include "vector_field.hpp"

namespace algebroidkit {

/// An action of `acting` (over M) on `acted` (over N) along q: N -> M,
/// specified on the frame of `acting` by one derivation of `acted` per
/// frame element; C^inf(M)-linearity extends it. q is restricted to
/// coordinate projections so that pullback along q stays polynomial.
class AlgebroidAction {
public:
    AlgebroidAction(Algebroid acting, Algebroid acted, ChartMap q, std::vector<Derivation> nabla)
        : acting_(std::move(acting)), acted_(std::move(acted)), q_(std::move(q)),
          nabla_(std::move(nabla)) {
        if (q_.source() != acted_.base())
            throw ChartMismatch("action: q source != acted base chart");
        if (q_.target() != acting_.base())
            throw ChartMismatch("action: q target != acting base chart");
        if (!q_.is_coordinate_projection())
            throw SchemaError("q", "q must be a coordinate projection");
        if (nabla_.size() != acting_.rank())
            throw SchemaError("nabla", "derivation count != rank of acting algebroid");
        for (const auto& d : nabla_)
            if (d.algebroid() != acted_)
                throw AlgebroidMismatch("action: derivation not on the acted algebroid");
    }

    const Algebroid& acting() const { return acting_; }
    const Algebroid& acted() const { return acted_; }
    const ChartMap& q() const { return q_; }
    const std::vector<Derivation>& nabla() const { return nabla_; }
    const Derivation& nabla_at(std::size_t i) const { return nabla_.at(i); }

private:
    Algebroid acting_;
    Algebroid acted_;
    ChartMap q_;
    std::vector<Derivation> nabla_;
};

/// Verifies, in order: (a) every nabla_i is a derivation of the acted
/// algebroid; (b) the family condition dq.rho = 0; (c) projectability of
/// each R_i = nabla_i's base field onto rho(e_i) along q; (d) the
/// homomorphism condition der_bracket(nabla_i, nabla_j) =
/// sum_k (c^k_ij . q) nabla_k, compared exactly on frame matrices and base
/// fields.
inline CheckReport check_action(const AlgebroidAction& act,
                                const std::string& subject = "action") {
    CheckReport rep;
    rep.subject = subject;
    const Algebroid& g = act.acting();
    const Algebroid& h = act.acted();
    const ChartMap& q = act.q();

    bool ok = true;
    for (std::size_t i = 0; i < g.rank() && ok; ++i) {
        CheckReport sub = check_derivation(act.nabla_at(i));
        if (!sub.overall()) {
            for (const auto& item : sub.items)
                if (!item.pass) {
                    std::ostringstream w;
                    w << "nabla " << i + 1 << ": " << item.name << ": " << item.witness;
                    rep.add_fail("action_derivations", w.str());
                    break;
                }
            ok = false;
        }
    }
    if (ok) rep.add_pass("action_derivations");

    ok = true;
    VectorField zero_on_m = VectorField::zero(g.base());
    for (std::size_t k = 0; k < h.rank() && ok; ++k) {
        if (!pushforward_check(anchor_of(Section::frame(h, k)), zero_on_m, q)) {
            std::ostringstream w;
            w << "acted frame element " << k + 1 << ": anchor "
              << to_string(anchor_of(Section::frame(h, k))) << " is not killed by q";
            rep.add_fail("action_family", w.str());
            ok = false;
        }
    }
    if (ok) rep.add_pass("action_family");

    ok = true;
    for (std::size_t i = 0; i < g.rank() && ok; ++i) {
        if (!pushforward_check(act.nabla_at(i).field(), g.anchor_row(i), q)) {
            std::ostringstream w;
            w << "R(" << i + 1 << ") = " << to_string(act.nabla_at(i).field())
              << " is not q-projectable onto " << to_string(g.anchor_row(i));
            rep.add_fail("action_project", w.str());
            ok = false;
        }
    }
    if (ok) rep.add_pass("action_project");

    ok = true;
    for (std::size_t i = 0; i < g.rank() && ok; ++i)
        for (std::size_t j = i + 1; j < g.rank() && ok; ++j) {
            Derivation lhs = der_bracket(act.nabla_at(i), act.nabla_at(j));
            Derivation rhs = Derivation::zero(h);
            auto cs = g.structure_coeffs(i, j);
            for (std::size_t k = 0; k < g.rank(); ++k) {
                if (cs[k].is_zero()) continue;
                rhs += compose(cs[k], q) * act.nabla_at(k);
            }
            if (lhs != rhs) {
                Derivation diff = lhs - rhs;
                std::ostringstream w;
                w << "pair (" << i + 1 << "," << j + 1 << "): residual field "
                  << to_string(diff.field()) << ", residual matrix columns";
                for (std::size_t c = 0; c < h.rank(); ++c)
                    w << " " << to_string(diff.column(c));
                rep.add_fail("action_hom", w.str());
                ok = false;
            }
        }
    if (ok) rep.add_pass("action_hom");

    return rep;
}

/// Default frame naming for a semi-direct product: the acting frame then the
/// acted frame, disambiguated by "g_"/"h_" prefixes when they collide.
inline std::vector<std::string> semidirect_frame_names(const Algebroid& g, const Algebroid& h) {
    std::vector<std::string> names;
    bool clash = false;
    for (const auto& n : g.frame_names())
        for (const auto& m : h.frame_names())
            if (n == m) clash = true;
    for (const auto& n : g.frame_names()) names.push_back(clash ? "g_" + n : n);
    for (const auto& n : h.frame_names()) names.push_back(clash ? "h_" + n : n);
    return names;
}

/// The semi-direct product over N: rank r+s with frame (q*e_1..q*e_r,
/// f_1..f_s), anchor rows (R_i; rho_h), and bracket
///   [q*e_i, q*e_j] = sum_k (c^k_ij . q) q*e_k,
///   [q*e_i, f_k]   = nabla_i(f_k),
///   [f_k, f_l]     = acted bracket.
/// The action is validated first unless `force` is set (negative tests
/// build invalid products deliberately).
inline Algebroid semidirect_product(const AlgebroidAction& act, bool force = false,
                                    std::optional<std::vector<std::string>> frame_names =
                                        std::nullopt) {
    if (!force) {
        CheckReport rep = check_action(act);
        if (!rep.overall()) {
            std::string why;
            for (const auto& item : rep.items)
                if (!item.pass) {
                    why = item.name + ": " + item.witness;
                    break;
                }
            throw PreconditionError("semidirect_product: action check failed (" + why +
                                    "); build with force to override");
        }
    }
    const Algebroid& g = act.acting();
    const Algebroid& h = act.acted();
    const Chart& n = h.base();
    const std::size_t r = g.rank();
    const std::size_t s = h.rank();

    std::vector<std::string> frame =
        frame_names ? std::move(*frame_names) : semidirect_frame_names(g, h);
    if (frame.size() != r + s) throw SchemaError("frame", "name count != product rank");

    PolyMatrix anchor;
    anchor.reserve(r + s);
    for (std::size_t i = 0; i < r; ++i) anchor.push_back(act.nabla_at(i).field().components());
    for (std::size_t k = 0; k < s; ++k) anchor.push_back(h.anchor()[k]);

    StructureMap structure;
    auto zero_vec = [&] { return std::vector<Poly>(r + s, Poly::zero(n)); };
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            auto cs = g.structure_coeffs(i, j);
            auto vec = zero_vec();
            for (std::size_t k = 0; k < r; ++k)
                if (!cs[k].is_zero()) vec[k] = compose(cs[k], act.q());
            structure.emplace(std::make_pair(i, j), std::move(vec));
        }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < s; ++k) {
            auto vec = zero_vec();
            for (std::size_t l = 0; l < s; ++l) vec[r + l] = act.nabla_at(i).matrix_entry(l, k);
            structure.emplace(std::make_pair(i, r + k), std::move(vec));
        }
    for (std::size_t k = 0; k < s; ++k)
        for (std::size_t l = k + 1; l < s; ++l) {
            auto cs = h.structure_coeffs(k, l);
            auto vec = zero_vec();
            for (std::size_t m = 0; m < s; ++m) vec[r + m] = cs[m];
            structure.emplace(std::make_pair(r + k, r + l), std::move(vec));
        }
    return Algebroid(n, std::move(frame), std::move(anchor), std::move(structure));
}

/// A presentation of 0 -> h -> k -> q*g -> 0 with an adapted frame: the
/// first `split_rank` frame elements of k are the lifted g-frame (the
/// splitting i), the rest are the h-frame (the inclusion j). The h-block of
/// k must reproduce h's anchor and structure exactly.
class SplitExtension {
public:
    SplitExtension(Algebroid total, Algebroid sub, Algebroid acting, ChartMap q,
                   std::size_t split_rank)
        : total_(std::move(total)), sub_(std::move(sub)), acting_(std::move(acting)),
          q_(std::move(q)), split_rank_(split_rank) {
        if (q_.source() != sub_.base() || q_.source() != total_.base())
            throw ChartMismatch("extension: charts of total and sub must equal q source");
        if (q_.target() != acting_.base())
            throw ChartMismatch("extension: q target != acting base chart");
        if (!q_.is_coordinate_projection())
            throw SchemaError("q", "q must be a coordinate projection");
        if (split_rank_ != acting_.rank())
            throw SchemaError("split_rank", "split rank != rank of acting algebroid");
        if (total_.rank() != split_rank_ + sub_.rank())
            throw SchemaError("total", "rank != split_rank + rank of sub");
        const std::size_t r = split_rank_;
        for (std::size_t k = 0; k < sub_.rank(); ++k)
            if (total_.anchor()[r + k] != sub_.anchor()[k])
                throw SchemaError("total/anchor",
                                  "sub-structure mismatch: anchor row " + std::to_string(r + k + 1) +
                                      " differs from sub algebroid");
        for (std::size_t k = 0; k < sub_.rank(); ++k)
            for (std::size_t l = k + 1; l < sub_.rank(); ++l) {
                auto vec = total_.structure_coeffs(r + k, r + l);
                auto sub_vec = sub_.structure_coeffs(k, l);
                for (std::size_t m = 0; m < r; ++m)
                    if (!vec[m].is_zero())
                        throw SchemaError("total/structure",
                                          "sub-structure mismatch: bracket of sub frame elements " +
                                              std::to_string(k + 1) + "," + std::to_string(l + 1) +
                                              " has a nonzero lifted part");
                for (std::size_t m = 0; m < sub_.rank(); ++m)
                    if (vec[r + m] != sub_vec[m])
                        throw SchemaError("total/structure",
                                          "sub-structure mismatch: h-block bracket " +
                                              std::to_string(k + 1) + "," + std::to_string(l + 1) +
                                              " differs from sub algebroid");
            }
    }

    const Algebroid& total() const { return total_; }
    const Algebroid& sub() const { return sub_; }
    const Algebroid& acting() const { return acting_; }
    const ChartMap& q() const { return q_; }
    std::size_t split_rank() const { return split_rank_; }

private:
    Algebroid total_;
    Algebroid sub_;
    Algebroid acting_;
    ChartMap q_;
    std::size_t split_rank_;
};

/// Curvature of the splitting and the connection read off from the mixed
/// brackets: j(kappa(e_i,e_j)) = [i(q*e_i), i(q*e_j)]_k - i(q*[e_i,e_j]_g)
/// and j(nabla_i(f_k)) = [i(q*e_i), j(f_k)]_k, with R_i = rho_k(i(q*e_i)).
struct CurvatureResult {
    std::map<std::pair<std::size_t, std::size_t>, Section> kappa;
    std::vector<Derivation> nabla;
    // False when some bracket of lifted elements leaks outside the
    // presentation: a mixed bracket with a nonzero lifted part, or a pure
    // lifted pair whose lifted part differs from (c_g . q).
    bool g_part_consistent = true;
    std::string witness;

    bool kappa_zero() const {
        for (const auto& [key, sec] : kappa)
            if (!sec.is_zero()) return false;
        return true;
    }
};

inline CurvatureResult curvature_form(const SplitExtension& ext) {
    CurvatureResult out;
    const Algebroid& k = ext.total();
    const Algebroid& h = ext.sub();
    const Algebroid& g = ext.acting();
    const std::size_t r = ext.split_rank();
    const std::size_t s = h.rank();

    auto note_inconsistent = [&](const std::string& msg) {
        if (out.g_part_consistent) {
            out.g_part_consistent = false;
            out.witness = msg;
        }
    };

    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            auto vec = k.structure_coeffs(i, j);
            auto lifted = g.structure_coeffs(i, j);
            for (std::size_t m = 0; m < r; ++m)
                if (vec[m] != compose(lifted[m], ext.q()))
                    note_inconsistent("lifted part of [k_" + std::to_string(i + 1) + ",k_" +
                                      std::to_string(j + 1) + "] differs from the acting bracket");
            std::vector<Poly> h_part(vec.begin() + static_cast<std::ptrdiff_t>(r), vec.end());
            out.kappa.emplace(std::make_pair(i, j), Section(h, std::move(h_part)));
        }

    for (std::size_t i = 0; i < r; ++i) {
        PolyMatrix m(s, std::vector<Poly>(s, Poly::zero(h.base())));
        for (std::size_t c = 0; c < s; ++c) {
            auto vec = k.structure_coeffs(i, r + c);
            for (std::size_t gpart = 0; gpart < r; ++gpart)
                if (!vec[gpart].is_zero())
                    note_inconsistent("mixed bracket [k_" + std::to_string(i + 1) + ",f_" +
                                      std::to_string(c + 1) + "] has a nonzero lifted part");
            for (std::size_t row = 0; row < s; ++row) m[row][c] = vec[r + row];
        }
        out.nabla.emplace_back(h, std::move(m), VectorField(k.base(), k.anchor()[i]));
    }
    return out;
}

/// Flatness: [kappa(e_i,e_j), Y] = 0 for every section Y of the sub
/// algebroid. By the Leibniz expansion [kappa, g f_k] = g [kappa, f_k] +
/// rho(kappa)(g) f_k this is equivalent to the frame brackets vanishing
/// together with rho(kappa) = 0, which is what gets checked. Also reports
/// whether kappa vanishes identically (the stronger condition under which
/// the extension is a semi-direct product).
inline CheckReport check_flat(const SplitExtension& ext,
                              const std::string& subject = "extension") {
    CheckReport rep;
    rep.subject = subject;
    CurvatureResult cur = curvature_form(ext);
    const Algebroid& h = ext.sub();

    bool ok = true;
    for (const auto& [key, kap] : cur.kappa) {
        if (kap.is_zero()) continue;
        for (std::size_t k = 0; k < h.rank() && ok; ++k) {
            Section res = bracket(kap, Section::frame(h, k));
            if (!res.is_zero()) {
                std::ostringstream w;
                w << "[kappa(" << key.first + 1 << "," << key.second + 1 << "), f_" << k + 1
                  << "] = " << to_string(res);
                rep.add_fail("flatness", w.str());
                ok = false;
            }
        }
        if (ok && !anchor_of(kap).is_zero()) {
            std::ostringstream w;
            w << "rho(kappa(" << key.first + 1 << "," << key.second + 1
              << ")) = " << to_string(anchor_of(kap))
              << " does not vanish, so kappa brackets nontrivially with function multiples";
            rep.add_fail("flatness", w.str());
            ok = false;
        }
        if (!ok) break;
    }
    if (ok) rep.add_pass("flatness");

    if (cur.kappa_zero()) {
        rep.add_pass("kappa_zero");
    } else {
        for (const auto& [key, kap] : cur.kappa)
            if (!kap.is_zero()) {
                std::ostringstream w;
                w << "kappa(" << key.first + 1 << "," << key.second + 1
                  << ") = " << to_string(kap);
                rep.add_fail("kappa_zero", w.str());
                break;
            }
    }
    return rep;
}

struct ReconstructResult {
    AlgebroidAction action;
    CheckReport action_report;
    Algebroid product;
    bool structurally_equal = false;
};

/// For a flat splitting with kappa = 0: reads the action off the extension,
/// checks it, rebuilds the semi-direct product with the original frame
/// names, and compares anchor and structure data with the total algebroid.
inline ReconstructResult reconstruct_from_split(const SplitExtension& ext) {
    CurvatureResult cur = curvature_form(ext);
    if (!cur.kappa_zero()) {
        for (const auto& [key, kap] : cur.kappa)
            if (!kap.is_zero())
                throw PreconditionError("reconstruct_from_split: kappa(" +
                                        std::to_string(key.first + 1) + "," +
                                        std::to_string(key.second + 1) +
                                        ") = " + to_string(kap) + " is nonzero");
    }
    if (!cur.g_part_consistent)
        throw PreconditionError("reconstruct_from_split: " + cur.witness);
    AlgebroidAction action(ext.acting(), ext.sub(), ext.q(), cur.nabla);
    CheckReport rep = check_action(action, "reconstructed action");
    Algebroid product = semidirect_product(action, /*force=*/true, ext.total().frame_names());
    bool equal = product == ext.total();
    return ReconstructResult{std::move(action), std::move(rep), std::move(product), equal};
}

} // namespace algebroidkit
