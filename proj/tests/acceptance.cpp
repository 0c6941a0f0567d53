// Acceptance suite: one test case per criterion, each printing a single
// PASS/FAIL line. All comparisons are exact; no tolerances anywhere.
#include <catch2/catch_amalgamated.hpp>

#include <algebroidkit/actions.hpp>
#include <algebroidkit/constructions.hpp>
#include <algebroidkit/derivation.hpp>
#include <algebroidkit/io.hpp>
#include <algebroidkit/morphism.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

#include "support/fixtures.hpp"
#include "support/naive.hpp"

using namespace algebroidkit;

namespace {

struct Criterion {
    std::string label;
    bool ok = true;
    std::vector<std::string> failures;

    explicit Criterion(std::string l) : label(std::move(l)) {}
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
    void finish() const {
        std::cout << label << ": " << (ok ? "PASS" : "FAIL") << std::endl;
        for (const auto& f : failures) std::cout << "    failed: " << f << std::endl;
        REQUIRE(ok);
    }
};

bool axiom_suite_passes(const Algebroid& a, std::string* why = nullptr) {
    CheckReport rep = check_anchor_homomorphism(a);
    rep.append(check_jacobi_frame(a));
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
        rep.append(check_jacobi_random(a, 25, 2, seed));
    if (!rep.overall() && why) {
        for (const auto& item : rep.items)
            if (!item.pass) {
                *why = item.name + ": " + item.witness;
                break;
            }
    }
    return rep.overall();
}

struct CmdResult {
    int exit_code = -1;
    std::string output;
};

CmdResult run_cli(const std::string& args) {
    static int counter = 0;
    auto out_path = std::filesystem::temp_directory_path() /
                    ("algebroidkit_cli_" + std::to_string(counter++) + ".out");
    std::string cmd = std::string(AK_CLI_PATH) + " " + args + " > " + out_path.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    CmdResult res;
    res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(out_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    res.output = buf.str();
    std::filesystem::remove(out_path);
    return res;
}

bool schouten_vanishes(const PoissonBivector& b) {
    const std::size_t n = b.chart.dim();
    std::vector<std::vector<naive::Poly>> pi(n, std::vector<naive::Poly>(n, naive::zero(n)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) pi[a][c] = naive::from_lib(b.component(a, c));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = a + 1; c < n; ++c)
            for (std::size_t d = c + 1; d < n; ++d)
                if (!naive::is_zero(naive::schouten_component(pi, a, c, d))) return false;
    return true;
}

} // namespace

TEST_CASE("criterion 1: corpus axiom suite") {
    Criterion crit("criterion 1 (corpus axiom suite)");
    auto valid = fixtures::valid_algebroids();
    auto broken = fixtures::broken_algebroids();
    crit.expect(valid.size() >= 10, "expected at least 10 valid algebroid fixtures");
    crit.expect(broken.size() >= 4, "expected at least 4 broken twin fixtures");
    for (const auto& name : valid) {
        std::string why;
        crit.expect(axiom_suite_passes(fixtures::algebroid(name), &why), name + " -> " + why);
    }
    for (const auto& name : broken) {
        Algebroid a = fixtures::algebroid(name);
        CheckReport rep = check_anchor_homomorphism(a);
        rep.append(check_jacobi_frame(a));
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
            rep.append(check_jacobi_random(a, 25, 2, seed));
        crit.expect(!rep.overall(), name + " unexpectedly passed");
        bool witnessed = false;
        for (const auto& item : rep.items)
            if (!item.pass && !item.witness.empty() && item.witness != "(no witness)")
                witnessed = true;
        crit.expect(witnessed, name + " failed without a witness");
    }
    crit.finish();
}

TEST_CASE("criterion 2: poisson iff jacobi on the bivector corpus") {
    Criterion crit("criterion 2 (poisson <=> jacobi, 10-bivector corpus)");
    auto poisson = fixtures::names_of("bivector", true);
    auto nonpoisson = fixtures::names_of("bivector", false);
    crit.expect(poisson.size() + nonpoisson.size() == 10, "bivector corpus must have 10 entries");
    std::size_t agreements = 0;
    auto check_one = [&](const std::string& name) {
        PoissonBivector b = fixtures::bivector(name);
        bool oracle = schouten_vanishes(b);
        bool checks = poisson_cotangent(b).second.overall();
        if (oracle == checks)
            ++agreements;
        else
            crit.expect(false, name + ": oracle and checks disagree");
        return checks;
    };
    for (const auto& name : poisson) {
        bool checks = check_one(name);
        crit.expect(checks, name + " expected to pass");
    }
    for (const auto& name : nonpoisson) {
        bool checks = check_one(name);
        crit.expect(!checks, name + " expected to fail");
    }
    crit.expect(agreements == 10, "agreement must be 10/10");
    crit.expect(!poisson_cotangent(fixtures::bivector("nonpoisson_r4.json")).second.overall(),
                "d1^d2 + x1 d3^d4 must fail");
    crit.expect(poisson_cotangent(fixtures::bivector("lie_poisson_so3.json")).second.overall(),
                "Lie-Poisson so(3)* must pass");
    crit.finish();
}

TEST_CASE("criterion 3: semidirect products pass iff the action does") {
    Criterion crit("criterion 3 (semi-direct Jacobi with negative coupling)");
    auto valid = fixtures::valid_actions();
    crit.expect(valid.size() >= 6, "at least 6 valid action fixtures required");
    // a foliation-on-foliation action over a coordinate projection, and a
    // tangent-algebroid action on an so(3) bundle, are both present
    crit.expect(std::find(valid.begin(), valid.end(), "foliation_on_foliation.json") != valid.end(),
                "foliation-on-foliation fixture missing");
    crit.expect(std::find(valid.begin(), valid.end(), "tangent_on_so3_bundle.json") != valid.end(),
                "tangent-on-so3-bundle fixture missing");
    for (const auto& name : valid) {
        AlgebroidAction act = fixtures::action(name);
        crit.expect(check_action(act).overall(), name + " action check failed");
        std::string why;
        crit.expect(axiom_suite_passes(semidirect_product(act), &why),
                    name + " product -> " + why);
    }
    auto broken = fixtures::broken_actions();
    crit.expect(broken.size() == 4, "exactly 4 single-condition perturbations expected");
    const std::map<std::string, std::string> expected_item{
        {"broken_action_derivation.json", "action_derivations"},
        {"broken_action_family.json", "action_family"},
        {"broken_action_project.json", "action_project"},
        {"broken_action_hom.json", "action_hom"}};
    for (const auto& name : broken) {
        AlgebroidAction act = fixtures::action(name);
        CheckReport rep = check_action(act);
        crit.expect(!rep.overall(), name + " unexpectedly valid");
        for (const auto& item : rep.items) {
            bool should_fail = expected_item.at(name) == item.name;
            crit.expect(item.pass != should_fail,
                        name + ": item " + item.name + (should_fail ? " should fail" : " should pass"));
        }
        Algebroid forced = semidirect_product(act, /*force=*/true);
        bool fails = !check_anchor_homomorphism(forced).overall() ||
                     !check_jacobi_frame(forced).overall() ||
                     !check_jacobi_random(forced, 25, 2, 1).overall();
        crit.expect(fails, name + ": forced product passed all axiom checks");
    }
    crit.finish();
}

TEST_CASE("criterion 4: recovery identity in every built product") {
    Criterion crit("criterion 4 (bracket of lifted and included frames recovers nabla)");
    for (const auto& name : fixtures::valid_actions()) {
        AlgebroidAction act = fixtures::action(name);
        Algebroid product = semidirect_product(act);
        const std::size_t r = act.acting().rank();
        const std::size_t s = act.acted().rank();
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t k = 0; k < s; ++k) {
                Section lhs = bracket(Section::frame(product, i), Section::frame(product, r + k));
                Section rhs = derivation_apply(act.nabla_at(i), Section::frame(act.acted(), k));
                bool match = true;
                for (std::size_t m = 0; m < r; ++m) match = match && lhs.coeff(m).is_zero();
                for (std::size_t m = 0; m < s; ++m)
                    match = match && lhs.coeff(r + m) == rhs.coeff(m);
                crit.expect(match, name + ": recovery failed at (" + std::to_string(i + 1) + "," +
                                       std::to_string(k + 1) + ")");
            }
    }
    crit.finish();
}

TEST_CASE("criterion 5: curvature round trip") {
    Criterion crit("criterion 5 (curvature zero, byte-identical reconstruction)");
    for (const auto& name : fixtures::valid_actions()) {
        AlgebroidAction act = fixtures::action(name);
        Algebroid product = semidirect_product(act);
        SplitExtension ext(product, act.acted(), act.acting(), act.q(), act.acting().rank());
        CurvatureResult cur = curvature_form(ext);
        crit.expect(cur.kappa_zero(), name + ": semidirect-built extension has nonzero kappa");
        ReconstructResult res = reconstruct_from_split(ext);
        crit.expect(res.structurally_equal, name + ": reconstruction differs structurally");
        crit.expect(serialize_algebroid(res.product).dump(2) ==
                        serialize_algebroid(product).dump(2),
                    name + ": serialized reconstruction not byte-identical");
    }
    SplitExtension heis = fixtures::extension("ext_heisenberg_point.json");
    CurvatureResult cur = curvature_form(heis);
    crit.expect(!cur.kappa_zero(), "heisenberg extension must have kappa != 0");
    CheckReport rep = check_flat(heis);
    crit.expect(rep.find("flatness")->pass, "heisenberg extension must be flat (central sub)");
    crit.expect(!rep.find("kappa_zero")->pass, "heisenberg kappa_zero must fail");
    crit.finish();
}

TEST_CASE("criterion 6: derivation algebra") {
    Criterion crit("criterion 6 (inner derivations, homomorphism, Jacobi)");
    std::mt19937_64 rng(607);
    for (const auto& name : fixtures::valid_algebroids()) {
        Algebroid a = fixtures::algebroid(name);
        std::vector<Derivation> verified;
        for (int trial = 0; trial < 20; ++trial) {
            Derivation d = inner_derivation(sample_section(a, 2, rng));
            if (!check_derivation(d).overall()) {
                crit.expect(false, name + ": random inner derivation failed trial " +
                                       std::to_string(trial + 1));
                break;
            }
            verified.push_back(std::move(d));
        }
        for (int trial = 0; trial < 5; ++trial) {
            Section s = sample_section(a, 2, rng);
            Section t = sample_section(a, 2, rng);
            crit.expect(der_bracket(inner_derivation(s), inner_derivation(t)) ==
                            inner_derivation(bracket(s, t)),
                        name + ": ad homomorphism failed");
        }
        if (verified.size() >= 3) {
            for (int trial = 0; trial < 10; ++trial) {
                const Derivation& d1 = verified[rng() % verified.size()];
                const Derivation& d2 = verified[rng() % verified.size()];
                const Derivation& d3 = verified[rng() % verified.size()];
                Derivation jac = der_bracket(d1, der_bracket(d2, d3)) +
                                 der_bracket(d2, der_bracket(d3, d1)) +
                                 der_bracket(d3, der_bracket(d1, d2));
                crit.expect(jac.is_zero(), name + ": der_bracket Jacobi failed");
            }
        }
    }
    crit.finish();
}

TEST_CASE("criterion 7: morphism suite") {
    Criterion crit("criterion 7 (anchor, inclusion and projection morphisms)");
    for (const auto& name : fixtures::valid_algebroids()) {
        crit.expect(check_morphism(anchor_morphism(fixtures::algebroid(name))).overall(),
                    name + ": anchor morphism failed");
    }
    for (const auto& name : fixtures::valid_actions()) {
        AlgebroidAction act = fixtures::action(name);
        Algebroid product = semidirect_product(act);
        const Algebroid& h = act.acted();
        const std::size_t r = act.acting().rank();
        PolyMatrix jm(product.rank(), std::vector<Poly>(h.rank(), Poly::zero(h.base())));
        for (std::size_t k = 0; k < h.rank(); ++k) jm[r + k][k] = Poly::constant(h.base(), 1);
        AlgebroidMorphism incl(h, product, ChartMap::identity(h.base()), jm);
        crit.expect(check_morphism(incl).overall(), name + ": inclusion morphism failed");
        PolyMatrix pm(r, std::vector<Poly>(product.rank(), Poly::zero(product.base())));
        for (std::size_t i = 0; i < r; ++i) pm[i][i] = Poly::constant(product.base(), 1);
        AlgebroidMorphism proj(product, act.acting(), act.q(), pm);
        crit.expect(check_morphism(proj).overall(), name + ": projection morphism failed");
    }
    CheckReport rep = check_morphism(fixtures::morphism("broken_so3_morphism.json"));
    crit.expect(!rep.find("morphism_bracket")->pass, "sign-corrupted morphism must fail bracket");
    crit.expect(!rep.find("morphism_bracket")->witness.empty(), "bracket failure needs a witness");
    crit.finish();
}

TEST_CASE("criterion 8: injective-anchor closure") {
    Criterion crit("criterion 8 (foliation-type products have full generic rank)");
    std::size_t foliation_cases = 0;
    for (const auto& name : fixtures::valid_actions()) {
        AlgebroidAction act = fixtures::action(name);
        bool foliation_type = anchor_generic_rank(act.acting()) == act.acting().rank() &&
                              anchor_generic_rank(act.acted()) == act.acted().rank() &&
                              act.acting().rank() + act.acted().rank() > 0;
        if (!foliation_type) continue;
        ++foliation_cases;
        Algebroid product = semidirect_product(act);
        crit.expect(anchor_generic_rank(product) == act.acting().rank() + act.acted().rank(),
                    name + ": product anchor rank deficient");
    }
    crit.expect(foliation_cases >= 3, "expected at least 3 foliation-type action fixtures");
    crit.finish();
}

TEST_CASE("criterion 9: corpus determinism and golden verdicts") {
    Criterion crit("criterion 9 (corpus run byte-identical and matches golden)");
#if defined(_WIN32)
    crit.expect(false, "posix shell required");
#else
    unsetenv("ALGEBROIDKIT_SEED");
    std::string args = std::string("corpus run --dir ") + AK_CORPUS_DIR + " --json";
    CmdResult first = run_cli(args);
    CmdResult second = run_cli(args);
    crit.expect(first.exit_code == 0, "first corpus run exited " + std::to_string(first.exit_code));
    crit.expect(second.exit_code == 0, "second corpus run exited nonzero");
    crit.expect(first.output == second.output, "corpus run output differs between runs");
    std::ifstream golden(std::filesystem::path(AK_CORPUS_DIR) / "golden_corpus.json");
    crit.expect(golden.good(), "golden_corpus.json missing");
    std::ostringstream buf;
    buf << golden.rdbuf();
    crit.expect(buf.str() == first.output, "corpus run output differs from the golden file");
#endif
    crit.finish();
}

// ---------------------------------------------------------------------------
// CLI behaviour pinned by the interface contract (exit codes and witnesses).
// ---------------------------------------------------------------------------

TEST_CASE("cli: check --suite all on a valid fixture") {
    unsetenv("ALGEBROIDKIT_SEED");
    auto file = fixtures::dir() / "algebroids" / "tangent_r2.json";
    CmdResult res = run_cli("check " + file.string() + " --suite all");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("anchor_hom: PASS") != std::string::npos);
    CHECK(res.output.find("jacobi_frame: PASS") != std::string::npos);
    CHECK(res.output.find("jacobi_random: PASS") != std::string::npos);
}

TEST_CASE("cli: broken fixture exits 1 and names the witness pair") {
    auto file = fixtures::dir() / "algebroids" / "broken_so3_anchor.json";
    CmdResult res = run_cli("check " + file.string());
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("pair (1,2)") != std::string::npos);
    CHECK(res.output.find("2*x") != std::string::npos);
}

TEST_CASE("cli: build poisson then check the output") {
    auto file = fixtures::dir() / "bivectors" / "lie_poisson_so3.json";
    auto out = std::filesystem::temp_directory_path() / "algebroidkit_out.json";
    CmdResult build = run_cli("build poisson " + file.string() + " -o " + out.string());
    CHECK(build.exit_code == 0);
    CmdResult check = run_cli("check " + out.string() + " --suite all");
    CHECK(check.exit_code == 0);
    // the built file round-trips to the bundled cotangent fixture
    Algebroid built = parse_algebroid(load_json_file(out));
    CHECK(built == fixtures::algebroid("lie_poisson_so3_cotangent.json"));
    std::filesystem::remove(out);
}

TEST_CASE("cli: build semidirect round trips through the file format") {
    auto file = fixtures::dir() / "actions" / "tangent_on_so3_bundle.json";
    auto out = std::filesystem::temp_directory_path() / "algebroidkit_semidirect.json";
    CmdResult res = run_cli("build semidirect " + file.string() + " -o " + out.string());
    CHECK(res.exit_code == 0);
    AlgebroidAction act = fixtures::action("tangent_on_so3_bundle.json");
    CHECK(parse_algebroid(load_json_file(out)) == semidirect_product(act));
    std::filesystem::remove(out);
}

TEST_CASE("cli: build transformation reproduces the bundled fixture") {
    auto file = fixtures::dir() / "group_actions" / "so3_rotation.json";
    auto out = std::filesystem::temp_directory_path() / "algebroidkit_so3.json";
    CmdResult res = run_cli("build transformation " + file.string() + " -o " + out.string());
    CHECK(res.exit_code == 0);
    CHECK(parse_algebroid(load_json_file(out)) ==
          fixtures::algebroid("so3_transformation.json"));
    std::filesystem::remove(out);
}

TEST_CASE("cli: dedicated check subcommands") {
    CmdResult der = run_cli("check-derivation " +
                            (fixtures::dir() / "derivations" / "heisenberg_derivation.json").string());
    CHECK(der.exit_code == 0);
    CHECK(der.output.find("derivation_i: PASS") != std::string::npos);
    CmdResult mor = run_cli("check-morphism " +
                            (fixtures::dir() / "morphisms" / "broken_so3_morphism.json").string());
    CHECK(mor.exit_code == 1);
    CHECK(mor.output.find("morphism_bracket: FAIL") != std::string::npos);
    CmdResult act = run_cli("check-action " +
                            (fixtures::dir() / "actions" / "broken_action_family.json").string() +
                            " --json");
    CHECK(act.exit_code == 1);
    CHECK(act.output.find("\"action_family\"") != std::string::npos);
    CmdResult cur = run_cli("curvature " +
                            (fixtures::dir() / "extensions" / "ext_heisenberg_point.json").string());
    CHECK(cur.exit_code == 1);
    CHECK(cur.output.find("flatness: PASS") != std::string::npos);
    CHECK(cur.output.find("kappa_zero: FAIL") != std::string::npos);
}

TEST_CASE("cli: build semidirect refuses invalid actions without --force") {
    auto file = fixtures::dir() / "actions" / "broken_action_hom.json";
    auto out = std::filesystem::temp_directory_path() / "algebroidkit_bad_product.json";
    CmdResult res = run_cli("build semidirect " + file.string() + " -o " + out.string());
    CHECK(res.exit_code == 1);
    CHECK_FALSE(std::filesystem::exists(out));
    CmdResult forced = run_cli("build semidirect " + file.string() + " -o " + out.string() +
                               " --force");
    CHECK(forced.exit_code == 1); // report still fails, but the file is built
    CHECK(std::filesystem::exists(out));
    std::filesystem::remove(out);
}

TEST_CASE("cli: usage and parse errors exit 2") {
    CmdResult res = run_cli("frobnicate");
    CHECK(res.exit_code == 2);
    auto bad = std::filesystem::temp_directory_path() / "algebroidkit_bad_schema.json";
    {
        std::ofstream out(bad);
        out << R"({"chart": ["x"], "rank": 1, "frame": ["a"], "anchor": [["x^-1"]]})";
    }
    CmdResult schema = run_cli("check " + bad.string());
    CHECK(schema.exit_code == 2);
    std::filesystem::remove(bad);
    CmdResult missing = run_cli("check /nonexistent/nowhere.json");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("cli: seed precedence flag over environment") {
    auto file = fixtures::dir() / "algebroids" / "so3_transformation.json";
    setenv("ALGEBROIDKIT_SEED", "7", 1);
    CmdResult env_run = run_cli("check " + file.string() + " --suite jacobi --json");
    CHECK(env_run.output.find("\"PASS\"") != std::string::npos);
    CmdResult flag_run = run_cli("check " + file.string() + " --suite jacobi --seed 9 --json");
    CHECK(flag_run.exit_code == 0);
    setenv("ALGEBROIDKIT_SEED", "not-a-number", 1);
    CmdResult bad_env = run_cli("check " + file.string() + " --suite jacobi");
    CHECK(bad_env.exit_code == 2);
    unsetenv("ALGEBROIDKIT_SEED");
}

TEST_CASE("cli: reconstruct writes the rebuilt product") {
    auto file = fixtures::dir() / "extensions" / "ext_atiyah_so3.json";
    auto out = std::filesystem::temp_directory_path() / "algebroidkit_reconstructed.json";
    CmdResult res = run_cli("reconstruct " + file.string() + " -o " + out.string());
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("reconstruct_equal: PASS") != std::string::npos);
    SplitExtension ext = fixtures::extension("ext_atiyah_so3.json");
    CHECK(parse_algebroid(load_json_file(out)) == ext.total());
    std::filesystem::remove(out);
    // kappa != 0 is an error path
    auto heis = fixtures::dir() / "extensions" / "ext_heisenberg_point.json";
    CmdResult bad = run_cli("reconstruct " + heis.string() + " -o " + out.string());
    CHECK(bad.exit_code == 1);
}
