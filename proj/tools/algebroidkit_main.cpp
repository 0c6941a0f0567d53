// Command-line front end: parse definition files, dispatch checks and
// builders, and run the bundled corpus. Exit codes: 0 all PASS, 1 any FAIL,
// 2 parse/usage error.
#include <CLI11.hpp>

#include <algebroidkit/actions.hpp>
#include <algebroidkit/constructions.hpp>
#include <algebroidkit/io.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace algebroidkit;

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

// Precedence: --seed flag > ALGEBROIDKIT_SEED > 42.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("ALGEBROIDKIT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error(std::string("ALGEBROIDKIT_SEED is not an integer: ") + env);
        }
    }
    return kDefaultSeed;
}

void print_report(const CheckReport& rep, bool json) {
    if (json)
        std::cout << report_to_json(rep).dump(2) << "\n";
    else
        std::cout << render_text(rep);
}

int report_exit(const CheckReport& rep) { return rep.overall() ? 0 : 1; }

struct SuiteOptions {
    std::string suite = "axioms";
    std::size_t random_n = 25;
    unsigned max_degree = 2;
    std::optional<std::uint64_t> seed;
};

CheckReport run_algebroid_suite(const Algebroid& a, const std::string& subject,
                                const SuiteOptions& opt) {
    CheckReport rep;
    rep.subject = subject;
    std::uint64_t seed = resolve_seed(opt.seed);
    if (opt.suite == "axioms" || opt.suite == "all") {
        rep.append(check_anchor_homomorphism(a, subject));
        rep.append(check_jacobi_frame(a, subject));
    }
    if (opt.suite == "jacobi" || opt.suite == "all")
        rep.append(check_jacobi_random(a, opt.random_n, opt.max_degree, seed, subject));
    return rep;
}

// ---------------------------------------------------------------------------
// Corpus runner. The manifest lists fixtures in order with their kind and
// the expected overall verdict; the run matches computed verdicts against
// expectations so the bundled broken fixtures count as successes when they
// fail as intended.
// ---------------------------------------------------------------------------

struct CorpusEntry {
    std::string file;
    std::string kind;
    bool expect_pass = true;
};

CheckReport corpus_check(const CorpusEntry& entry, const fs::path& dir, const SuiteOptions& opt) {
    fs::path file = dir / entry.file;
    Json j = load_json_file(file);
    fs::path base = file.parent_path();
    if (entry.kind == "algebroid") {
        SuiteOptions all = opt;
        all.suite = "all";
        return run_algebroid_suite(parse_algebroid(j), entry.file, all);
    }
    if (entry.kind == "morphism") return check_morphism(parse_morphism(j, base), entry.file);
    if (entry.kind == "derivation")
        return check_derivation(parse_derivation(j, base), entry.file);
    if (entry.kind == "action") return check_action(parse_action(j, base), entry.file);
    if (entry.kind == "extension") return check_flat(parse_extension(j, base), entry.file);
    if (entry.kind == "bivector")
        return poisson_cotangent(parse_bivector(j), entry.file).second;
    if (entry.kind == "group_action")
        return transformation_algebroid(parse_group_action(j), entry.file).second;
    throw SchemaError("manifest", "unknown kind '" + entry.kind + "' for " + entry.file);
}

int cmd_corpus_run(const fs::path& dir, bool json, const SuiteOptions& opt) {
    Json manifest = load_json_file(dir / "manifest.json");
    const Json& entries = detail::member(manifest, "entries", "manifest");
    if (!entries.is_array()) throw SchemaError("manifest/entries", "expected an array");

    std::size_t matched = 0;
    Json out_entries = Json::array();
    std::ostringstream text;
    for (const auto& ej : entries) {
        CorpusEntry entry;
        entry.file = detail::get_string(detail::member(ej, "file", "manifest/entries"),
                                        "manifest/entries/file");
        entry.kind = detail::get_string(detail::member(ej, "kind", "manifest/entries"),
                                        "manifest/entries/kind");
        entry.expect_pass = detail::get_string(detail::member(ej, "expect", "manifest/entries"),
                                               "manifest/entries/expect") == "PASS";
        CheckReport rep = corpus_check(entry, dir, opt);
        bool match = rep.overall() == entry.expect_pass;
        if (match) ++matched;
        if (json) {
            Json je;
            je["file"] = entry.file;
            je["kind"] = entry.kind;
            je["expected"] = entry.expect_pass ? "PASS" : "FAIL";
            je["matched"] = match;
            je["report"] = report_to_json(rep);
            out_entries.push_back(std::move(je));
        } else {
            text << entry.file << " [" << entry.kind << "]\n";
            for (const auto& item : rep.items) {
                text << "  " << item.name << ": " << (item.pass ? "PASS" : "FAIL");
                if (!item.pass) text << "  [" << item.witness << "]";
                text << "\n";
            }
            text << "  overall: " << (rep.overall() ? "PASS" : "FAIL") << " (expected "
                 << (entry.expect_pass ? "PASS" : "FAIL") << ") "
                 << (match ? "ok" : "MISMATCH") << "\n";
        }
    }
    if (json) {
        Json out;
        out["entries"] = std::move(out_entries);
        out["summary"] = {{"total", entries.size()}, {"matched", matched}};
        std::cout << out.dump(2) << "\n";
    } else {
        text << "corpus: " << matched << "/" << entries.size() << " fixtures matched expectations\n";
        std::cout << text.str();
    }
    return matched == entries.size() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"algebroidkit: exact verification of Lie algebroid structures over polynomial charts"};
    app.require_subcommand(1);

    // check
    auto* check = app.add_subcommand("check", "run axiom checks on an algebroid file");
    std::string check_file;
    SuiteOptions check_opt;
    bool check_json = false;
    std::optional<std::uint64_t> seed_flag;
    check->add_option("file", check_file, "algebroid definition file")->required();
    check->add_option("--suite", check_opt.suite, "axioms|jacobi|all")
        ->check(CLI::IsMember({"axioms", "jacobi", "all"}))
        ->capture_default_str();
    check->add_option("--random", check_opt.random_n, "number of random Jacobi trials")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}))
        ->capture_default_str();
    check->add_option("--seed", seed_flag, "PRNG seed (default: ALGEBROIDKIT_SEED or 42)");
    check->add_option("--max-degree", check_opt.max_degree, "degree bound for sampled coefficients")
        ->capture_default_str();
    check->add_flag("--json", check_json, "emit the report as JSON");

    // check-morphism / check-derivation / check-action
    std::string simple_file;
    bool simple_json = false;
    auto* check_mor = app.add_subcommand("check-morphism", "verify the morphism conditions");
    check_mor->add_option("file", simple_file, "morphism definition file")->required();
    check_mor->add_flag("--json", simple_json, "emit the report as JSON");
    auto* check_der = app.add_subcommand("check-derivation", "verify the derivation axioms");
    check_der->add_option("file", simple_file, "derivation definition file")->required();
    check_der->add_flag("--json", simple_json, "emit the report as JSON");
    auto* check_act = app.add_subcommand("check-action", "verify the action conditions");
    check_act->add_option("file", simple_file, "action definition file")->required();
    check_act->add_flag("--json", simple_json, "emit the report as JSON");

    // build
    auto* build = app.add_subcommand("build", "build an algebroid from a construction");
    std::string build_kind, build_file, build_out;
    bool build_json = false, build_force = false;
    build->add_option("kind", build_kind, "transformation|semidirect|poisson")
        ->required()
        ->check(CLI::IsMember({"transformation", "semidirect", "poisson"}));
    build->add_option("file", build_file, "input definition file")->required();
    build->add_option("-o,--output", build_out, "output algebroid file")->required();
    build->add_flag("--json", build_json, "emit the report as JSON");
    build->add_flag("--force", build_force, "build a semidirect product even if the action fails");

    // curvature
    auto* curvature = app.add_subcommand("curvature", "curvature and flatness of a split extension");
    curvature->add_option("file", simple_file, "extension definition file")->required();
    curvature->add_flag("--json", simple_json, "emit the report as JSON");

    // reconstruct
    auto* reconstruct =
        app.add_subcommand("reconstruct", "rebuild a semidirect product from a flat extension");
    std::string rec_out;
    reconstruct->add_option("file", simple_file, "extension definition file")->required();
    reconstruct->add_option("-o,--output", rec_out, "output algebroid file")->required();
    reconstruct->add_flag("--json", simple_json, "emit the report as JSON");

    // corpus run
    auto* corpus = app.add_subcommand("corpus", "bundled fixture suite");
    auto* corpus_run = corpus->add_subcommand("run", "run every bundled fixture");
    std::string corpus_dir = "corpus";
    bool corpus_json = false;
    corpus_run->add_option("--dir", corpus_dir, "corpus directory")->capture_default_str();
    corpus_run->add_flag("--json", corpus_json, "emit the verdict table as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*check) {
            check_opt.seed = seed_flag;
            Algebroid a = parse_algebroid(load_json_file(check_file));
            CheckReport rep =
                run_algebroid_suite(a, fs::path(check_file).filename().string(), check_opt);
            print_report(rep, check_json);
            return report_exit(rep);
        }
        if (*check_mor) {
            auto m = parse_morphism(load_json_file(simple_file), fs::path(simple_file).parent_path());
            CheckReport rep = check_morphism(m, fs::path(simple_file).filename().string());
            print_report(rep, simple_json);
            return report_exit(rep);
        }
        if (*check_der) {
            auto d =
                parse_derivation(load_json_file(simple_file), fs::path(simple_file).parent_path());
            CheckReport rep = check_derivation(d, fs::path(simple_file).filename().string());
            print_report(rep, simple_json);
            return report_exit(rep);
        }
        if (*check_act) {
            auto a = parse_action(load_json_file(simple_file), fs::path(simple_file).parent_path());
            CheckReport rep = check_action(a, fs::path(simple_file).filename().string());
            print_report(rep, simple_json);
            return report_exit(rep);
        }
        if (*build) {
            Json j = load_json_file(build_file);
            fs::path base = fs::path(build_file).parent_path();
            std::string subject = fs::path(build_file).filename().string();
            if (build_kind == "transformation") {
                auto [a, rep] = transformation_algebroid(parse_group_action(j), subject);
                print_report(rep, build_json);
                write_json_file(build_out, serialize_algebroid(a));
                return report_exit(rep);
            }
            if (build_kind == "poisson") {
                auto [a, rep] = poisson_cotangent(parse_bivector(j), subject);
                print_report(rep, build_json);
                write_json_file(build_out, serialize_algebroid(a));
                return report_exit(rep);
            }
            AlgebroidAction act = parse_action(j, base);
            CheckReport rep = check_action(act, subject);
            print_report(rep, build_json);
            if (!rep.overall() && !build_force) {
                std::cerr << "error: action check failed; pass --force to build anyway\n";
                return 1;
            }
            Algebroid product = semidirect_product(act, /*force=*/true);
            write_json_file(build_out, serialize_algebroid(product));
            return report_exit(rep);
        }
        if (*curvature) {
            auto ext =
                parse_extension(load_json_file(simple_file), fs::path(simple_file).parent_path());
            CheckReport rep = check_flat(ext, fs::path(simple_file).filename().string());
            print_report(rep, simple_json);
            return report_exit(rep);
        }
        if (*reconstruct) {
            auto ext =
                parse_extension(load_json_file(simple_file), fs::path(simple_file).parent_path());
            ReconstructResult res = reconstruct_from_split(ext);
            CheckReport rep = res.action_report;
            rep.subject = fs::path(simple_file).filename().string();
            rep.add("reconstruct_equal", res.structurally_equal,
                    res.structurally_equal ? "" : "rebuilt product differs from the total algebroid");
            print_report(rep, simple_json);
            write_json_file(rec_out, serialize_algebroid(res.product));
            return report_exit(rep);
        }
        if (*corpus_run) {
            SuiteOptions opt;
            opt.seed = seed_flag;
            return cmd_corpus_run(corpus_dir, corpus_json, opt);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
