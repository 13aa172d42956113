#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lineal/harness.hpp"
#include "lineal/parse.hpp"
#include "lineal/transport.hpp"

using namespace lineal;

namespace {

// Exit codes: 0 success, 1 type error, 2 parse error, 3 fuel exhausted,
// 4 suite failure.
constexpr int kOk = 0;
constexpr int kTypeError = 1;
constexpr int kParseError = 2;
constexpr int kFuelExhausted = 3;
constexpr int kSuiteFailure = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct LoadedFile {
    SourceFile source;
    PrintNames names;
    Context ctx;
};

LoadedFile load(const std::string& path, const std::string& prelude_path, bool need_main) {
    SourceFile prelude;
    if (!prelude_path.empty()) {
        prelude = parse_source(read_file(prelude_path));
        if (prelude.main) throw std::runtime_error("prelude file " + prelude_path + " has a main term");
    }
    SourceFile src = parse_source(read_file(path), prelude_path.empty() ? nullptr : &prelude);
    if (need_main && !src.main) throw std::runtime_error(path + " has no main term");
    LoadedFile out{std::move(src), {}, Context{}};
    out.names = out.source.names();
    out.ctx = Context(out.source.assumes);
    return out;
}

Mode parse_mode(const std::string& s) {
    if (s == "restricted") return Mode::Restricted;
    if (s == "unrestricted") return Mode::Unrestricted;
    throw CLI::ValidationError("--mode", "expected 'restricted' or 'unrestricted'");
}

int cmd_check(const std::string& path, const std::string& prelude, const std::string& system,
              bool derivation) {
    LoadedFile f = load(path, prelude, true);
    const TypeAliases* aliases = &f.names.types;
    if (system == "scalar" || system == "bary") {
        Inferred inf;
        if (system == "bary") {
            auto bary = check_barycentric(f.ctx, f.source.main);
            if (!bary.ok) {
                std::cout << "NotBarycentric : final type "
                          << print_type(readback(bary.type), aliases) << "\n";
                return kTypeError;
            }
            inf = {bary.type, bary.deriv};
        } else {
            inf = infer_scalar(f.ctx, f.source.main);
        }
        if (f.source.ascription && !type_equiv(readback(inf.type), f.source.ascription)) {
            std::cout << errc_name(Errc::AscriptionMismatch) << ": inferred "
                      << print_type(readback(inf.type), aliases) << ", ascribed "
                      << print_type(f.source.ascription, aliases) << "\n";
            return kTypeError;
        }
        if (derivation) std::cout << derivation_export(inf.deriv) << "\n";
        std::cout << "OK : " << print_type(readback(inf.type), aliases) << "\n";
        return kOk;
    }
    if (system == "f") {
        TypePtr ty = infer_f(forget_context(f.ctx), f.source.main);
        if (f.source.ascription) {
            TypePtr want = forget(f.source.ascription);
            bool zero_asc = canonicalize(f.source.ascription).zero;
            if (!zero_asc && !alpha_equal_types(want, ty)) {
                std::cout << errc_name(Errc::AscriptionMismatch) << ": inferred " << print_type(ty, aliases)
                          << ", ascribed " << print_type(f.source.ascription, aliases) << "\n";
                return kTypeError;
            }
        }
        std::cout << "OK : " << print_type(ty, aliases) << "\n";
        return kOk;
    }
    throw CLI::ValidationError("--system", "expected 'scalar', 'f' or 'bary'");
}

int cmd_reduce(const std::string& path, const std::string& prelude, Mode mode, long fuel, bool trace) {
    LoadedFile f = load(path, prelude, true);
    auto r = normalize(erase(f.source.main), mode, fuel, trace);
    if (trace) std::cout << print_trace(r.trace, &f.names);
    if (r.trace.fuel_exhausted) {
        std::cout << "FuelExhausted after " << r.trace.fuel_used << " steps\n";
        return kFuelExhausted;
    }
    std::cout << print_term(r.term, &f.names) << "\n";
    return kOk;
}

int cmd_weight(const std::string& path, const std::string& prelude, bool after_reduce, Mode mode,
               long fuel) {
    LoadedFile f = load(path, prelude, true);
    TermPtr t = erase(f.source.main);
    if (after_reduce) {
        auto r = normalize(t, mode, fuel, false);
        if (r.trace.fuel_exhausted) {
            std::cout << "FuelExhausted after " << r.trace.fuel_used << " steps\n";
            return kFuelExhausted;
        }
        t = r.term;
    }
    std::cout << print_scalar(weight(t)) << "\n";
    return kOk;
}

int cmd_suite(const std::string& name, const SuiteOptions& opts) {
    auto suite = parse_suite_name(name);
    if (!suite)
        throw CLI::ValidationError(
            "suite", "expected one of subject-reduction, sn, confluence, weight1, correspondence, "
                     "uniqueness");
    auto report = run_suite(*suite, opts);
    std::cout << report.to_text();
    return report.ok() ? kOk : kSuiteFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interpreter and scalar-aware type checker for the linear-algebraic lambda calculus"};
    app.require_subcommand(1);

    std::string file, prelude, system = "scalar", mode_str = "restricted", suite_name;
    bool derivation = false, trace = false, after_reduce = false;
    long fuel = 100000;
    SuiteOptions suite_opts;

    auto* check = app.add_subcommand("check", "Type-check the main term of a file");
    check->add_option("file", file)->required();
    check->add_option("--system", system, "scalar | f | bary");
    check->add_option("--prelude", prelude, "definitions file loaded first");
    check->add_flag("--derivation", derivation, "emit the derivation export");

    auto* reduce = app.add_subcommand("reduce", "Normalize the main term of a file");
    reduce->add_option("file", file)->required();
    reduce->add_option("--mode", mode_str, "restricted | unrestricted");
    reduce->add_option("--fuel", fuel, "maximum number of steps");
    reduce->add_flag("--trace", trace, "print one line per step");
    reduce->add_option("--prelude", prelude);

    auto* weight_cmd = app.add_subcommand("weight", "Weight of the main term");
    weight_cmd->add_option("file", file)->required();
    weight_cmd->add_flag("--after-reduce", after_reduce, "weigh the normal form instead");
    std::string weight_mode = "unrestricted";
    weight_cmd->add_option("--mode", weight_mode, "mode for --after-reduce (default unrestricted)");
    weight_cmd->add_option("--fuel", fuel);
    weight_cmd->add_option("--prelude", prelude);

    auto* suite = app.add_subcommand("suite", "Run a property suite");
    suite->add_option("name", suite_name)->required();
    suite->add_option("--seed", suite_opts.gen.seed);
    suite->add_option("--cases", suite_opts.cases);
    suite->add_option("--size", suite_opts.gen.max_term_size, "generator size bound");
    suite->add_option("--fuel", suite_opts.gen.fuel);
    suite->add_option("--depth", suite_opts.join_depth, "joinability search depth");
    suite->add_option("--jobs", suite_opts.jobs, "worker threads (0 = all, 1 = serial)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return cmd_check(file, prelude, system, derivation);
        if (*reduce) return cmd_reduce(file, prelude, parse_mode(mode_str), fuel, trace);
        if (*weight_cmd) return cmd_weight(file, prelude, after_reduce, parse_mode(weight_mode), fuel);
        if (*suite) return cmd_suite(suite_name, suite_opts);
    } catch (const ParseError& e) {
        std::cerr << "ParseError: " << e.what() << "\n";
        return kParseError;
    } catch (const TypeError& e) {
        std::cerr << "TypeError: " << e.what() << "\n";
        return kTypeError;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    }
    return kOk;
}
