#pragma once

// Command-line front end. Exit codes: 0 ok, 2 bad parameters, 3 guard
// exceeded, 4 parse error, 5 verification failure.

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "affgeo/codes.hpp"
#include "affgeo/construct.hpp"
#include "affgeo/design.hpp"
#include "affgeo/error.hpp"
#include "affgeo/io.hpp"
#include "affgeo/netsim.hpp"

namespace affgeo::cli {

enum ExitCode : int { kOk = 0, kBadParams = 2, kGuard = 3, kParse = 4, kVerifyFailed = 5 };

namespace detail {

inline void emit(std::ostream& out, const std::optional<std::string>& path, const std::string& data) {
    if (path) write_file_atomic(*path, data);
    else out << data;
}

inline std::string flat_string(const AffineFlat& f) {
    if (f.is_empty()) return "empty";
    std::string s = "rep:" + f.rep().to_string();
    for (const auto& r : f.dir().basis()) s += "|dir:" + VectorFq(f.field(), r).to_string();
    return s;
}

inline std::string flat_string(const LinearSubspace& u) {
    std::string s = "span";
    for (const auto& r : u.basis()) s += "|" + VectorFq(u.field(), r).to_string();
    return s;
}

template <class Flat>
int verify(const FlatFamily<Flat>& fam, int t, std::ostream& out) {
    const auto& g = fam.geometry();
    const auto rep = verify_design(fam, t);
    out << "kind=" << to_string(g.kind) << '\n'
        << "n=" << g.rank << '\n'
        << "k=" << fam.block_rank() << '\n'
        << "t=" << t << '\n'
        << "blocks=" << fam.size() << '\n'
        << "t_flats=" << rep.t_flats << '\n';
    if (rep.ok()) {
        out << "lambda=" << rep.lambda << '\n' << "status=ok\n";
        return kOk;
    }
    const auto& v = *rep.violation;
    out << "status=violation\n"
        << "majority_count=" << v.majority_count << '\n'
        << "deviating=" << v.deviating << '\n'
        << "witness=" << flat_string(v.witness) << '\n'
        << "witness_count=" << v.witness_count << '\n';
    return kVerifyFailed;
}

template <class Flat>
int analyze(const FlatFamily<Flat>& fam, std::ostream& out) {
    const auto& g = fam.geometry();
    out << "kind=" << to_string(g.kind) << '\n'
        << "n=" << g.rank << '\n'
        << "k=" << fam.block_rank() << '\n'
        << "blocks=" << fam.size() << '\n';
    if constexpr (std::is_same_v<Flat, AffineFlat>) {
        if (!fam.empty()) {
            out << "parallel_classes=" << parallel_classes(fam) << '\n'
                << "skew=" << (is_skew(fam) ? "true" : "false") << '\n';
        }
    }
    out << "max_meet_rank=" << max_pairwise_meet_rank(fam) << '\n';
    if (!fam.empty()) out << "correction_radius=" << correction_radius(fam) << '\n';
    return kOk;
}

} // namespace detail

/// Runs one command line (without the program name); output goes to `out`, diagnostics to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Designs and small-intersection codes in finite affine and projective geometry", "affgeo"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "Build a family of flats and write it as a block file");
    std::string kind;
    int q = 2, n = 0, k = 0, l = 0, m = 0, t = 0;
    std::string geometry = "affine";
    std::optional<std::string> out_path;
    construct->add_option("kind", kind, "spread | affine-steiner | poly-code | complete")
        ->required()
        ->check(CLI::IsMember({"spread", "affine-steiner", "poly-code", "complete"}));
    construct->add_option("--q", q, "field order (prime power)");
    construct->add_option("--n", n, "spread: vector dimension; complete: geometry rank");
    construct->add_option("--k", k, "block rank / dimension");
    construct->add_option("--l", l, "affine-steiner: l; poly-code: dimension of U");
    construct->add_option("--m", m, "poly-code: extension degree");
    construct->add_option("--t", t, "poly-code: intersection bound");
    construct->add_option("--geometry", geometry, "complete: affine | projective")
        ->check(CLI::IsMember({"affine", "projective"}));
    construct->add_option("--out", out_path, "output path (default: stdout)");

    // verify / analyze
    auto* verify = app.add_subcommand("verify", "Check that a block file is a t-design");
    std::string in_path;
    int vt = 2;
    verify->add_option("--in", in_path)->required();
    verify->add_option("--t", vt)->required();
    auto* analyze = app.add_subcommand("analyze", "Parallel classes, skewness, meet ranks, correction radius");
    analyze->add_option("--in", in_path)->required();

    // expand
    auto* expand = app.add_subcommand("expand", "Expand blocks into a classical point-set design");
    std::string mode;
    expand->add_option("--in", in_path)->required();
    expand->add_option("--mode", mode)
        ->required()
        ->check(CLI::IsMember({"subspace", "affine-2", "affine-3", "ev11"}));
    expand->add_option("--out", out_path);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Random affine network coding trials over a code");
    NetworkConfig cfg;
    std::uint64_t trials = 1000, seed = 1;
    int forced = -1;
    simulate->add_option("--code", in_path)->required();
    simulate->add_option("--layers", cfg.layers);
    simulate->add_option("--width", cfg.width);
    simulate->add_option("--indegree", cfg.indegree);
    simulate->add_option("--drop", cfg.drop_prob);
    simulate->add_option("--sink-indegree", cfg.sink_indegree);
    simulate->add_option("--forced-deletions", forced, "remove exactly e directions at the sink");
    simulate->add_option("--trials", trials);
    simulate->add_option("--seed", seed);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "affgeo: " << e.what() << '\n';
        return kBadParams;
    }

    try {
        if (construct->parsed()) {
            const Field fq = Field::of_order(q);
            AnyFamily fam;
            if (kind == "spread") fam = desarguesian_spread(n, k, fq);
            else if (kind == "affine-steiner") fam = affine_steiner(k, l, fq);
            else if (kind == "poly-code") fam = affine_poly_code(fq, m, l, t);
            else if (geometry == "affine") fam = complete_design<AffineFlat>(GeometrySpec::affine(fq, n), k);
            else fam = complete_design<LinearSubspace>(GeometrySpec::projective(fq, n), k);
            const std::string text = render_blocks(fam);
            detail::emit(out, out_path, text);
            if (out_path)
                out << "blocks=" << std::visit([](const auto& f) { return f.size(); }, fam) << '\n';
            return kOk;
        }
        if (verify->parsed()) {
            const auto fam = read_block_file(in_path);
            return std::visit([&](const auto& f) { return detail::verify(f, vt, out); }, fam);
        }
        if (analyze->parsed()) {
            const auto fam = read_block_file(in_path);
            return std::visit([&](const auto& f) { return detail::analyze(f, out); }, fam);
        }
        if (expand->parsed()) {
            const auto fam = read_block_file(in_path);
            ClassicalDesign d;
            if (mode == "subspace" || mode == "ev11") {
                const auto* p = std::get_if<ProjectiveFamily>(&fam);
                if (!p) throw InvalidArgument("mode " + mode + " needs a projective block file");
                d = mode == "subspace" ? expand_subspace_design(*p) : ev11_compose(*p);
            } else {
                const auto* a = std::get_if<AffineFamily>(&fam);
                if (!a) throw InvalidArgument("mode " + mode + " needs an affine block file");
                d = expand_affine_design(*a, mode == "affine-2" ? 2 : 3);
            }
            const std::string text = render_classical(d);
            detail::emit(out, out_path, text);
            if (out_path) out << "v=" << d.v << "\nb=" << d.blocks.size() << "\nk=" << d.block_size() << '\n';
            return kOk;
        }
        if (simulate->parsed()) {
            const auto fam = read_block_file(in_path);
            const auto* code = std::get_if<AffineFamily>(&fam);
            if (!code) throw InvalidArgument("simulation needs an affine code");
            if (forced >= 0) cfg.forced_deletions = forced;
            out << render_stats(run_trials(*code, cfg, trials, seed), seed);
            return kOk;
        }
    } catch (const ParseError& e) {
        err << "affgeo: parse error: " << e.what() << '\n';
        return kParse;
    } catch (const GuardExceeded& e) {
        err << "affgeo: " << e.what() << '\n';
        return kGuard;
    } catch (const InvalidArgument& e) {
        err << "affgeo: " << e.what() << '\n';
        return kBadParams;
    }
    return kBadParams;
}

} // namespace affgeo::cli
