#include "ringel/ringel.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace
{
    using namespace ringel;
    namespace fs = std::filesystem;

    /// Exit codes shared by every subcommand.
    enum Exit : int
    {
        ok = 0,
        verification_failed = 1,
        input_error = 2,
        construction_failed = 3,
    };

    /// Construction failures are the searches giving up; everything else a
    /// caller can fix by changing the input.
    auto exit_for(ErrorCode code) -> int
    {
        switch (code) {
            case ErrorCode::SearchExhausted:
            case ErrorCode::InconsistentFamily:
                return construction_failed;
            default:
                return input_error;
        }
    }

    void write_atomically(const fs::path & path, const std::string & text)
    {
        auto temp = path;
        temp += ".tmp";
        {
            std::ofstream out(temp, std::ios::binary | std::ios::trunc);
            require(static_cast<bool>(out), ErrorCode::Io, "cannot open " + temp.string() + " for writing");
            out << text;
            out.flush();
            require(static_cast<bool>(out), ErrorCode::Io, "write to " + temp.string() + " failed");
        }
        std::error_code ec;
        fs::rename(temp, path, ec);
        require(! ec, ErrorCode::Io, "cannot rename " + temp.string() + " to " + path.string() + ": " + ec.message());
    }

    auto load_tree(const fs::path & path) -> Tree
    {
        std::ifstream in(path);
        require(static_cast<bool>(in), ErrorCode::Io, "cannot open tree file " + path.string());
        return read_tree(in);
    }

    auto sample_tree(const std::string & kind, int m, std::uint64_t seed) -> Tree
    {
        require(m >= 1, ErrorCode::InvalidArgument, "m must be at least 1");
        if (kind == "labeled")
            return sample_labeled_tree(m, seed);
        return sample_unlabeled_tree(m, seed);
    }

    struct SampleArgs
    {
        int m = 0;
        std::string kind = "unlabeled";
        std::uint64_t seed = 0;
        std::string out;
    };

    auto run_sample_tree(const SampleArgs & args) -> int
    {
        auto tree = sample_tree(args.kind, args.m, args.seed);
        auto leaves = leaf_count(tree);
        auto bound = forest_leaf_target(args.m);
        std::ostringstream summary;
        summary << "m=" << args.m << " kind=" << args.kind << " seed=" << args.seed << " leaves=" << leaves
                << " bound=" << bound << " meets_bound=" << (leaves >= bound ? "yes" : "no");
        if (args.out.empty()) {
            std::cout << tree_to_string(tree);
            std::cerr << summary.str() << '\n';
        }
        else {
            write_atomically(args.out, tree_to_string(tree));
            std::cout << summary.str() << '\n';
        }
        return ok;
    }

    struct DecomposeArgs
    {
        int p = 0;
        std::optional<int> r;
        std::string kind = "blowup";
        std::string tree_file;
        std::string sample;
        std::optional<int> m;
        std::uint64_t seed = 0;
        std::string out;
        bool best_effort = false;
        int jobs = 1;
    };

    /// Default blow-up factor per target kind; the corollary targets pin it.
    auto resolve_r(TargetKind kind, std::optional<int> requested) -> int
    {
        auto fixed = [&](int value, const char * name) {
            require(! requested || *requested == value, ErrorCode::InvalidArgument,
                std::string(name) + " requires r = " + std::to_string(value));
            return value;
        };
        switch (kind) {
            case TargetKind::MatchingComplement: return fixed(2, "matching-complement");
            case TargetKind::NearComplete: return fixed(3, "near-complete");
            case TargetKind::CliqueComplement: return requested.value_or(3);
            case TargetKind::BlowupComplete: return requested.value_or(2);
        }
        return 2;
    }

    auto run_decompose(const DecomposeArgs & args) -> int
    {
        auto kind = parse_target_kind(args.kind);
        require(kind.has_value(), ErrorCode::InvalidArgument, "unknown kind '" + args.kind + "'");
        require(args.p >= 3 && is_prime(args.p), ErrorCode::NotPrime, "p must be prime (got " + std::to_string(args.p) + ")");
        auto r = resolve_r(*kind, args.r);
        require(args.tree_file.empty() != args.sample.empty(), ErrorCode::InvalidArgument,
            "give exactly one tree source: --tree FILE or --sample KIND");
        require(args.jobs >= 1, ErrorCode::InvalidArgument, "jobs must be at least 1");

        auto m = (args.p - 1) / 2;
        auto edges = *kind == TargetKind::NearComplete || *kind == TargetKind::CliqueComplement ? m + 1 : m;
        auto tree = args.tree_file.empty() ? sample_tree(args.sample, args.m.value_or(edges), args.seed)
                                           : load_tree(args.tree_file);

        BlowupOptions options;
        options.best_effort = args.best_effort;
        options.jobs = args.jobs;
        auto start = std::chrono::steady_clock::now();
        Decomposition d;
        switch (*kind) {
            case TargetKind::BlowupComplete: d = decompose_blowup(tree, args.p, r, args.seed, options); break;
            case TargetKind::MatchingComplement: d = decompose_matching_complement(tree, args.p, args.seed, options); break;
            case TargetKind::NearComplete: d = decompose_near_complete(tree, args.p, args.seed, options); break;
            case TargetKind::CliqueComplement:
                d = decompose_clique_complement(tree, args.p, r, args.seed, options);
                break;
        }
        auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (! args.out.empty()) {
            std::ostringstream text;
            write_certificate(d, text);
            write_atomically(args.out, text.str());
        }
        auto stat = [&](const char * key) { return d.stats.contains(key) ? d.stats.at(key) : 0; };
        std::cout << "kind=" << to_string(d.kind) << " p=" << d.p << " r=" << d.r << " copies=" << d.copies.size()
                  << " edges=" << d.edge_count() << " conflicts=" << stat("conflicts")
                  << " attempts=" << stat("attempts") << " seed=" << d.seed << " wall_ms=" << std::fixed
                  << std::setprecision(1) << elapsed << '\n';
        return ok;
    }

    auto run_verify(const std::string & path) -> int
    {
        auto cert = read_certificate(fs::path(path));
        auto report = verify_decomposition(cert);
        for (const auto & check : report.checks)
            std::cout << check.name << '=' << (check.pass ? "pass" : "fail") << '\n';
        if (report.pass) {
            std::cout << "PASS copies=" << cert.copies.size() << " edges=" << cert.edge_count() << '\n';
            return ok;
        }
        std::cout << "FAIL " << report.counterexample << '\n';
        return verification_failed;
    }

    auto run_cn_oracle(const std::string & tree_file, int p) -> int
    {
        auto tree = load_tree(tree_file);
        auto c = cn_coefficient_oracle(tree, p);
        auto unit = c == 1 || c == p - 1;
        std::cout << "k=" << tree.edge_count() << " p=" << p << " coefficient=" << c;
        if (c == p - 1)
            std::cout << " (= -1 mod " << p << ")";
        std::cout << ' ' << (unit ? "PASS" : "FAIL") << '\n';
        return unit ? ok : verification_failed;
    }

    struct LeafStatsArgs
    {
        int m = 0;
        std::string kind = "unlabeled";
        std::uint64_t seed = 0;
        int samples = 1000;
    };

    auto run_leaf_stats(const LeafStatsArgs & args) -> int
    {
        require(args.samples >= 1, ErrorCode::InvalidArgument, "samples must be at least 1");
        auto bound = forest_leaf_target(args.m);
        double total = 0;
        long meeting = 0;
        for (int s = 0; s < args.samples; ++s) {
            auto leaves = leaf_count(sample_tree(args.kind, args.m, derive_seed(args.seed, Stage::Sampler, static_cast<std::uint64_t>(s))));
            total += leaves;
            meeting += leaves >= bound ? 1 : 0;
        }
        auto mean = total / args.samples;
        std::cout << std::setprecision(6) << "m=" << args.m << " kind=" << args.kind << " samples=" << args.samples
                  << " mean_leaves=" << mean << " leaf_fraction=" << mean / args.m
                  << " meets_bound_fraction=" << static_cast<double>(meeting) / args.samples << '\n';
        return ok;
    }
}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"Tree decompositions of blow-ups of complete graphs, with certificates and a verifier."};
    app.require_subcommand(1);

    SampleArgs sample;
    auto * sample_cmd = app.add_subcommand("sample-tree", "Sample a random tree and report its leaf count");
    sample_cmd->add_option("--m", sample.m, "Number of edges")->required()->check(CLI::PositiveNumber);
    sample_cmd->add_option("--sample", sample.kind, "Sampler")->check(CLI::IsMember({"labeled", "unlabeled"}));
    sample_cmd->add_option("--seed", sample.seed, "64-bit seed");
    sample_cmd->add_option("--out", sample.out, "Output tree file (stdout if omitted)");

    DecomposeArgs decompose;
    auto * decompose_cmd = app.add_subcommand("decompose", "Build a decomposition certificate");
    decompose_cmd->add_option("--p", decompose.p, "Prime order of the base group")->required();
    decompose_cmd->add_option("--r", decompose.r, "Blow-up factor");
    decompose_cmd->add_option("--kind", decompose.kind, "Target graph")
        ->check(CLI::IsMember({"blowup", "matching-complement", "near-complete", "clique-complement"}));
    decompose_cmd->add_option("--tree", decompose.tree_file, "Tree file");
    decompose_cmd->add_option("--sample", decompose.sample, "Sample the tree instead of reading it")
        ->check(CLI::IsMember({"labeled", "unlabeled"}));
    decompose_cmd->add_option("--m", decompose.m, "Edges of the sampled tree (default: what the target needs)");
    decompose_cmd->add_option("--seed", decompose.seed, "64-bit seed");
    decompose_cmd->add_option("--out", decompose.out, "Certificate path");
    decompose_cmd->add_flag("--best-effort", decompose.best_effort, "Attempt inputs outside the proven regime");
    decompose_cmd->add_option("--jobs", decompose.jobs, "Threads for the translation fan-out");

    std::string cert_path;
    auto * verify_cmd = app.add_subcommand("verify", "Check a certificate");
    verify_cmd->add_option("certificate", cert_path, "Certificate file")->required();

    std::string cn_tree;
    int cn_p = 0;
    auto * cn_cmd = app.add_subcommand("cn-oracle", "Coefficient of the polynomial-method monomial for a small tree");
    cn_cmd->add_option("--tree", cn_tree, "Tree file")->required();
    cn_cmd->add_option("--p", cn_p, "Prime modulus")->required();

    LeafStatsArgs stats;
    auto * stats_cmd = app.add_subcommand("leaf-stats", "Mean leaf count over many sampled trees");
    stats_cmd->add_option("--m", stats.m, "Number of edges")->required()->check(CLI::PositiveNumber);
    stats_cmd->add_option("--sample", stats.kind, "Sampler")->check(CLI::IsMember({"labeled", "unlabeled"}));
    stats_cmd->add_option("--seed", stats.seed, "64-bit seed");
    stats_cmd->add_option("--samples", stats.samples, "Number of samples");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        return app.exit(e) == 0 ? ok : input_error;
    }

    try {
        if (*sample_cmd)
            return run_sample_tree(sample);
        if (*decompose_cmd)
            return run_decompose(decompose);
        if (*verify_cmd) {
            try {
                return run_verify(cert_path);
            }
            catch (const ringel::Error & e) {
                std::cerr << "malformed certificate: " << e.what() << '\n';
                return input_error;
            }
        }
        if (*cn_cmd)
            return run_cn_oracle(cn_tree, cn_p);
        if (*stats_cmd)
            return run_leaf_stats(stats);
    }
    catch (const ringel::Error & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_for(e.code());
    }
    return input_error;
}
