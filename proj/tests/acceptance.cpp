// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "ringel/ringel.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace ringel;

namespace
{
    using Clock = std::chrono::steady_clock;

    auto seconds_since(Clock::time_point start) -> double
    {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }

    struct Outcome
    {
        bool pass = true;
        std::string detail;
    };

    /// Trees with m edges and at least the forest leaf target, one per shape.
    auto battery(int m) -> std::vector<std::pair<std::string, Tree>>
    {
        auto t = forest_leaf_target(m);
        std::vector<std::pair<std::string, Tree>> trees;
        trees.emplace_back("star", families::star(m));
        trees.emplace_back("broom-long", families::broom(m - t, t));
        trees.emplace_back("broom-short", families::broom(1, m - 1));
        // Spine of s vertices, legs spread so that the end legs count as leaves.
        {
            auto spine = m - t + 1;
            std::vector<int> legs(static_cast<std::size_t>(std::max(spine - 1, 1)), 0);
            auto remaining = m - (static_cast<int>(legs.size()) - 1);
            for (std::size_t k = 0; remaining > 0; k = (k + 1) % legs.size(), --remaining)
                ++legs[k];
            trees.emplace_back("caterpillar", families::caterpillar(legs));
        }
        {
            std::vector<int> legs(static_cast<std::size_t>(t), 1);
            legs[0] += m - t;
            trees.emplace_back("spider-one-long", families::spider(legs));
            std::vector<int> even(static_cast<std::size_t>(t), m / t);
            for (int k = 0; k < m % t; ++k)
                ++even[static_cast<std::size_t>(k)];
            trees.emplace_back("spider-even", families::spider(even));
        }
        std::erase_if(trees, [&](const auto & entry) {
            return entry.second.edge_count() != m || leaf_count(entry.second) < t;
        });
        std::uint64_t seed = 1000;
        for (int count = 0; count < 20; ++seed) {
            auto tree = sample_unlabeled_tree(m, seed);
            if (leaf_count(tree) >= t) {
                trees.emplace_back("random-" + std::to_string(seed), tree);
                ++count;
            }
        }
        return trees;
    }

    /// Trees with m + 1 edges whose leaf deletion lands back in the regime.
    auto extended_trees(int m, int count, std::uint64_t seed) -> std::vector<Tree>
    {
        std::vector<Tree> trees;
        while (static_cast<int>(trees.size()) < count) {
            auto tree = sample_unlabeled_tree(m + 1, seed++);
            auto reduced = delete_leaf(tree, choose_deleted_leaf(tree)).reduced;
            if (leaf_count(reduced) >= forest_leaf_target(m))
                trees.push_back(tree);
        }
        return trees;
    }

    /// Independent partition oracle: builds the expected edge set from the
    /// target's definition and checks every edge is used exactly once.
    auto partition_oracle(const Decomposition & d) -> std::string
    {
        std::set<std::pair<Vertex, Vertex>> expected;
        auto add = [&](Vertex u, Vertex v) { expected.insert(u < v ? std::pair{u, v} : std::pair{v, u}); };
        auto apexes = apex_count(d.kind, d.r);
        auto base = [&](int x, int i) {
            return d.kind == TargetKind::MatchingComplement ? Vertex::plain(2 * x + i) : Vertex::product(x, i);
        };
        for (int x = 0; x < d.p; ++x)
            for (int i = 0; i < d.r; ++i) {
                for (int y = x + 1; y < d.p; ++y)
                    for (int j = 0; j < d.r; ++j)
                        add(base(x, i), base(y, j));
                if (apexes > 0) {
                    for (int k = 0; k < apexes; ++k)
                        add(base(x, i), Vertex::apex(k));
                    for (int j = i + 1; j < d.r; ++j)
                        add(base(x, i), base(x, j));
                }
            }
        std::set<std::pair<Vertex, Vertex>> used;
        for (const auto & c : d.copies)
            for (const auto & a : c.arcs) {
                auto e = a.tail < a.head ? std::pair{a.tail, a.head} : std::pair{a.head, a.tail};
                if (! expected.contains(e))
                    return "edge outside the target in copy " + std::to_string(c.label);
                if (! used.insert(e).second)
                    return "edge used twice, second time in copy " + std::to_string(c.label);
            }
        if (used.size() != expected.size())
            return std::to_string(expected.size() - used.size()) + " target edges uncovered";
        return {};
    }

    /// Both the library verifier and the independent oracle must accept.
    auto accept(const Decomposition & d, std::size_t expected_copies) -> std::string
    {
        if (d.copies.size() != expected_copies)
            return std::to_string(d.copies.size()) + " copies, expected " + std::to_string(expected_copies);
        auto report = verify_decomposition(d);
        if (! report.pass)
            return "verifier: " + report.counterexample;
        return partition_oracle(d);
    }

    auto blowup_instances() -> Outcome
    {
        int instances = 0;
        double slowest = 0;
        for (int p : {11, 13, 17, 19, 23}) {
            auto trees = battery((p - 1) / 2);
            for (int r : {2, 3})
                for (const auto & [name, tree] : trees) {
                    auto start = Clock::now();
                    std::string problem;
                    try {
                        problem = accept(decompose_blowup(tree, p, r, static_cast<std::uint64_t>(instances)),
                            static_cast<std::size_t>(r * r * p));
                    }
                    catch (const Error & e) {
                        problem = e.what();
                    }
                    auto elapsed = seconds_since(start);
                    slowest = std::max(slowest, elapsed);
                    ++instances;
                    if (! problem.empty())
                        return {false, name + " p=" + std::to_string(p) + " r=" + std::to_string(r) + ": " + problem};
                    if (elapsed > 10)
                        return {false, name + " took " + std::to_string(elapsed) + " s"};
                }
        }
        std::ostringstream s;
        s << instances << " instances over p in {11,13,17,19,23}, r in {2,3}; slowest " << slowest << " s";
        return {true, s.str()};
    }

    auto matching_complement_instances() -> Outcome
    {
        int instances = 0;
        for (int p : {11, 13})
            for (const auto & [name, tree] : battery((p - 1) / 2)) {
                std::string problem;
                try {
                    auto d = decompose_matching_complement(tree, p, static_cast<std::uint64_t>(instances));
                    problem = accept(d, static_cast<std::size_t>(4 * p));
                    for (const auto & c : d.copies)
                        for (const auto & a : c.arcs)
                            if (a.tail.a / 2 == a.head.a / 2)
                                problem = "matching edge covered in copy " + std::to_string(c.label);
                }
                catch (const Error & e) {
                    problem = e.what();
                }
                ++instances;
                if (! problem.empty())
                    return {false, name + " p=" + std::to_string(p) + ": " + problem};
            }
        return {true, std::to_string(instances) + " instances, no matching edge covered"};
    }

    auto near_complete_instances() -> Outcome
    {
        int instances = 0;
        for (int p : {11, 13})
            for (const auto & tree : extended_trees((p - 1) / 2, 10, static_cast<std::uint64_t>(p) * 100)) {
                std::string problem;
                try {
                    problem = accept(decompose_near_complete(tree, p, static_cast<std::uint64_t>(instances)),
                        static_cast<std::size_t>(9 * p));
                }
                catch (const Error & e) {
                    problem = e.what();
                }
                ++instances;
                if (! problem.empty())
                    return {false, "p=" + std::to_string(p) + " tree " + canonical_form(tree) + ": " + problem};
            }
        return {true, std::to_string(instances) + " instances with 9p copies each"};
    }

    auto clique_complement_instances() -> Outcome
    {
        int instances = 0;
        double slowest = 0;
        for (const auto & tree : extended_trees(5, 5, 500)) {
            auto start = Clock::now();
            std::string problem;
            try {
                problem = accept(decompose_clique_complement(tree, 11, 5, static_cast<std::uint64_t>(instances)), 275);
            }
            catch (const Error & e) {
                problem = e.what();
            }
            slowest = std::max(slowest, seconds_since(start));
            ++instances;
            if (! problem.empty())
                return {false, "tree " + canonical_form(tree) + ": " + problem};
        }
        std::ostringstream s;
        s << instances << " trees on K_58 minus K_3; slowest " << slowest << " s";
        return {true, s.str()};
    }

    auto hall_repair_properties() -> Outcome
    {
        Rng rng(derive_seed(5, Stage::Repair));
        auto random_matrix = [&](int r) {
            auto labels = shuffled_range(1, r * r + 1, rng());
            std::vector<std::vector<int>> m(static_cast<std::size_t>(r));
            for (int k = 0; k < r * r; ++k)
                m[static_cast<std::size_t>(k / r)].push_back(labels[static_cast<std::size_t>(k)]);
            return m;
        };
        auto column = [](const std::vector<std::vector<int>> & m, std::size_t a) {
            std::vector<int> c;
            for (const auto & row : m)
                c.push_back(row[a]);
            std::sort(c.begin(), c.end());
            return c;
        };
        int cases = 0;
        for (int r = 2; r <= 8; ++r)
            for (int trial = 0; trial < 1000; ++trial, ++cases) {
                ConflictMatrixPair in{r, {}, random_matrix(r), random_matrix(r)};
                auto out = hall_repair(in);
                for (std::size_t a = 0; a < static_cast<std::size_t>(r); ++a)
                    if (column(in.mx, a) != column(out.mx, a) || column(in.mz, a) != column(out.mz, a))
                        return {false, "column " + std::to_string(a) + " changed content at r=" + std::to_string(r)};
                for (std::size_t b = 0; b < static_cast<std::size_t>(r); ++b) {
                    std::set<int> row(out.mx[b].begin(), out.mx[b].end());
                    row.insert(out.mz[b].begin(), out.mz[b].end());
                    if (row.size() != static_cast<std::size_t>(2 * r))
                        return {false, "row " + std::to_string(b) + " repeats a label at r=" + std::to_string(r)};
                }
            }
        return {true, std::to_string(cases) + " random matrix pairs, r = 2..8"};
    }

    auto distinct_sums_properties() -> Outcome
    {
        Rng rng(derive_seed(6, Stage::DistinctSums));
        int cases = 0;
        for (int p : {11, 13, 17})
            for (int k = 2; k <= p - 1; ++k)
                for (int trial = 0; trial < 200; ++trial, ++cases) {
                    std::vector<int> a(static_cast<std::size_t>(k));
                    for (auto & x : a)
                        x = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(p)));
                    auto pool = shuffled_range(0, p, rng());
                    std::vector<int> b(pool.begin(), pool.begin() + k);
                    std::vector<int> sigma;
                    try {
                        sigma = distinct_sums_permutation(a, b, p, rng());
                    }
                    catch (const Error & e) {
                        return {false, "p=" + std::to_string(p) + " k=" + std::to_string(k) + ": " + e.what()};
                    }
                    auto sorted = sigma;
                    std::sort(sorted.begin(), sorted.end());
                    std::vector<int> identity(static_cast<std::size_t>(k));
                    std::iota(identity.begin(), identity.end(), 0);
                    std::set<int> sums;
                    for (std::size_t i = 0; i < a.size() && sorted == identity; ++i)
                        sums.insert((a[i] + b[static_cast<std::size_t>(sigma[i])]) % p);
                    if (sorted != identity || sums.size() != static_cast<std::size_t>(k))
                        return {false, "invalid permutation at p=" + std::to_string(p) + " k=" + std::to_string(k)};
                }
        return {true, std::to_string(cases) + " random (a, b) pairs"};
    }

    /// Free trees on n vertices, one representative per isomorphism class,
    /// by Pruefer enumeration and brute-force permutation isomorphism.
    auto free_trees(int n) -> std::vector<std::vector<std::pair<int, int>>>
    {
        using Edges = std::vector<std::pair<int, int>>;
        auto normalized = [](Edges e) {
            for (auto & [u, v] : e)
                if (u > v)
                    std::swap(u, v);
            std::sort(e.begin(), e.end());
            return e;
        };
        auto isomorphic = [&](const Edges & x, const Edges & y) {
            std::vector<int> perm(static_cast<std::size_t>(n));
            std::iota(perm.begin(), perm.end(), 0);
            auto target = normalized(y);
            do {
                Edges mapped;
                for (auto [u, v] : x)
                    mapped.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
                if (normalized(mapped) == target)
                    return true;
            } while (std::next_permutation(perm.begin(), perm.end()));
            return false;
        };
        std::vector<Edges> classes;
        if (n == 2)
            return {{{0, 1}}};
        std::vector<int> code(static_cast<std::size_t>(n - 2), 0);
        while (true) {
            std::vector<int> degree(static_cast<std::size_t>(n), 1);
            for (auto c : code)
                ++degree[static_cast<std::size_t>(c)];
            Edges edges;
            for (auto c : code) {
                int leaf = 0;
                while (degree[static_cast<std::size_t>(leaf)] != 1)
                    ++leaf;
                edges.emplace_back(leaf, c);
                --degree[static_cast<std::size_t>(leaf)];
                --degree[static_cast<std::size_t>(c)];
            }
            std::vector<int> last;
            for (int v = 0; v < n; ++v)
                if (degree[static_cast<std::size_t>(v)] == 1)
                    last.push_back(v);
            edges.emplace_back(last[0], last[1]);
            if (std::none_of(classes.begin(), classes.end(), [&](const Edges & e) { return isomorphic(e, edges); }))
                classes.push_back(edges);
            std::size_t k = 0;
            while (k < code.size() && ++code[k] == n)
                code[k++] = 0;
            if (k == code.size())
                break;
        }
        return classes;
    }

    auto coefficient_oracle() -> Outcome
    {
        const std::vector<std::size_t> expected_classes{1, 1, 2, 3};
        int checks = 0;
        for (int k = 1; k <= cn_oracle_max_edges; ++k) {
            auto classes = free_trees(k + 1);
            if (classes.size() != expected_classes[static_cast<std::size_t>(k - 1)])
                return {false, "enumerated " + std::to_string(classes.size()) + " free trees with k=" + std::to_string(k)};
            for (const auto & edges : classes)
                for (int root = 0; root <= k; ++root)
                    for (int p : {13, 17}) {
                        auto c = cn_coefficient_oracle(Tree(k + 1, edges, root), p);
                        ++checks;
                        if (c != 1 && c != p - 1)
                            return {false, "coefficient " + std::to_string(c) + " for k=" + std::to_string(k)
                                    + " p=" + std::to_string(p)};
                    }
        }
        return {true, std::to_string(checks) + " (tree, root, p) cases, every coefficient is +-1"};
    }

    auto leaf_statistic() -> Outcome
    {
        const int m = 500, samples = 10'000;
        const double c = 0.438;
        auto bound = 2.0 * m / 5.0;
        double total = 0;
        int meeting = 0;
        for (int s = 0; s < samples; ++s) {
            auto leaves = leaf_count(sample_unlabeled_tree(m, derive_seed(8, Stage::Sampler, static_cast<std::uint64_t>(s))));
            total += leaves;
            meeting += leaves >= bound ? 1 : 0;
        }
        auto mean = total / samples;
        auto fraction = static_cast<double>(meeting) / samples;
        auto relative = std::abs(mean - c * m) / (c * m);
        std::ostringstream s;
        s << "mean " << mean << " leaves vs " << c * m << " (rel. error " << relative << "), " << fraction
          << " of samples meet 2m/5";
        return {relative <= 0.05 && fraction > 0.9, s.str()};
    }

    auto mutation_robustness() -> Outcome
    {
        std::vector<Decomposition> certs{
            decompose_blowup(families::broom(2, 3), 11, 2, 1),
            decompose_blowup(sample_unlabeled_tree(6, 3), 13, 3, 2),
            decompose_near_complete(families::broom(3, 3), 11, 3),
        };
        Rng rng(derive_seed(9, Stage::Sampler));
        int mutants = 0;
        for (const auto & base : certs) {
            if (! verify_decomposition(base).pass)
                return {false, "unmutated certificate fails"};
            std::set<Vertex> vertex_set;
            for (const auto & c : base.copies)
                for (const auto & a : c.arcs)
                    vertex_set.insert({a.tail, a.head});
            std::vector<Vertex> vertices(vertex_set.begin(), vertex_set.end());
            for (int trial = 0; trial < 100; ++trial, ++mutants) {
                auto mutated = base;
                auto & copy = mutated.copies[uniform_below(rng, mutated.copies.size())];
                auto & arc = copy.arcs[uniform_below(rng, copy.arcs.size())];
                auto original = make_edge(arc.tail, arc.head);
                auto & end = uniform_below(rng, 2) ? arc.tail : arc.head;
                do
                    end = vertices[uniform_below(rng, vertices.size())];
                while (make_edge(arc.tail, arc.head) == original);
                if (verify_decomposition(mutated).pass)
                    return {false, "a mutant of copy " + std::to_string(copy.label) + " passed"};
            }
        }
        return {true, std::to_string(mutants) + " single-arc mutants, all rejected"};
    }
}

auto main() -> int
{
    struct Criterion
    {
        int number;
        const char * name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "blow-up decompositions", blowup_instances},
        {2, "matching-complement decompositions", matching_complement_instances},
        {3, "near-complete decompositions", near_complete_instances},
        {4, "clique-complement decompositions (r=5)", clique_complement_instances},
        {5, "conflict-matrix repair properties", hall_repair_properties},
        {6, "distinct-sums permutation properties", distinct_sums_properties},
        {7, "monomial coefficient is +-1 for small trees", coefficient_oracle},
        {8, "leaf statistic of random unlabeled trees", leaf_statistic},
        {9, "verifier rejects single-arc mutations", mutation_robustness},
    };
    int failures = 0;
    for (const auto & c : criteria) {
        auto start = Clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        }
        catch (const std::exception & e) {
            outcome = {false, std::string("unexpected exception: ") + e.what()};
        }
        failures += outcome.pass ? 0 : 1;
        std::printf("criterion %d %s: %s; %s [%.1f s]\n", c.number, outcome.pass ? "PASS" : "FAIL", c.name,
            outcome.detail.c_str(), seconds_since(start));
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
