#pragma once

#include "ringel/cayley.hpp"
#include "ringel/decomposition.hpp"
#include "ringel/error.hpp"
#include "ringel/group.hpp"
#include "ringel/target.hpp"
#include "ringel/tree.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ringel
{
    /// A certificate is a decomposition at rest; reading one back yields an
    /// equal value.
    using Certificate = Decomposition;

    inline constexpr const char * certificate_version = "ringel-decomp/1";

    namespace detail
    {
        using json = nlohmann::json;

        inline auto vertex_to_json(const Vertex & v) -> json
        {
            switch (v.kind) {
                case Vertex::Kind::Product: return json::array({v.a, v.b});
                case Vertex::Kind::Apex: return "alpha:" + std::to_string(v.a);
                case Vertex::Kind::Plain: return v.a;
            }
            return nullptr;
        }

        inline auto vertex_from_json(const json & j) -> Vertex
        {
            if (j.is_array()) {
                require(j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer(), ErrorCode::Schema,
                    "product vertex must be [x, i]");
                return Vertex::product(j[0].get<int>(), j[1].get<int>());
            }
            if (j.is_string()) {
                auto s = j.get<std::string>();
                require(s.rfind("alpha:", 0) == 0 && s.size() > 6, ErrorCode::Schema, "bad apex vertex '" + s + "'");
                std::size_t used = 0;
                int k = -1;
                try {
                    k = std::stoi(s.substr(6), &used);
                }
                catch (const std::exception &) {
                    used = 0;
                }
                require(used == s.size() - 6 && k >= 0, ErrorCode::Schema, "bad apex vertex '" + s + "'");
                return Vertex::apex(k);
            }
            require(j.is_number_integer(), ErrorCode::Schema, "vertex must be [x, i], \"alpha:k\" or an integer");
            return Vertex::plain(j.get<int>());
        }

        inline auto header_json(const Decomposition & d) -> json
        {
            json edges = json::array();
            for (auto [u, v] : d.tree.edges())
                edges.push_back(json::array({u, v}));
            json stats = json::object();
            for (const auto & [k, v] : d.stats)
                stats[k] = v;
            return {
                {"version", certificate_version},
                {"kind", to_string(d.kind)},
                {"p", d.p},
                {"r", d.r},
                {"copies", d.copies.size()},
                {"tree", {{"n", d.tree.vertex_count()}, {"edges", edges}, {"canonical", d.canonical}}},
                {"meta", {{"seed", d.seed}, {"stats", stats}}},
            };
        }

        inline auto copy_json(const Copy & c) -> json
        {
            json arcs = json::array();
            for (const auto & a : c.arcs)
                arcs.push_back(json::array({vertex_to_json(a.tail), vertex_to_json(a.head)}));
            return {{"label", c.label}, {"arcs", arcs}};
        }

        template <typename T>
        auto field(const json & j, const char * key) -> T
        {
            require(j.is_object() && j.contains(key), ErrorCode::Schema, std::string("missing field '") + key + "'");
            try {
                return j.at(key).get<T>();
            }
            catch (const json::exception &) {
                fail(ErrorCode::Schema, std::string("field '") + key + "' has the wrong type");
            }
        }

        inline auto parse_line(const std::string & line, std::size_t number) -> json
        {
            try {
                return json::parse(line);
            }
            catch (const json::parse_error & e) {
                fail(ErrorCode::Schema, "line " + std::to_string(number) + ": " + e.what());
            }
        }
    }

    /// Line-delimited JSON: a header line, then one line per copy. Keys are
    /// sorted and arcs keep the decomposition's (sorted) order.
    inline void write_certificate(const Decomposition & d, std::ostream & out)
    {
        out << detail::header_json(d).dump() << '\n';
        for (const auto & c : d.copies)
            out << detail::copy_json(c).dump() << '\n';
    }

    /// Writes to a temporary sibling and renames it into place.
    inline void write_certificate(const Decomposition & d, const std::filesystem::path & path)
    {
        auto temp = path;
        temp += ".tmp";
        {
            std::ofstream out(temp, std::ios::binary | std::ios::trunc);
            require(static_cast<bool>(out), ErrorCode::Io, "cannot open " + temp.string() + " for writing");
            write_certificate(d, out);
            out.flush();
            require(static_cast<bool>(out), ErrorCode::Io, "write to " + temp.string() + " failed");
        }
        std::error_code ec;
        std::filesystem::rename(temp, path, ec);
        require(! ec, ErrorCode::Io, "cannot rename " + temp.string() + " to " + path.string() + ": " + ec.message());
    }

    inline auto read_certificate(std::istream & in) -> Certificate
    {
        using detail::field;
        using detail::json;
        std::string line;
        require(static_cast<bool>(std::getline(in, line)), ErrorCode::Schema, "empty certificate");
        auto header = detail::parse_line(line, 1);
        require(header.is_object(), ErrorCode::Schema, "header must be an object");
        auto version = field<std::string>(header, "version");
        require(version == certificate_version, ErrorCode::VersionMismatch,
            "unsupported certificate version '" + version + "' (expected " + certificate_version + ")");

        Certificate c;
        auto kind = parse_target_kind(field<std::string>(header, "kind"));
        require(kind.has_value(), ErrorCode::Schema, "unknown target kind");
        c.kind = *kind;
        c.p = field<int>(header, "p");
        c.r = field<int>(header, "r");
        auto copies = field<long>(header, "copies");
        require(copies >= 0, ErrorCode::Schema, "negative copy count");

        auto tree = field<json>(header, "tree");
        auto n = field<int>(tree, "n");
        Tree::EdgeList edges;
        auto tree_edges = field<json>(tree, "edges");
        require(tree_edges.is_array(), ErrorCode::Schema, "tree edges must be an array");
        for (const auto & e : tree_edges) {
            require(e.is_array() && e.size() == 2 && e[0].is_number_integer() && e[1].is_number_integer(),
                ErrorCode::Schema, "tree edge must be [u, v]");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        try {
            c.tree = Tree(n, std::move(edges), 0);
        }
        catch (const Error & e) {
            fail(ErrorCode::Schema, std::string("invalid tree: ") + e.what());
        }
        c.canonical = field<std::string>(tree, "canonical");

        auto meta = field<json>(header, "meta");
        c.seed = field<std::uint64_t>(meta, "seed");
        auto stats = field<json>(meta, "stats");
        require(stats.is_object(), ErrorCode::Schema, "stats must be an object");
        for (const auto & [k, v] : stats.items()) {
            require(v.is_number_integer(), ErrorCode::Schema, "stat '" + k + "' must be an integer");
            c.stats[k] = v.get<std::int64_t>();
        }

        std::size_t number = 1;
        while (std::getline(in, line)) {
            ++number;
            if (line.empty())
                continue;
            auto j = detail::parse_line(line, number);
            Copy copy;
            copy.label = field<int>(j, "label");
            auto arcs = field<json>(j, "arcs");
            require(arcs.is_array(), ErrorCode::Schema, "arcs must be an array");
            for (const auto & a : arcs) {
                require(a.is_array() && a.size() == 2, ErrorCode::Schema, "arc must be [tail, head]");
                copy.arcs.push_back({detail::vertex_from_json(a[0]), detail::vertex_from_json(a[1])});
            }
            c.copies.push_back(std::move(copy));
        }
        require(static_cast<long>(c.copies.size()) == copies, ErrorCode::Schema,
            "header announces " + std::to_string(copies) + " copies, found " + std::to_string(c.copies.size()));
        return c;
    }

    inline auto read_certificate(const std::filesystem::path & path) -> Certificate
    {
        std::ifstream in(path, std::ios::binary);
        require(static_cast<bool>(in), ErrorCode::Io, "cannot open " + path.string());
        return read_certificate(in);
    }

    struct CheckResult
    {
        std::string name;
        bool pass = true;
        std::string detail;
    };

    struct VerificationReport
    {
        bool pass = true;
        std::vector<CheckResult> checks;
        std::string counterexample;  ///< first failure, empty on pass

        auto check(const std::string & name) const -> const CheckResult *
        {
            for (const auto & c : checks)
                if (c.name == name)
                    return &c;
            return nullptr;
        }
    };

    namespace detail
    {
        inline auto edge_string(const Edge & e) -> std::string
        {
            return "{" + e.first.to_string() + ", " + e.second.to_string() + "}";
        }

        /// The copy as a tree on 0..k, or nullopt if it is not one.
        inline auto copy_as_tree(const Copy & copy) -> std::optional<Tree>
        {
            std::map<Vertex, int> ids;
            for (const auto & a : copy.arcs)
                for (const auto & v : {a.tail, a.head})
                    ids.emplace(v, static_cast<int>(ids.size()));
            if (ids.size() != copy.arcs.size() + 1)
                return std::nullopt;
            Tree::EdgeList edges;
            for (const auto & a : copy.arcs)
                edges.emplace_back(ids[a.tail], ids[a.head]);
            try {
                return Tree(static_cast<int>(ids.size()), std::move(edges), 0);
            }
            catch (const Error &) {
                return std::nullopt;
            }
        }
    }

    /// Checks, using only the certificate: (a) each copy has |E(T)| distinct
    /// target edges, (b) copies are pairwise edge-disjoint, (c) they cover the
    /// target, (d) each copy is isomorphic to T, (e) count * |E(T)| = |E(target)|.
    inline auto verify_decomposition(const Certificate & cert) -> VerificationReport
    {
        TargetGraph target;
        try {
            target = build_target(cert.kind, cert.p, cert.r);
        }
        catch (const Error & e) {
            fail(ErrorCode::Schema, std::string("certificate names an invalid target: ") + e.what());
        }
        VerificationReport report;
        auto record = [&](const std::string & name, const std::string & problem) {
            report.checks.push_back({name, problem.empty(), problem});
            if (! problem.empty() && report.pass) {
                report.pass = false;
                report.counterexample = problem;
            }
        };
        auto tree_edges = static_cast<std::size_t>(cert.tree.edge_count());

        std::string problem;
        for (const auto & copy : cert.copies) {
            if (! problem.empty())
                break;
            if (copy.arcs.size() != tree_edges) {
                problem = "copy " + std::to_string(copy.label) + " has " + std::to_string(copy.arcs.size())
                    + " arcs, expected " + std::to_string(tree_edges);
                break;
            }
            std::set<Edge> own;
            for (const auto & a : copy.arcs) {
                auto e = make_edge(a.tail, a.head);
                if (! target.contains(e)) {
                    problem = "copy " + std::to_string(copy.label) + " uses non-target edge " + detail::edge_string(e);
                    break;
                }
                if (! own.insert(e).second) {
                    problem = "copy " + std::to_string(copy.label) + " repeats edge " + detail::edge_string(e);
                    break;
                }
            }
        }
        record("edges-in-target", problem);

        problem.clear();
        std::map<Edge, int> cover;
        for (const auto & copy : cert.copies) {
            for (const auto & a : copy.arcs) {
                auto e = make_edge(a.tail, a.head);
                auto [it, fresh] = cover.emplace(e, copy.label);
                if (! fresh && it->second != copy.label && problem.empty())
                    problem = "duplicated edge " + detail::edge_string(e) + " in copies " + std::to_string(it->second)
                        + " and " + std::to_string(copy.label);
            }
        }
        record("disjoint", problem);

        problem.clear();
        for (const auto & e : target.edges)
            if (! cover.contains(e)) {
                problem = "missing edge " + detail::edge_string(e);
                break;
            }
        record("covers-target", problem);

        problem.clear();
        auto canonical = canonical_form(cert.tree);
        if (canonical != cert.canonical)
            problem = "recorded canonical form does not match the tree";
        for (const auto & copy : cert.copies) {
            if (! problem.empty())
                break;
            auto t = detail::copy_as_tree(copy);
            if (! t || canonical_form(*t) != canonical)
                problem = "copy " + std::to_string(copy.label) + " is not isomorphic to the tree";
        }
        record("isomorphic", problem);

        problem.clear();
        if (cert.copies.size() * tree_edges != target.edges.size())
            problem = std::to_string(cert.copies.size()) + " copies x " + std::to_string(tree_edges)
                + " edges != " + std::to_string(target.edges.size()) + " target edges";
        record("edge-count", problem);
        return report;
    }

    /// True iff no two arcs share a color; every arc must lie in Cay(group, colors).
    inline auto verify_rainbow(const std::vector<Arc<int>> & arcs, const ColorSet & colors, const CyclicGroup & group) -> bool
    {
        for (const auto & a : arcs)
            require(colors.contains(color_of(group, a)), ErrorCode::InvalidArgument,
                "arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) + ") is not in the Cayley digraph");
        return is_rainbow(group, arcs);
    }

    inline auto verify_rainbow(const std::vector<Arc<ProductVertex>> & arcs, const ColorSet & colors, const ProductGroup & group)
        -> bool
    {
        for (const auto & a : arcs)
            require(colors.contains(color_of(group, a).x), ErrorCode::InvalidArgument, "arc is not in the Cayley digraph");
        return is_rainbow(group, arcs);
    }
}
