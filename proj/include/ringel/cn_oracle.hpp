#pragma once

#include "ringel/error.hpp"
#include "ringel/group.hpp"
#include "ringel/tree.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace ringel
{
    inline constexpr int cn_oracle_max_edges = 4;

    /// Coefficient of y_k^{3(k-1)} ... y_2^3 y_1^0 in
    ///   prod_{i<j} (y_j^2 - y_i^2) * prod_{i<j} (sum_{T(0,i)} y - sum_{T(0,j)} y)
    /// over F_p, where edge i enters the i-th vertex of the peeling order and
    /// T(0,i) is the set of edges on the root path to that vertex.
    inline auto cn_coefficient_oracle(const Tree & tree, int p) -> int
    {
        auto k = tree.edge_count();
        require(k <= cn_oracle_max_edges, ErrorCode::InvalidArgument,
            "k exceeds oracle bound (" + std::to_string(k) + " > " + std::to_string(cn_oracle_max_edges) + ")");
        require(p >= 3 && is_prime(p), ErrorCode::NotPrime, "p must be prime (got " + std::to_string(p) + ")");

        using Monomial = std::array<int, cn_oracle_max_edges>;
        using Poly = std::map<Monomial, long>;

        const auto & order = tree.bfs_order();
        std::vector<int> edge_of(static_cast<std::size_t>(tree.vertex_count()), -1);
        for (int i = 1; i <= k; ++i)
            edge_of[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i - 1;
        // path[i][e] = 1 iff edge e lies on the root path of vertex i.
        std::vector<std::array<int, cn_oracle_max_edges>> path(static_cast<std::size_t>(k), Monomial{});
        for (int i = 1; i <= k; ++i)
            for (auto v = order[static_cast<std::size_t>(i)]; v != tree.root(); v = tree.parent(v))
                path[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(edge_of[static_cast<std::size_t>(v)])] = 1;

        Monomial target{};
        for (int i = 0; i < k; ++i)
            target[static_cast<std::size_t>(i)] = 3 * i;

        // Exponents only grow, so terms exceeding the target are dropped early.
        auto multiply = [&](const Poly & a, const Poly & b) {
            Poly out;
            for (const auto & [ma, ca] : a)
                for (const auto & [mb, cb] : b) {
                    Monomial m{};
                    bool keep = true;
                    for (std::size_t e = 0; e < m.size() && keep; ++e) {
                        m[e] = ma[e] + mb[e];
                        keep = m[e] <= target[e];
                    }
                    if (! keep)
                        continue;
                    auto & c = out[m];
                    c = mod(static_cast<int>((c + ca * cb) % p), p);
                }
            std::erase_if(out, [](const auto & term) { return term.second == 0; });
            return out;
        };
        auto variable = [](int e, int power) {
            Monomial m{};
            m[static_cast<std::size_t>(e)] = power;
            return m;
        };

        Poly product{{Monomial{}, 1}};
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                product = multiply(product, Poly{{variable(j, 2), 1}, {variable(i, 2), p - 1}});
                Poly linear;
                for (int e = 0; e < k; ++e) {
                    auto c = path[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)]
                        - path[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)];
                    if (c != 0)
                        linear[variable(e, 1)] = mod(c, p);
                }
                product = multiply(product, linear);
            }
        auto it = product.find(target);
        return it == product.end() ? 0 : static_cast<int>(it->second);
    }
}
