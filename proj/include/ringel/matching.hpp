#pragma once

#include <vector>

namespace ringel
{
    /// Maximum bipartite matching by augmenting paths. Left vertices are tried
    /// in increasing order and each tries its candidates in list order, so the
    /// result is a deterministic function of the input.
    class BipartiteMatcher
    {
    public:
        BipartiteMatcher(int left, int right) :
            _candidates(static_cast<std::size_t>(left)),
            _right(right)
        {
        }

        void add_candidate(int u, int v) { _candidates[static_cast<std::size_t>(u)].push_back(v); }

        /// match[u] = matched right vertex or -1.
        auto solve() -> std::vector<int>
        {
            auto left = _candidates.size();
            _match_left.assign(left, -1);
            _match_right.assign(static_cast<std::size_t>(_right), -1);
            for (std::size_t u = 0; u < left; ++u) {
                _visited.assign(static_cast<std::size_t>(_right), 0);
                augment(static_cast<int>(u));
            }
            return _match_left;
        }

        auto is_perfect(const std::vector<int> & match) const -> bool
        {
            for (auto v : match)
                if (v < 0)
                    return false;
            return true;
        }

    private:
        auto augment(int u) -> bool
        {
            for (auto v : _candidates[static_cast<std::size_t>(u)]) {
                if (_visited[static_cast<std::size_t>(v)])
                    continue;
                _visited[static_cast<std::size_t>(v)] = 1;
                auto & owner = _match_right[static_cast<std::size_t>(v)];
                if (owner < 0 || augment(owner)) {
                    owner = u;
                    _match_left[static_cast<std::size_t>(u)] = v;
                    return true;
                }
            }
            return false;
        }

        std::vector<std::vector<int>> _candidates;
        int _right;
        std::vector<int> _match_left, _match_right;
        std::vector<char> _visited;
    };
}
