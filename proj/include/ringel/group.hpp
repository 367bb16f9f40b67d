#pragma once

#include "ringel/error.hpp"

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

namespace ringel
{
    inline auto is_prime(long n) -> bool
    {
        if (n < 2)
            return false;
        for (long d = 2; d * d <= n; ++d)
            if (n % d == 0)
                return false;
        return true;
    }

    inline auto mod(long a, long n) -> int
    {
        auto r = a % n;
        return static_cast<int>(r < 0 ? r + n : r);
    }

    /// Z_p for a prime p >= 3.
    class CyclicGroup
    {
    public:
        using Element = int;

        explicit CyclicGroup(int p) :
            _p(p)
        {
            require(p >= 3 && is_prime(p), ErrorCode::NotPrime, "p must be prime (got " + std::to_string(p) + ")");
        }

        auto p() const -> int { return _p; }
        auto order() const -> int { return _p; }
        auto add(int a, int b) const -> int { return mod(a + b, _p); }
        auto neg(int a) const -> int { return mod(-a, _p); }
        auto elements() const -> std::vector<int>
        {
            std::vector<int> result(static_cast<std::size_t>(_p));
            for (int x = 0; x < _p; ++x)
                result[static_cast<std::size_t>(x)] = x;
            return result;
        }

        friend auto operator==(const CyclicGroup &, const CyclicGroup &) -> bool = default;

    private:
        int _p;
    };

    /// A vertex of Z_p x Z_r: (x, i) with x the Z_p part and i the layer.
    struct ProductVertex
    {
        int x = 0;
        int layer = 0;

        friend auto operator<=>(const ProductVertex &, const ProductVertex &) = default;
    };

    class ProductGroup
    {
    public:
        using Element = ProductVertex;

        ProductGroup(int p, int r) :
            _base(p),
            _r(r)
        {
            require(r >= 1, ErrorCode::InvalidArgument, "blow-up factor r must be positive");
        }

        auto p() const -> int { return _base.p(); }
        auto r() const -> int { return _r; }
        auto order() const -> int { return p() * _r; }
        auto add(ProductVertex a, ProductVertex b) const -> ProductVertex
        {
            return {mod(a.x + b.x, p()), mod(a.layer + b.layer, _r)};
        }
        auto neg(ProductVertex a) const -> ProductVertex { return {mod(-a.x, p()), mod(-a.layer, _r)}; }
        auto elements() const -> std::vector<ProductVertex>
        {
            std::vector<ProductVertex> result;
            result.reserve(static_cast<std::size_t>(order()));
            for (int x = 0; x < p(); ++x)
                for (int i = 0; i < _r; ++i)
                    result.push_back({x, i});
            return result;
        }

        friend auto operator==(const ProductGroup &, const ProductGroup &) -> bool = default;

    private:
        CyclicGroup _base;
        int _r;
    };

    /// Antisymmetric subset of Z_p^*: never contains both s and p - s.
    class ColorSet
    {
    public:
        explicit ColorSet(int p) :
            _p(p)
        {
            require(p >= 3 && is_prime(p), ErrorCode::NotPrime, "p must be prime (got " + std::to_string(p) + ")");
        }

        ColorSet(int p, const std::vector<int> & elements) :
            ColorSet(p)
        {
            for (auto s : elements)
                add(s);
        }

        void add(int s)
        {
            require(s >= 1 && s < _p, ErrorCode::InvalidArgument,
                "color " + std::to_string(s) + " outside Z_" + std::to_string(_p) + "^*");
            require(! contains(s), ErrorCode::InvalidArgument, "repeated color " + std::to_string(s));
            require(! contains(_p - s), ErrorCode::SymmetricColors,
                "colors " + std::to_string(s) + " and " + std::to_string(_p - s) + " are symmetric");
            _elements.push_back(s);
        }

        auto contains(int s) const -> bool
        {
            return std::find(_elements.begin(), _elements.end(), s) != _elements.end();
        }

        auto p() const -> int { return _p; }
        auto size() const -> std::size_t { return _elements.size(); }
        auto empty() const -> bool { return _elements.empty(); }
        auto elements() const -> const std::vector<int> & { return _elements; }
        /// A color set of size (p-1)/2 picks one element out of every pair {s, -s}.
        auto is_complete() const -> bool { return 2 * static_cast<int>(size()) == _p - 1; }

        friend auto operator==(const ColorSet &, const ColorSet &) -> bool = default;

    private:
        int _p;
        std::vector<int> _elements;
    };
}
