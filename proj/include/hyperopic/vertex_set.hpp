#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace hyperopic {

using Vertex = int;

// Vertex set of one graph as a 64-bit mask.  Bit v = vertex v.
struct VertexSet {
    std::uint64_t bits = 0;

    constexpr VertexSet() = default;
    constexpr explicit VertexSet(std::uint64_t b) : bits(b) {}

    static constexpr VertexSet single(Vertex v) {
        return VertexSet(std::uint64_t{1} << v);
    }
    static constexpr VertexSet first_n(int n) {
        return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }
    static VertexSet of(std::initializer_list<Vertex> vs) {
        VertexSet s;
        for (Vertex v : vs) s.bits |= std::uint64_t{1} << v;
        return s;
    }

    constexpr bool empty() const { return bits == 0; }
    constexpr int size() const { return std::popcount(bits); }
    constexpr bool contains(Vertex v) const { return (bits >> v) & 1; }
    constexpr bool subset_of(VertexSet o) const { return (bits & ~o.bits) == 0; }
    constexpr Vertex lowest() const { return std::countr_zero(bits); }

    constexpr VertexSet& operator|=(VertexSet o) { bits |= o.bits; return *this; }
    constexpr VertexSet& operator&=(VertexSet o) { bits &= o.bits; return *this; }
    constexpr VertexSet& operator-=(VertexSet o) { bits &= ~o.bits; return *this; }
    constexpr VertexSet& add(Vertex v) { bits |= std::uint64_t{1} << v; return *this; }
    constexpr VertexSet& remove(Vertex v) { bits &= ~(std::uint64_t{1} << v); return *this; }

    friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits | b.bits); }
    friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits & b.bits); }
    friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits & ~b.bits); }
    friend constexpr bool operator==(VertexSet a, VertexSet b) { return a.bits == b.bits; }
    friend constexpr bool operator!=(VertexSet a, VertexSet b) { return a.bits != b.bits; }

    // Iterates members in ascending order.
    struct iterator {
        std::uint64_t rest;
        Vertex operator*() const { return std::countr_zero(rest); }
        iterator& operator++() { rest &= rest - 1; return *this; }
        bool operator!=(const iterator& o) const { return rest != o.rest; }
    };
    iterator begin() const { return {bits}; }
    iterator end() const { return {0}; }

    std::vector<Vertex> to_vector() const {
        std::vector<Vertex> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (Vertex v : *this) out.push_back(v);
        return out;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (Vertex v : *this) {
            if (!first) s += ",";
            s += std::to_string(v);
            first = false;
        }
        return s + "}";
    }
};

}  // namespace hyperopic
