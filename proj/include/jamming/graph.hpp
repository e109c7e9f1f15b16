#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace jamming {

using Vertex = std::uint32_t;
using EdgeIndex = std::uint32_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct Edge {
    Vertex u;
    Vertex v;
    friend bool operator==(const Edge&, const Edge&) = default;
};

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Finite undirected simple graph. Immutable once built.
//
// Edges keep the order they were supplied in; each edge is stored with
// u < v. Adjacency is kept in CSR form with every neighbour list sorted
// ascending, and a parallel list of incident edge indices.
class Graph {
public:
    Graph() = default;

    // Throws GraphError on self-loops, duplicate edges or out-of-range ends.
    Graph(std::size_t n_vertices, std::vector<Edge> edges);

    std::size_t vertex_count() const { return n_vertices_; }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeIndex e) const { return edges_[e]; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }
    // incident_edges(v)[i] joins v to neighbors(v)[i].
    std::span<const EdgeIndex> incident_edges(Vertex v) const {
        return {incident_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    std::size_t max_degree() const;
    bool adjacent(Vertex a, Vertex b) const;
    bool contains(Vertex v) const { return v < n_vertices_; }

private:
    std::size_t n_vertices_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> neighbors_;
    std::vector<EdgeIndex> incident_;
};

// ---------------------------------------------------------------------------
// Generators. Every generator documents its vertex layout; layouts are part
// of the reproducibility contract for seeded runs.

// Path 0-1-...-(n-1). n >= 1.
Graph make_line(std::size_t n);
// Cycle on 0..n-1 with edges (i, i+1 mod n). n >= 3.
Graph make_cycle(std::size_t n);
// Complete graph K_n.
Graph make_complete(std::size_t n);
// Star K_{1,leaves}: centre 0, leaves 1..leaves.
Graph make_star(std::size_t leaves);

// d-dimensional torus with side lengths dims[0..d-1], all >= 3. Vertex index
// is mixed radix with the first coordinate fastest:
// index = x0 + dims[0]*(x1 + dims[1]*(x2 + ...)). Edges are listed per vertex
// in index order, one per dimension, toward the +1 neighbour.
Graph make_torus(std::span<const std::size_t> dims);

// Hexagonal (honeycomb) torus in brick-wall form on a width x height grid,
// both even, width >= 4 and height >= 2. Vertex (x, y) has index x + width*y,
// horizontal edges (x,y)-(x+1,y) wrap around, and a vertical edge
// (x,y)-(x,y+1 mod height) exists iff x+y is even. Every vertex has degree 3
// and the graph is bipartite with colour (x+y) mod 2.
Graph make_hex_torus(std::size_t width, std::size_t height);

enum class LatticeKind { line, cycle, torus, hex_torus };

struct LatticeSpec {
    LatticeKind kind;
    std::vector<std::size_t> dims;
};

Graph make_lattice(const LatticeSpec& spec);

// Parses "line:N", "cycle:N", "torus:AxB[xC...]", "hex:WxH",
// "complete:N", "star:L". Throws GraphError.
Graph make_named_graph(const std::string& spec);

// Depth-truncated regular trees with one or two designated roots.
//
// Every vertex other than the roots has degree k+1 (before truncation).
// With one root, the root's degree is root_degrees[0] and must be one of
// k+1 (T_k), k (T_k^*), k-1 (T_k^**) or 1 (T_k^1). With two roots, both
// degrees must equal k (T_{k,m}^**) or 1 (T_{k,m}^1) and the roots sit
// root_separation >= 1 apart on a spine path.
//
// Truncation keeps the whole spine plus every vertex within `depth` of it.
// Layout: spine vertices first (root 0 is index 0, root 1 is index m), then
// the remaining vertices in breadth-first order.
struct TreeSpec {
    int k = 1;
    int depth = 0;
    std::vector<int> root_degrees;
    int root_separation = 0;

    static TreeSpec bethe(int k, int depth) { return {k, depth, {k + 1}, 0}; }
    static TreeSpec rooted(int k, int depth) { return {k, depth, {k}, 0}; }
};

struct RootedTree {
    Graph graph;
    std::vector<Vertex> roots;
};

RootedTree make_tree(const TreeSpec& spec);

// Zero-variance constructions: each vertex of `base` gains a pendant twin
// (twin of v is n+v), or an appended triangle (v' = n+2v, v'' = n+2v+1).
Graph with_pendant_twins(const Graph& base);
Graph with_appended_triangles(const Graph& base);

// ---------------------------------------------------------------------------
// Transformations

// Vertex-splitting surgery: every w in W is replaced by deg(w) new degree-1
// vertices, the i-th attached to the i-th neighbour of w.
//
// New layout: surviving vertices keep their relative order at indices
// 0..n-|W|-1; replacement copies follow, grouped by w ascending and, within a
// group, by neighbour ascending. Edge i of the result corresponds to edge i of
// the input (edge_map is the identity and is returned for explicitness).
struct SplitResult {
    Graph graph;
    std::vector<Vertex> w_star;
    std::vector<Vertex> vertex_map;  // old -> new, kNoVertex for split vertices
    std::vector<EdgeIndex> edge_map;
};

SplitResult split_vertices(const Graph& g, std::span<const Vertex> w);

// Induced subgraph on V \ removed. Surviving vertices keep relative order.
struct Subgraph {
    Graph graph;
    std::vector<Vertex> vertex_map;  // old -> new, kNoVertex for removed
};

Subgraph remove_vertices(const Graph& g, std::span<const Vertex> removed);

// ---------------------------------------------------------------------------
// Queries

// BFS distances from v; -1 for unreachable vertices.
std::vector<int> distances_from(const Graph& g, Vertex v);

// All w with dist(v, w) <= r, ascending.
std::vector<Vertex> neighborhood(const Graph& g, Vertex v, int r);

bool is_connected(const Graph& g);

// Proper 2-colouring, or nullopt when an odd cycle exists. The lowest-index
// vertex of every component gets colour 0.
std::optional<std::vector<std::uint8_t>> is_bipartite(const Graph& g);

// Blocking set witnessing positive entropy of v, or nullopt.
//
// v must have two neighbours that are not adjacent to each other, and B must
// be a non-empty independent subset of the distance-3 sphere such that every
// vertex at distance exactly 2 from v has a neighbour in B. When the whole
// distance-3 sphere qualifies it is returned; otherwise a depth-first search
// over candidates in ascending index order returns the first solution found.
std::optional<std::vector<Vertex>> positive_entropy(const Graph& g, Vertex v);

// Smallest r >= 0 with D^r / r! < tol. Equality counts as not below tol.
int truncation_radius(int max_degree, double tol);

// ---------------------------------------------------------------------------
// Edge-list text format: "n m" then m lines "u v" (0-based). Blank lines and
// '#' comments are ignored.

Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace jamming
