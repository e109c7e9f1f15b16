#include "jamming/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <string>

namespace jamming {

Graph::Graph(std::size_t n_vertices, std::vector<Edge> edges)
    : n_vertices_(n_vertices), edges_(std::move(edges)) {
    if (n_vertices_ >= kNoVertex) throw GraphError("too many vertices");
    std::vector<std::size_t> deg(n_vertices_, 0);
    for (auto& e : edges_) {
        if (e.u >= n_vertices_ || e.v >= n_vertices_) {
            throw GraphError("edge endpoint out of range: " + std::to_string(e.u) + " " +
                             std::to_string(e.v));
        }
        if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
        ++deg[e.u];
        ++deg[e.v];
    }
    offsets_.assign(n_vertices_ + 1, 0);
    for (std::size_t v = 0; v < n_vertices_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];

    std::vector<std::pair<Vertex, EdgeIndex>> slots(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (EdgeIndex i = 0; i < edges_.size(); ++i) {
        const auto [u, v] = edges_[i];
        slots[fill[u]++] = {v, i};
        slots[fill[v]++] = {u, i};
    }
    neighbors_.resize(slots.size());
    incident_.resize(slots.size());
    for (std::size_t v = 0; v < n_vertices_; ++v) {
        auto first = slots.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
        auto last = slots.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
        std::sort(first, last);
        for (auto it = first; it != last; ++it) {
            if (it != first && it->first == (it - 1)->first) {
                throw GraphError("duplicate edge " + std::to_string(v) + " " +
                                 std::to_string(it->first));
            }
            const auto pos = static_cast<std::size_t>(it - slots.begin());
            neighbors_[pos] = it->first;
            incident_[pos] = it->second;
        }
    }
}

std::size_t Graph::max_degree() const {
    std::size_t best = 0;
    for (Vertex v = 0; v < n_vertices_; ++v) best = std::max(best, degree(v));
    return best;
}

bool Graph::adjacent(Vertex a, Vertex b) const {
    const auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

// ---------------------------------------------------------------------------

Graph make_line(std::size_t n) {
    if (n < 1) throw GraphError("line needs at least one vertex");
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return Graph(n, std::move(edges));
}

Graph make_cycle(std::size_t n) {
    if (n < 3) throw GraphError("cycle needs at least three vertices");
    std::vector<Edge> edges;
    edges.reserve(n);
    for (Vertex i = 0; i < n; ++i) edges.push_back({i, static_cast<Vertex>((i + 1) % n)});
    return Graph(n, std::move(edges));
}

Graph make_complete(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) edges.push_back({i, j});
    return Graph(n, std::move(edges));
}

Graph make_star(std::size_t leaves) {
    std::vector<Edge> edges;
    for (Vertex i = 1; i <= leaves; ++i) edges.push_back({0, i});
    return Graph(leaves + 1, std::move(edges));
}

Graph make_torus(std::span<const std::size_t> dims) {
    if (dims.empty()) throw GraphError("torus needs at least one dimension");
    std::size_t n = 1;
    for (auto d : dims) {
        if (d < 3) throw GraphError("torus side lengths must be at least 3");
        n *= d;
    }
    std::vector<Edge> edges;
    edges.reserve(n * dims.size());
    std::vector<std::size_t> coord(dims.size(), 0);
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::size_t stride = 1;
        for (std::size_t d = 0; d < dims.size(); ++d) {
            const std::size_t up = (coord[d] + 1) % dims[d];
            const std::size_t other = idx - coord[d] * stride + up * stride;
            edges.push_back({static_cast<Vertex>(idx), static_cast<Vertex>(other)});
            stride *= dims[d];
        }
        for (std::size_t d = 0; d < dims.size(); ++d) {
            if (++coord[d] < dims[d]) break;
            coord[d] = 0;
        }
    }
    return Graph(n, std::move(edges));
}

Graph make_hex_torus(std::size_t width, std::size_t height) {
    if (width % 2 != 0 || height % 2 != 0)
        throw GraphError("hexagonal torus dimensions must be even");
    if (width < 4 || height < 2) throw GraphError("hexagonal torus too small");
    const auto at = [width](std::size_t x, std::size_t y) {
        return static_cast<Vertex>(x + width * y);
    };
    std::vector<Edge> edges;
    edges.reserve(width * height * 3 / 2);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            edges.push_back({at(x, y), at((x + 1) % width, y)});
            if ((x + y) % 2 == 0) edges.push_back({at(x, y), at(x, (y + 1) % height)});
        }
    }
    return Graph(width * height, std::move(edges));
}

Graph make_lattice(const LatticeSpec& spec) {
    switch (spec.kind) {
        case LatticeKind::line:
            if (spec.dims.size() != 1) throw GraphError("line takes one dimension");
            return make_line(spec.dims[0]);
        case LatticeKind::cycle:
            if (spec.dims.size() != 1) throw GraphError("cycle takes one dimension");
            return make_cycle(spec.dims[0]);
        case LatticeKind::torus:
            return make_torus(spec.dims);
        case LatticeKind::hex_torus:
            if (spec.dims.size() != 2) throw GraphError("hexagonal torus takes two dimensions");
            return make_hex_torus(spec.dims[0], spec.dims[1]);
    }
    throw GraphError("unknown lattice kind");
}

namespace {

std::vector<std::size_t> parse_dims(const std::string& text) {
    std::vector<std::size_t> dims;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, 'x')) {
        std::size_t used = 0;
        unsigned long value = 0;
        try {
            value = std::stoul(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != part.size()) throw GraphError("bad dimension '" + part + "'");
        dims.push_back(value);
    }
    if (dims.empty()) throw GraphError("missing dimensions");
    return dims;
}

}  // namespace

Graph make_named_graph(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw GraphError("graph spec must look like kind:dims");
    const std::string kind = spec.substr(0, colon);
    const auto dims = parse_dims(spec.substr(colon + 1));
    const auto single = [&]() {
        if (dims.size() != 1) throw GraphError(kind + " takes one dimension");
        return dims[0];
    };
    if (kind == "line") return make_line(single());
    if (kind == "cycle") return make_cycle(single());
    if (kind == "complete") return make_complete(single());
    if (kind == "star") return make_star(single());
    if (kind == "torus") return make_torus(dims);
    if (kind == "hex") return make_lattice({LatticeKind::hex_torus, dims});
    throw GraphError("unknown graph kind '" + kind + "'");
}

RootedTree make_tree(const TreeSpec& spec) {
    const int k = spec.k;
    if (k < 1) throw GraphError("tree branching k must be >= 1");
    if (spec.depth < 0) throw GraphError("tree depth must be >= 0");

    std::vector<int> required;  // target degree of each spine vertex
    if (spec.root_degrees.size() == 1) {
        const int d = spec.root_degrees[0];
        if (d != k + 1 && d != k && d != k - 1 && d != 1)
            throw GraphError("root degree must be k+1, k, k-1 or 1");
        if (spec.root_separation != 0) throw GraphError("single-root tree takes no separation");
        required = {d};
    } else if (spec.root_degrees.size() == 2) {
        const int d = spec.root_degrees[0];
        if (spec.root_degrees[1] != d || (d != k && d != 1))
            throw GraphError("two-root trees need both root degrees equal to k or to 1");
        if (spec.root_separation < 1) throw GraphError("root separation must be >= 1");
        required.assign(static_cast<std::size_t>(spec.root_separation) + 1, k + 1);
        required.front() = d;
        required.back() = d;
    } else {
        throw GraphError("tree needs one or two roots");
    }

    std::vector<Edge> edges;
    for (Vertex i = 0; i + 1 < required.size(); ++i) edges.push_back({i, i + 1});

    struct Pending {
        Vertex v;
        int dist;
        int children;
    };
    std::deque<Pending> queue;
    for (std::size_t i = 0; i < required.size(); ++i) {
        const int spine_edges = (i > 0 ? 1 : 0) + (i + 1 < required.size() ? 1 : 0);
        queue.push_back({static_cast<Vertex>(i), 0, required[i] - spine_edges});
    }
    Vertex next = static_cast<Vertex>(required.size());
    while (!queue.empty()) {
        const Pending p = queue.front();
        queue.pop_front();
        if (p.dist >= spec.depth) continue;
        for (int c = 0; c < p.children; ++c) {
            edges.push_back({p.v, next});
            queue.push_back({next, p.dist + 1, k});
            ++next;
        }
    }

    RootedTree out{Graph(next, std::move(edges)), {0}};
    if (spec.root_degrees.size() == 2)
        out.roots.push_back(static_cast<Vertex>(spec.root_separation));
    return out;
}

Graph with_pendant_twins(const Graph& base) {
    const auto n = static_cast<Vertex>(base.vertex_count());
    auto edges = base.edges();
    for (Vertex v = 0; v < n; ++v) edges.push_back({v, n + v});
    return Graph(2 * std::size_t{n}, std::move(edges));
}

Graph with_appended_triangles(const Graph& base) {
    const auto n = static_cast<Vertex>(base.vertex_count());
    auto edges = base.edges();
    for (Vertex v = 0; v < n; ++v) {
        const Vertex a = n + 2 * v;
        const Vertex b = a + 1;
        edges.push_back({v, a});
        edges.push_back({v, b});
        edges.push_back({a, b});
    }
    return Graph(3 * std::size_t{n}, std::move(edges));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Vertex> as_vertex_set(const Graph& g, std::span<const Vertex> w) {
    std::vector<Vertex> set(w.begin(), w.end());
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    for (auto v : set)
        if (!g.contains(v)) throw GraphError("vertex " + std::to_string(v) + " not in graph");
    return set;
}

}  // namespace

SplitResult split_vertices(const Graph& g, std::span<const Vertex> w) {
    const auto set = as_vertex_set(g, w);
    std::vector<bool> in_w(g.vertex_count(), false);
    for (auto v : set) {
        if (g.degree(v) == 0)
            throw GraphError("cannot split isolated vertex " + std::to_string(v));
        in_w[v] = true;
    }

    SplitResult out;
    out.vertex_map.assign(g.vertex_count(), kNoVertex);
    Vertex next = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!in_w[v]) out.vertex_map[v] = next++;

    // copy_of[slot] is the replacement vertex for (w, neighbours(w)[i]).
    std::vector<Vertex> copy_base(g.vertex_count(), kNoVertex);
    for (auto v : set) {
        copy_base[v] = next;
        for (std::size_t i = 0; i < g.degree(v); ++i) out.w_star.push_back(next++);
    }

    const auto endpoint = [&](Vertex end, Vertex other) {
        if (!in_w[end]) return out.vertex_map[end];
        const auto nb = g.neighbors(end);
        const auto pos = std::lower_bound(nb.begin(), nb.end(), other) - nb.begin();
        return copy_base[end] + static_cast<Vertex>(pos);
    };

    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) edges.push_back({endpoint(e.u, e.v), endpoint(e.v, e.u)});
    out.graph = Graph(next, std::move(edges));
    out.edge_map.resize(g.edge_count());
    std::iota(out.edge_map.begin(), out.edge_map.end(), EdgeIndex{0});
    return out;
}

Subgraph remove_vertices(const Graph& g, std::span<const Vertex> removed) {
    const auto set = as_vertex_set(g, removed);
    Subgraph out;
    out.vertex_map.assign(g.vertex_count(), kNoVertex);
    std::vector<bool> gone(g.vertex_count(), false);
    for (auto v : set) gone[v] = true;
    Vertex next = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!gone[v]) out.vertex_map[v] = next++;
    std::vector<Edge> edges;
    for (const auto& e : g.edges())
        if (!gone[e.u] && !gone[e.v]) edges.push_back({out.vertex_map[e.u], out.vertex_map[e.v]});
    out.graph = Graph(next, std::move(edges));
    return out;
}

// ---------------------------------------------------------------------------

std::vector<int> distances_from(const Graph& g, Vertex v) {
    if (!g.contains(v)) throw GraphError("vertex " + std::to_string(v) + " not in graph");
    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<Vertex> frontier{v};
    dist[v] = 0;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
        const Vertex x = frontier[head];
        for (auto y : g.neighbors(x)) {
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                frontier.push_back(y);
            }
        }
    }
    return dist;
}

std::vector<Vertex> neighborhood(const Graph& g, Vertex v, int r) {
    if (!g.contains(v)) throw GraphError("vertex " + std::to_string(v) + " not in graph");
    if (r < 0) throw GraphError("neighbourhood radius must be >= 0");
    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<Vertex> seen{v};
    dist[v] = 0;
    for (std::size_t head = 0; head < seen.size(); ++head) {
        const Vertex x = seen[head];
        if (dist[x] == r) continue;
        for (auto y : g.neighbors(x)) {
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                seen.push_back(y);
            }
        }
    }
    std::sort(seen.begin(), seen.end());
    return seen;
}

bool is_connected(const Graph& g) {
    if (g.vertex_count() == 0) return true;
    const auto dist = distances_from(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

std::optional<std::vector<std::uint8_t>> is_bipartite(const Graph& g) {
    constexpr std::uint8_t unset = 2;
    std::vector<std::uint8_t> colour(g.vertex_count(), unset);
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (colour[s] != unset) continue;
        colour[s] = 0;
        queue.assign(1, s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex x = queue[head];
            for (auto y : g.neighbors(x)) {
                if (colour[y] == unset) {
                    colour[y] = static_cast<std::uint8_t>(1 - colour[x]);
                    queue.push_back(y);
                } else if (colour[y] == colour[x]) {
                    return std::nullopt;
                }
            }
        }
    }
    return colour;
}

namespace {

class BlockingSetSearch {
public:
    BlockingSetSearch(const Graph& g, std::vector<Vertex> targets, std::vector<Vertex> candidates)
        : g_(g), targets_(std::move(targets)), candidates_(std::move(candidates)),
          cover_(g.vertex_count(), 0) {}

    std::optional<std::vector<Vertex>> run() {
        if (descend()) return chosen_;
        return std::nullopt;
    }

private:
    static constexpr std::size_t kNodeBudget = 5'000'000;

    bool descend() {
        if (++nodes_ > kNodeBudget) throw std::runtime_error("blocking-set search budget exhausted");
        const auto open = std::find_if(targets_.begin(), targets_.end(),
                                       [&](Vertex x) { return cover_[x] == 0; });
        if (open == targets_.end()) return true;
        for (auto c : g_.neighbors(*open)) {
            if (!std::binary_search(candidates_.begin(), candidates_.end(), c)) continue;
            if (std::any_of(chosen_.begin(), chosen_.end(),
                            [&](Vertex b) { return g_.adjacent(b, c); }))
                continue;
            chosen_.push_back(c);
            for (auto y : g_.neighbors(c)) ++cover_[y];
            if (descend()) return true;
            for (auto y : g_.neighbors(c)) --cover_[y];
            chosen_.pop_back();
        }
        return false;
    }

    const Graph& g_;
    std::vector<Vertex> targets_;
    std::vector<Vertex> candidates_;
    std::vector<int> cover_;
    std::vector<Vertex> chosen_;
    std::size_t nodes_ = 0;
};

}  // namespace

std::optional<std::vector<Vertex>> positive_entropy(const Graph& g, Vertex v) {
    const auto nb = g.neighbors(v);
    bool spread = false;
    for (std::size_t i = 0; i < nb.size() && !spread; ++i)
        for (std::size_t j = i + 1; j < nb.size() && !spread; ++j)
            spread = !g.adjacent(nb[i], nb[j]);
    if (!spread) return std::nullopt;

    const auto dist = distances_from(g, v);
    std::vector<Vertex> sphere2, sphere3;
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
        if (dist[x] == 2) sphere2.push_back(x);
        if (dist[x] == 3) sphere3.push_back(x);
    }
    if (sphere2.empty() || sphere3.empty()) return std::nullopt;

    const auto independent = [&](const std::vector<Vertex>& set) {
        for (auto a : set)
            for (auto b : g.neighbors(a))
                if (std::binary_search(set.begin(), set.end(), b)) return false;
        return true;
    };
    const auto dominates = [&](const std::vector<Vertex>& set) {
        return std::all_of(sphere2.begin(), sphere2.end(), [&](Vertex x) {
            const auto xs = g.neighbors(x);
            return std::any_of(xs.begin(), xs.end(), [&](Vertex y) {
                return std::binary_search(set.begin(), set.end(), y);
            });
        });
    };
    if (independent(sphere3) && dominates(sphere3)) return sphere3;

    auto found = BlockingSetSearch(g, sphere2, sphere3).run();
    if (found) std::sort(found->begin(), found->end());
    return found;
}

int truncation_radius(int max_degree, double tol) {
    if (max_degree < 1) throw std::invalid_argument("truncation_radius: max degree must be >= 1");
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("truncation_radius: tol must lie in (0,1)");
    // log(D^r / r!) accumulated incrementally; values within kTie of log(tol)
    // are treated as equal, hence not below tol.
    constexpr double kTie = 1e-12;
    const double log_tol = std::log(tol);
    const double log_d = std::log(static_cast<double>(max_degree));
    double log_term = 0.0;
    for (int r = 0;; ++r) {
        if (r > 0) log_term += log_d - std::log(static_cast<double>(r));
        if (log_term < log_tol - kTie) return r;
    }
}

}  // namespace jamming
