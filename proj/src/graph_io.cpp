#include "jamming/graph.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace jamming {

namespace {

// Next non-blank, comment-stripped line; false at end of input.
bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw GraphError("edge list line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Graph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_content_line(in, line, line_no)) throw GraphError("edge list is empty");

    long long n = -1, m = -1;
    {
        std::istringstream header(line);
        std::string extra;
        if (!(header >> n >> m) || (header >> extra) || n < 0 || m < 0)
            fail(line_no, "expected header 'n m'");
    }

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    while (static_cast<long long>(edges.size()) < m) {
        if (!next_content_line(in, line, line_no))
            throw GraphError("edge list ended after " + std::to_string(edges.size()) + " of " +
                             std::to_string(m) + " edges");
        std::istringstream row(line);
        long long u = -1, v = -1;
        std::string extra;
        if (!(row >> u >> v) || (row >> extra)) fail(line_no, "expected 'u v'");
        if (u < 0 || v < 0 || u >= n || v >= n) fail(line_no, "vertex out of range");
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    if (next_content_line(in, line, line_no)) fail(line_no, "unexpected content after edges");

    try {
        return Graph(static_cast<std::size_t>(n), std::move(edges));
    } catch (const GraphError& e) {
        throw GraphError(std::string("edge list: ") + e.what());
    }
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace jamming
