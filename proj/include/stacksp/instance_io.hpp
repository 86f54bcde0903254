#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "stacksp/instance.hpp"

namespace stacksp {

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::uint64_t parse_count(const std::string& token, std::size_t line, const char* what) {
    if (!all_digits(token) || token.size() > 18)
        throw ParseError(line, std::string("malformed ") + what + " '" + token + "'");
    return std::stoull(token);
}

inline std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

// Index of the first non-blank line, or lines.size().
inline std::size_t first_content_line(const std::vector<std::string>& lines) {
    std::size_t i = 0;
    while (i < lines.size() && trim(lines[i]).empty()) ++i;
    return i;
}

} // namespace detail

inline PricingInstance parse_instance(std::istream& in) {
    auto lines = detail::read_lines(in);
    std::size_t first = detail::first_content_line(lines);
    if (first == lines.size() || detail::trim(lines[first]) != "# stacksp-instance v1")
        throw ParseError(first + 1, "expected header '# stacksp-instance v1'");

    std::optional<std::uint64_t> vertices;
    std::optional<std::pair<std::uint64_t, std::size_t>> source, sink;
    bool no_baseline = false;
    std::vector<FixedEdge> fixed;
    std::vector<VariableEdge> variable;
    std::vector<std::string> meta;
    struct Origin {
        EdgeRef edge;
        std::size_t line;
        std::uint64_t tail, head;
    };
    std::vector<Origin> origins;
    std::map<std::string, std::size_t> label_line;

    for (std::size_t i = first + 1; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        std::string_view raw = detail::trim(lines[i]);
        if (raw.empty() || raw.front() == '#') continue;
        auto tok = detail::split_ws(raw);
        const std::string& key = tok[0];
        if (key == "meta") {
            std::string_view rest = detail::trim(raw.substr(4));
            meta.emplace_back(rest);
        } else if (key == "vertices") {
            if (tok.size() != 2) throw ParseError(lineno, "malformed 'vertices' line");
            if (vertices) throw ParseError(lineno, "duplicate 'vertices' line");
            vertices = detail::parse_count(tok[1], lineno, "vertex count");
            if (*vertices == 0) throw ParseError(lineno, "vertex count must be positive");
        } else if (key == "source" || key == "sink") {
            if (tok.size() != 2) throw ParseError(lineno, "malformed '" + key + "' line");
            auto& slot = key == "source" ? source : sink;
            if (slot) throw ParseError(lineno, "duplicate '" + key + "' line");
            slot = std::make_pair(detail::parse_count(tok[1], lineno, "vertex id"), lineno);
        } else if (key == "baseline") {
            if (tok.size() != 2 || tok[1] != "none") throw ParseError(lineno, "malformed 'baseline' line");
            no_baseline = true;
        } else if (key == "edge") {
            if (tok.size() != 5 || (tok[1] != "f" && tok[1] != "v"))
                throw ParseError(lineno, "malformed edge line");
            auto tail = detail::parse_count(tok[2], lineno, "vertex id");
            auto head = detail::parse_count(tok[3], lineno, "vertex id");
            if (tok[1] == "f") {
                Rational cost;
                try {
                    cost = parse_rational(tok[4]);
                } catch (const InputError& e) {
                    throw ParseError(lineno, e.what());
                }
                if (cost < 0) throw ParseError(lineno, "negative cost");
                origins.push_back({fixed_edge(fixed.size()), lineno, tail, head});
                fixed.push_back({static_cast<VertexId>(tail), static_cast<VertexId>(head), cost});
            } else {
                if (auto [it, fresh] = label_line.emplace(tok[4], lineno); !fresh)
                    throw ParseError(lineno, "duplicate label '" + tok[4] + "' (first on line " +
                                                 std::to_string(it->second) + ")");
                origins.push_back({variable_edge(variable.size()), lineno, tail, head});
                variable.push_back({static_cast<VertexId>(tail), static_cast<VertexId>(head), tok[4]});
            }
        } else {
            throw ParseError(lineno, "unknown directive '" + key + "'");
        }
    }
    if (!vertices) throw ParseError(lines.size(), "missing 'vertices' line");
    if (!source) throw ParseError(lines.size(), "missing 'source' line");
    if (!sink) throw ParseError(lines.size(), "missing 'sink' line");
    if (source->first >= *vertices) throw ParseError(source->second, "unknown vertex id");
    if (sink->first >= *vertices) throw ParseError(sink->second, "unknown vertex id");
    for (const auto& o : origins)
        if (o.tail >= *vertices || o.head >= *vertices) throw ParseError(o.line, "unknown vertex id");

    PricingInstance inst(*vertices, static_cast<VertexId>(source->first),
                         static_cast<VertexId>(sink->first), std::move(fixed), std::move(variable),
                         std::move(meta), no_baseline);
    auto build = [&](std::size_t edge_count) {
        std::vector<FixedEdge> f;
        std::vector<VariableEdge> v;
        for (std::size_t k = 0; k < edge_count; ++k) {
            if (origins[k].edge.kind == EdgeKind::fixed) f.push_back(inst.fixed_edges()[origins[k].edge.index]);
            else v.push_back(inst.variable_edges()[origins[k].edge.index]);
        }
        return PricingInstance(*vertices, static_cast<VertexId>(source->first),
                               static_cast<VertexId>(sink->first), std::move(f), std::move(v));
    };
    if (!inst.acyclic()) {
        // The shortest cyclic prefix of the file edges ends at the edge closing a cycle.
        std::size_t lo = 0, hi = origins.size();
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (build(mid).acyclic()) lo = mid;
            else hi = mid;
        }
        throw ParseError(origins[hi - 1].line, "cyclic graph: this edge closes a cycle");
    }
    return inst;
}

inline PricingInstance parse_instance(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_instance(in);
}

inline std::string serialize_instance(const PricingInstance& inst) {
    std::ostringstream out;
    out << "# stacksp-instance v1\n";
    out << "vertices " << inst.vertex_count() << "\n";
    out << "source " << inst.source() << "\n";
    out << "sink " << inst.sink() << "\n";
    if (inst.no_fixed_baseline()) out << "baseline none\n";
    for (const auto& e : inst.fixed_edges())
        out << "edge f " << e.tail << " " << e.head << " " << to_string(e.cost) << "\n";
    for (const auto& e : inst.variable_edges())
        out << "edge v " << e.tail << " " << e.head << " " << e.label << "\n";
    for (const auto& m : inst.meta()) out << "meta " << m << "\n";
    return out.str();
}

inline PriceAssignment parse_pricing(std::istream& in) {
    auto lines = detail::read_lines(in);
    std::size_t first = detail::first_content_line(lines);
    if (first == lines.size() || detail::trim(lines[first]) != "# stacksp-pricing v1")
        throw ParseError(first + 1, "expected header '# stacksp-pricing v1'");
    std::map<std::string, Scalar> prices;
    for (std::size_t i = first + 1; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        std::string_view raw = detail::trim(lines[i]);
        if (raw.empty() || raw.front() == '#') continue;
        auto tok = detail::split_ws(raw);
        if (tok.size() != 3 || tok[0] != "price") throw ParseError(lineno, "malformed price line");
        Scalar value;
        try {
            value = Scalar::parse(tok[2]);
        } catch (const InputError& e) {
            throw ParseError(lineno, e.what());
        }
        if (!prices.emplace(tok[1], value).second)
            throw ParseError(lineno, "duplicate price for '" + tok[1] + "'");
    }
    return PriceAssignment(std::move(prices));
}

inline PriceAssignment parse_pricing(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_pricing(in);
}

// Lines are ordered by label.
inline std::string serialize_pricing(const PriceAssignment& prices) {
    std::ostringstream out;
    out << "# stacksp-pricing v1\n";
    for (const auto& [label, price] : prices.prices()) out << "price " << label << " " << price.str() << "\n";
    return out.str();
}

} // namespace stacksp
