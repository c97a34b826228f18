#include "mmgeo/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mmgeo/space_gen.hpp"
#include "mmgeo/util.hpp"

namespace mmgeo {

std::string space_to_string(const Space& space) {
    std::ostringstream out;
    switch (space.backend()) {
        case BackendKind::Explicit:
            out << "backend explicit\n";
            break;
        case BackendKind::GraphBfs:
            out << "backend graph\n";
            break;
        case BackendKind::CantorTree:
            out << "backend tree\n";
            break;
    }
    out << "params " << (space.spec_string().empty() ? "-" : space.spec_string()) << "\n";
    out << "n_points " << space.n_points() << "\n";
    out << "gamma " << space.gamma().to_string() << "\n";
    if (space.backend() == BackendKind::Explicit) {
        const auto& tri = *space.explicit_matrix();
        out << "matrix\n";
        std::size_t idx = 0;
        for (PointId i = 1; i < space.n_points(); ++i) {
            for (PointId j = 0; j < i; ++j) {
                out << (j ? "," : "") << tri[idx].to_string();
                ++idx;
            }
            out << "\n";
        }
    }
    return out.str();
}

Space space_from_string(const std::string& text) {
    std::istringstream in(text);
    std::string line, backend, params;
    PointId n = 0;
    Rat gamma(1);
    bool have_backend = false, have_n = false;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto sp = line.find(' ');
        std::string key = sp == std::string::npos ? line : line.substr(0, sp);
        std::string value = sp == std::string::npos ? "" : trim(line.substr(sp + 1));
        if (key == "backend") {
            backend = value;
            have_backend = true;
        } else if (key == "params") {
            params = value == "-" ? "" : value;
        } else if (key == "n_points") {
            n = static_cast<PointId>(std::stoll(value));
            have_n = true;
        } else if (key == "gamma") {
            gamma = Rat::parse(value);
        } else if (key == "matrix") {
            if (backend != "explicit")
                throw std::invalid_argument("space file: matrix only valid for explicit backend");
            std::vector<Rat> tri;
            for (PointId i = 1; i < n; ++i) {
                if (!std::getline(in, line))
                    throw std::invalid_argument("space file: truncated matrix");
                auto cells = split(trim(line), ',');
                if (static_cast<PointId>(cells.size()) != i)
                    throw std::invalid_argument("space file: row " + std::to_string(i) +
                                                " must have " + std::to_string(i) + " entries");
                for (const auto& c : cells) tri.push_back(Rat::parse(c));
            }
            Space s = Space::make_explicit(n, std::move(tri), params);
            return gamma == Rat(1) ? s : s.rescaled(gamma);
        } else {
            throw std::invalid_argument("space file: unknown key: " + key);
        }
    }
    if (!have_backend || !have_n)
        throw std::invalid_argument("space file: missing backend or n_points");
    if (backend == "explicit")
        throw std::invalid_argument("space file: explicit backend requires a matrix");
    if (params.empty())
        throw std::invalid_argument("space file: generator backend requires params");
    Space s = space_from_spec(params);
    if (s.n_points() != n)
        throw std::invalid_argument("space file: n_points does not match the generator");
    return gamma == Rat(1) ? s : s.rescaled(gamma);
}

Space resolve_space(const std::string& arg) {
    if (arg.rfind("file:", 0) == 0) return space_from_string(read_file(arg.substr(5)));
    if (arg.rfind("graphfile:", 0) == 0) {
        std::string rest = arg.substr(10);
        Rat step(1);
        auto colon = rest.find(":h=");
        if (colon != std::string::npos) {
            step = Rat::parse(rest.substr(colon + 3));
            rest = rest.substr(0, colon);
        }
        Graph g = graph_from_edge_list(read_file(rest));
        return Space::make_graph(std::move(g), step, "");
    }
    return space_from_spec(arg);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

bool file_exists(const std::string& path) {
    return std::filesystem::exists(path);
}

}  // namespace mmgeo
