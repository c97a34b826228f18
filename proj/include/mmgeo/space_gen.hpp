#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mmgeo/space.hpp"

namespace mmgeo {

/// Axis-aligned box of lattice cells to remove, inclusive index ranges.
struct GridHole {
    std::vector<std::int64_t> lo;
    std::vector<std::int64_t> hi;
};

struct GridSpec {
    std::vector<std::int64_t> dims;  // axis sizes
    Rat spacing{1};
    std::vector<GridHole> holes;
};

struct TreeSpec {
    int depth = 1;      // N
    int branching = 2;  // n
    int base = 2;       // m
};

enum class GroupKind { FreeAbelian, Heisenberg3, ExplicitTable };

struct GroupSpec {
    GroupKind kind = GroupKind::FreeAbelian;
    int rank = 2;  // FreeAbelian only
    // ExplicitTable: table[i][j] = i*j, identity element id, generator set V.
    std::vector<std::vector<int>> table;
    int identity = 0;
    std::vector<int> generators;
};

/// Taxicab grid with optional holes. Points are the surviving lattice nodes,
/// distance is spacing * grid-graph distance. Throws if the survivors are
/// disconnected or a hole overlaps another hole.
Space taxicab_grid(const GridSpec& spec);

/// Lattice coordinates of each grid point, axis 0 fastest.
std::vector<std::vector<std::int64_t>> grid_coordinates(const GridSpec& spec);

/// Leaves of the uniform tree with the ultrametric d(x,y) = m^-v(x,y).
Space cantor_tree(const TreeSpec& spec);

/// Exact ball count card B(x, r) for the open ball on the tree metric,
/// valid for r in ]m^-(N+1), 1]. Center-independent. Integer arithmetic only.
std::int64_t tree_ball_card(const TreeSpec& spec, const Rat& r);

/// Cayley graph of the group restricted to word-length <= radius_cap from
/// the identity. Vertex 0 is the identity; vertices are in BFS order.
Graph cayley_graph(const GroupSpec& spec, int radius_cap);

/// Same, wrapped as a unit-step graph space with word-length margins
/// (margin = radius_cap - word length) for bulk filtering.
Space cayley_space(const GroupSpec& spec, int radius_cap);

/// Convenience: multiplication table of Z/n with generators {+1, -1}.
GroupSpec cyclic_group(int n);

/// Triangle-subdivision approximant SG_level; the three corner vertices of
/// level 0 keep ids 0, 1, 2 at every level.
Graph sierpinski_graph(int level);

Space sierpinski_space(int level);

/// Parses an inline generator expression, e.g.
///   "grid dims=5,5 h=1 hole=2..2,2..2"
///   "tree N=8 n=2 m=3"
///   "cayley kind=abelian rank=2 cap=10"
///   "cayley kind=cyclic order=6"
///   "cayley kind=heisenberg cap=12"
///   "sierpinski level=6"
///   "path n=100"  (1-D grid shorthand)
Space space_from_spec(const std::string& spec);

}  // namespace mmgeo
