#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nocmap {

using CoreId = std::int32_t;

/// Directed communication demand between two cores: volume in bits,
/// bandwidth requirement in bits/s.
struct Arc {
    CoreId src = 0;
    CoreId dst = 0;
    std::uint64_t volume = 0;
    double bandwidth = 0.0;

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Application characterization graph: cores 0..C-1 plus directed,
/// weighted arcs. At most one arc per ordered (src, dst) pair; no
/// self-arcs. Immutable after construction.
class Apcg {
public:
    Apcg(std::string name, std::int32_t core_count, std::vector<Arc> arcs);

    const std::string& name() const { return name_; }
    std::int32_t core_count() const { return core_count_; }
    const std::vector<Arc>& arcs() const { return arcs_; }

    /// Number of outgoing arcs of a core.
    std::int32_t out_degree(CoreId core) const;

    /// Total communication volume touching a core: sum of volumes of
    /// all arcs in and out of it.
    std::uint64_t rank(CoreId core) const;

    /// Dense volume lookup, volume(i, j) = bits sent from i to j
    /// (0 when no arc). Row-major C x C.
    std::vector<std::uint64_t> volume_matrix() const;

    friend bool operator==(const Apcg&, const Apcg&) = default;

private:
    std::string name_;
    std::int32_t core_count_;
    std::vector<Arc> arcs_;          // sorted by (src, dst)
    std::vector<std::int32_t> out_degree_;
    std::vector<std::uint64_t> rank_;
};

} // namespace nocmap
