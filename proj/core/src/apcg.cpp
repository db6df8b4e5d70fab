#include "nocmap/apcg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace nocmap {

Apcg::Apcg(std::string name, std::int32_t core_count, std::vector<Arc> arcs)
    : name_(std::move(name)), core_count_(core_count), arcs_(std::move(arcs)) {
    if (name_.empty()) throw std::invalid_argument("apcg name must be non-empty");
    for (char ch : name_)
        if (std::isspace(static_cast<unsigned char>(ch)))
            throw std::invalid_argument("apcg name must not contain whitespace");
    if (core_count_ < 0) throw std::invalid_argument("core count must be >= 0");

    for (const Arc& a : arcs_) {
        if (a.src < 0 || a.src >= core_count_ || a.dst < 0 || a.dst >= core_count_)
            throw std::invalid_argument("arc references unknown core id " +
                                        std::to_string(a.src >= 0 && a.src < core_count_
                                                           ? a.dst
                                                           : a.src));
        if (a.src == a.dst)
            throw std::invalid_argument("self-arc on core " + std::to_string(a.src));
        if (!(a.bandwidth >= 0.0) || !std::isfinite(a.bandwidth))
            throw std::invalid_argument("arc bandwidth must be finite and >= 0");
    }

    std::sort(arcs_.begin(), arcs_.end(), [](const Arc& x, const Arc& y) {
        return x.src != y.src ? x.src < y.src : x.dst < y.dst;
    });
    for (std::size_t i = 1; i < arcs_.size(); ++i)
        if (arcs_[i - 1].src == arcs_[i].src && arcs_[i - 1].dst == arcs_[i].dst)
            throw std::invalid_argument(
                "duplicate arc " + std::to_string(arcs_[i].src) + "->" +
                std::to_string(arcs_[i].dst));

    out_degree_.assign(static_cast<std::size_t>(core_count_), 0);
    rank_.assign(static_cast<std::size_t>(core_count_), 0);
    for (const Arc& a : arcs_) {
        out_degree_[static_cast<std::size_t>(a.src)] += 1;
        rank_[static_cast<std::size_t>(a.src)] += a.volume;
        rank_[static_cast<std::size_t>(a.dst)] += a.volume;
    }
}

std::int32_t Apcg::out_degree(CoreId core) const {
    return out_degree_.at(static_cast<std::size_t>(core));
}

std::uint64_t Apcg::rank(CoreId core) const {
    return rank_.at(static_cast<std::size_t>(core));
}

std::vector<std::uint64_t> Apcg::volume_matrix() const {
    const auto c = static_cast<std::size_t>(core_count_);
    std::vector<std::uint64_t> m(c * c, 0);
    for (const Arc& a : arcs_)
        m[static_cast<std::size_t>(a.src) * c + static_cast<std::size_t>(a.dst)] =
            a.volume;
    return m;
}

} // namespace nocmap
