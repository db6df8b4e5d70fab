#pragma once

#include <cstdint>
#include <initializer_list>

namespace nocmap {

/// Source of uniform draws on [0,1). Virtual so tests can substitute
/// scripted values where an update rule must see an exact draw.
class UnitSource {
public:
    virtual ~UnitSource() = default;
    virtual double next_unit() = 0;

    /// Uniform real on [lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }
};

/// Counter-based splitmix64 stream. Draws are a pure function of
/// (key, draw index), so independent streams can be derived per
/// simulation / iteration / particle and replayed in any order.
class CounterRng final : public UnitSource {
public:
    explicit CounterRng(std::uint64_t key) : state_(key) {}

    /// Folds stream identifiers (seed, tags, indices) into one key.
    static std::uint64_t derive_key(std::initializer_list<std::uint64_t> parts) {
        std::uint64_t key = 0x6b4e6f434d61700bULL;
        for (std::uint64_t p : parts) key = mix(key ^ p);
        return key;
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    double next_unit() override {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t next_index(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<__uint128_t>(next_u64()) * bound) >> 64);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

} // namespace nocmap
