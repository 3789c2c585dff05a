#pragma once

#include <compare>
#include <functional>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "kempe/coloring.hpp"
#include "kempe/triangulation.hpp"

namespace kempe {

// Canonical coloring packed at ceil(log2 q) bits per vertex into 128 bits.
struct PackedState {
    std::uint64_t w[2] = {0, 0};
    auto operator<=>(const PackedState&) const = default;
    bool operator==(const PackedState&) const = default;
};

struct PackedStateHash {
    std::size_t operator()(const PackedState& s) const noexcept {
        std::uint64_t h = s.w[0] * 0x9e3779b97f4a7c15ULL ^ (s.w[1] + 0x632be59bd9b4e019ULL + (s.w[0] >> 17));
        h ^= h >> 31;
        h *= 0xbf58476d1ce4e5b9ULL;
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

class StateCodec {
public:
    StateCodec(int n, int q);
    int bits() const { return bits_; }
    // Packs colors 1..q as stored (callers canonicalize first).
    PackedState pack(const std::uint8_t* col) const;
    void unpack(const PackedState& s, std::uint8_t* col) const;
    // Canonicalizes col in place by first appearance, then packs.
    PackedState pack_canonical(std::uint8_t* col) const;

private:
    int n_, q_, bits_;
};

struct EnumOptions {
    int threads = 0;                  // 0 = OpenMP default
    std::uint64_t budget_nodes = 0;   // 0 = unlimited
    std::uint64_t budget_states = 0;  // 0 = unlimited
    std::uint64_t budget_mem = 0;     // bytes for collected states, 0 = unlimited
    std::string spill_dir;            // sorted runs go here once budget_mem is hit
    int split_depth = 10;             // free vertices fixed per parallel task
    bool collect_states = false;
};

// Sorted canonical keys, resident in memory or memory-mapped from a spill file.
class KeyStore {
public:
    KeyStore() = default;
    explicit KeyStore(std::vector<PackedState> keys);
    static KeyStore map_file(const std::string& path, std::size_t count);
    ~KeyStore();
    KeyStore(KeyStore&&) noexcept;
    KeyStore& operator=(KeyStore&&) noexcept;

    std::span<const PackedState> keys() const { return view_; }
    std::size_t size() const { return view_.size(); }
    // Index of key, or -1.
    long long find(const PackedState& k) const;
    bool spilled() const { return mapped_ != nullptr; }

private:
    std::vector<PackedState> mem_;
    void* mapped_ = nullptr;
    std::size_t mapped_bytes_ = 0;
    std::span<const PackedState> view_;
};

struct EnumerationResult {
    std::uint64_t total = 0;
    std::map<long, std::uint64_t> histogram;  // |degree| -> count, q = 4 only
    std::uint64_t nodes = 0;
    std::uint64_t spill_runs = 0;
    KeyStore states;  // when collect_states
};

EnumerationResult enumerate_colorings(const Triangulation& T, int q, const EnumOptions& opt = {});
EnumerationResult enumerate_colorings_serial(const Triangulation& T, int q, const EnumOptions& opt = {});

// Calls f(col) for every symmetry-broken coloring (colors 1..q, pinned form).
// Serial. Used by tests and the certificate pass.
void for_each_coloring(const Triangulation& T, int q, const std::function<void(const std::uint8_t*)>& f);

enum class ClassMethod { Auto, Bfs, UnionFind, Certificate };

struct KempeClass {
    std::uint64_t size = 0;
    Coloring representative;            // least canonical key in the class
    std::map<long, std::uint64_t> degrees;  // |degree| -> count, q = 4 only
    std::vector<int> residues;          // distinct deg mod 12 values seen
};

struct ClassDecomposition {
    std::uint64_t total = 0;
    std::vector<KempeClass> classes;  // ordered by representative key
    std::uint64_t edges_examined = 0;
    std::string method;
};

struct ClassOptions {
    EnumOptions enumeration;
    ClassMethod method = ClassMethod::Auto;
    std::uint64_t certificate_leftover_limit = 1000000;
};

ClassDecomposition kempe_classes(const Triangulation& T, int q, const ClassOptions& opt = {});

// Canonical K-change neighbors of a canonical state; skips single-component
// pairs (those are global color swaps).
void kempe_neighbors(const Triangulation& T, const StateCodec& codec, const PackedState& s, int q,
                     std::vector<PackedState>& out);

struct ClassLabel {
    int residue = 0;  // deg mod 12
    std::string label;
    bool certified_with_c0 = false;  // bounded BFS reached the 3-coloring
    std::uint64_t explored = 0;
};

ClassLabel class_of(const Triangulation& T, const Coloring& c, std::uint64_t bfs_budget = 0);

}  // namespace kempe
