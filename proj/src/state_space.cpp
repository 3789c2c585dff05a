#include "kempe/state_space.hpp"

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kempe/degree.hpp"
#include "kempe/dynamics.hpp"
#include "kempe/errors.hpp"
#include "kempe/ns_structure.hpp"

namespace kempe {

namespace {

constexpr int kMaxN = 256;

int bits_for(int q) {
    int b = 1;
    while ((1 << b) < q) ++b;
    return b;
}

}  // namespace

// ---------------------------------------------------------------- codec

StateCodec::StateCodec(int n, int q) : n_(n), q_(q), bits_(bits_for(q)) {
    if (n * bits_ > 128) throw BudgetExceeded("state does not fit the 128-bit key: " + std::to_string(n) + " vertices");
}

PackedState StateCodec::pack(const std::uint8_t* col) const {
    PackedState s;
    for (int v = 0; v < n_; ++v) {
        std::uint64_t x = static_cast<std::uint64_t>(col[v] - 1);
        int pos = v * bits_;
        s.w[pos >> 6] |= x << (pos & 63);
        int spill = (pos & 63) + bits_ - 64;
        if (spill > 0) s.w[(pos >> 6) + 1] |= x >> (bits_ - spill);
    }
    return s;
}

void StateCodec::unpack(const PackedState& s, std::uint8_t* col) const {
    const std::uint64_t mask = (1ULL << bits_) - 1;
    for (int v = 0; v < n_; ++v) {
        int pos = v * bits_;
        std::uint64_t x = s.w[pos >> 6] >> (pos & 63);
        int spill = (pos & 63) + bits_ - 64;
        if (spill > 0) x |= s.w[(pos >> 6) + 1] << (bits_ - spill);
        col[v] = static_cast<std::uint8_t>((x & mask) + 1);
    }
}

PackedState StateCodec::pack_canonical(std::uint8_t* col) const {
    std::uint8_t map[16] = {0};
    std::uint8_t next = 1;
    for (int v = 0; v < n_; ++v) {
        std::uint8_t& m = map[col[v]];
        if (!m) m = next++;
        col[v] = m;
    }
    return pack(col);
}

// ---------------------------------------------------------------- key store

KeyStore::KeyStore(std::vector<PackedState> keys) : mem_(std::move(keys)) { view_ = {mem_.data(), mem_.size()}; }

KeyStore KeyStore::map_file(const std::string& path, std::size_t count) {
    KeyStore ks;
    if (count == 0) return ks;
    int fd = ::open(path.c_str(), O_RDONLY);
    if (fd < 0) throw std::runtime_error("cannot open spill file " + path);
    std::size_t bytes = count * sizeof(PackedState);
    void* p = ::mmap(nullptr, bytes, PROT_READ, MAP_SHARED, fd, 0);
    ::close(fd);
    if (p == MAP_FAILED) throw std::runtime_error("cannot map spill file " + path);
    ks.mapped_ = p;
    ks.mapped_bytes_ = bytes;
    ks.view_ = {static_cast<const PackedState*>(p), count};
    return ks;
}

KeyStore::~KeyStore() {
    if (mapped_) ::munmap(mapped_, mapped_bytes_);
}

KeyStore::KeyStore(KeyStore&& o) noexcept { *this = std::move(o); }

KeyStore& KeyStore::operator=(KeyStore&& o) noexcept {
    if (this == &o) return *this;
    if (mapped_) ::munmap(mapped_, mapped_bytes_);
    mem_ = std::move(o.mem_);
    mapped_ = o.mapped_;
    mapped_bytes_ = o.mapped_bytes_;
    view_ = mapped_ ? o.view_ : std::span<const PackedState>(mem_.data(), mem_.size());
    o.mapped_ = nullptr;
    o.mapped_bytes_ = 0;
    o.view_ = {};
    return *this;
}

long long KeyStore::find(const PackedState& k) const {
    auto it = std::lower_bound(view_.begin(), view_.end(), k);
    if (it == view_.end() || !(*it == k)) return -1;
    return it - view_.begin();
}

// ---------------------------------------------------------------- DFS kernel

namespace {

struct Kernel {
    int n = 0, q = 0;
    bool deg4 = false;
    std::vector<std::array<int, 6>> back;
    std::vector<int> nback;
    std::vector<std::array<std::array<int, 3>, 6>> fin;  // faces completed at v
    std::vector<int> nfin;
    std::vector<int> pin;
    signed char sign[5][5][5] = {};

    Kernel(const Triangulation& T, int q_) : n(T.num_vertices()), q(q_), deg4(q_ == 4) {
        if (n > kMaxN) throw BudgetExceeded("enumeration supports at most " + std::to_string(kMaxN) + " vertices");
        back.resize(n);
        nback.assign(n, 0);
        fin.resize(n);
        nfin.assign(n, 0);
        pin.assign(n, 0);
        for (int v = 0; v < n; ++v)
            for (int w : T.neighbors(v))
                if (w < v) back[v][nback[v]++] = w;
        for (const auto& f : T.faces()) {
            int last = std::max({f[0], f[1], f[2]});
            fin[last][nfin[last]++] = f;
        }
        // The up-face ((1,1),(2,2),(2,1)) is pinned to read 1->2->3.
        pin[T.index(1, 1)] = 1;
        pin[T.index(2, 1)] = 3;
        pin[T.index(2, 2)] = 2;
        for (int a = 1; a <= 4; ++a)
            for (int b = 1; b <= 4; ++b)
                for (int c = 1; c <= 4; ++c) sign[a][b][c] = static_cast<signed char>(face_sign(a, b, c));
    }
};

struct Snapshot {
    std::array<std::uint8_t, kMaxN> col;
    long deg;
    int maxc;
};

struct Shared {
    std::uint64_t budget_nodes = 0, budget_states = 0;
    std::atomic<std::uint64_t> nodes{0}, leaves{0};
    std::atomic<bool> abort{false};
    std::mutex mu;
    std::string reason;
    void fail(const std::string& why) {
        std::lock_guard<std::mutex> lk(mu);
        if (reason.empty()) reason = why;
        abort = true;
    }
};

template <class Leaf>
struct Walker {
    const Kernel& K;
    Leaf& leaf;
    Shared& sh;
    std::array<std::uint8_t, kMaxN> col{};
    long deg = 0;
    int maxc = 3;
    std::uint64_t nodes = 0, leaves = 0;
    int split_v = -1;
    std::vector<Snapshot>* split_out = nullptr;

    Walker(const Kernel& k, Leaf& l, Shared& s) : K(k), leaf(l), sh(s) {}

    void flush_counters() {
        std::uint64_t tn = sh.nodes.fetch_add(nodes) + nodes;
        std::uint64_t tl = sh.leaves.fetch_add(leaves) + leaves;
        nodes = leaves = 0;
        if (sh.budget_nodes && tn > sh.budget_nodes) sh.fail("node budget exceeded");
        if (sh.budget_states && tl > sh.budget_states) sh.fail("state budget exceeded");
    }

    void run(int v) {
        if (++nodes >= 4096) {
            flush_counters();
            if (sh.abort.load(std::memory_order_relaxed)) return;
        }
        if (v == split_v) {
            split_out->push_back({col, deg, maxc});
            return;
        }
        if (v == K.n) {
            ++leaves;
            leaf(col.data(), deg);
            return;
        }
        unsigned forb = 0;
        for (int i = 0; i < K.nback[v]; ++i) forb |= 1u << col[K.back[v][i]];
        auto place = [&](int c) {
            col[v] = static_cast<std::uint8_t>(c);
            long d = 0;
            if (K.deg4)
                for (int i = 0; i < K.nfin[v]; ++i) {
                    const auto& f = K.fin[v][i];
                    d += K.sign[col[f[0]]][col[f[1]]][col[f[2]]];
                }
            deg += d;
            int old = maxc;
            if (c > maxc) maxc = c;
            run(v + 1);
            maxc = old;
            deg -= d;
        };
        if (K.pin[v]) {
            if (!(forb >> K.pin[v] & 1u)) place(K.pin[v]);
        } else {
            int top = std::min(K.q, maxc + 1);
            for (int c = 1; c <= top; ++c)
                if (!(forb >> c & 1u)) place(c);
        }
        col[v] = 0;
    }

    void resume(const Snapshot& s, int v) {
        col = s.col;
        deg = s.deg;
        maxc = s.maxc;
        run(v);
    }
};

int thread_count(int requested) {
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

// Runs the DFS, serially or split into tasks at vertex split_v. leaves[i]
// belongs to thread i.
template <class Leaf>
std::uint64_t drive(const Kernel& K, const EnumOptions& opt, bool parallel, std::vector<Leaf>& leaves,
                    Shared& sh) {
    sh.budget_nodes = opt.budget_nodes;
    sh.budget_states = opt.budget_states;
    if (!parallel) {
        Walker<Leaf> w(K, leaves[0], sh);
        w.run(0);
        w.flush_counters();
    } else {
        int split_v = std::clamp(opt.split_depth, 1, K.n);
        std::vector<Snapshot> tasks;
        Leaf& l0 = leaves[0];
        {
            Walker<Leaf> w(K, l0, sh);
            w.split_v = split_v;
            w.split_out = &tasks;
            w.run(0);
            w.flush_counters();
        }
        const long T = static_cast<long>(tasks.size());
        const int nt = static_cast<int>(leaves.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
        for (long i = 0; i < T; ++i) {
            if (sh.abort.load(std::memory_order_relaxed)) continue;
#ifdef _OPENMP
            int tid = omp_get_thread_num();
#else
            int tid = 0;
#endif
            Walker<Leaf> w(K, leaves[tid], sh);
            w.resume(tasks[i], split_v);
            w.flush_counters();
        }
    }
    if (sh.abort) throw BudgetExceeded(sh.reason);
    return sh.nodes.load();
}

// Collects canonical keys, spilling sorted runs to disk above a memory cap.
struct RunWriter {
    std::string dir;
    std::atomic<int> seq{0};
    std::mutex mu;
    std::vector<std::string> files;
    std::vector<std::size_t> sizes;

    void write(std::vector<PackedState>& buf) {
        std::sort(buf.begin(), buf.end());
        int id = seq++;
        std::string path = (std::filesystem::path(dir) / ("run-" + std::to_string(id) + ".bin")).string();
        FILE* f = std::fopen(path.c_str(), "wb");
        if (!f) throw std::runtime_error("cannot create spill run " + path);
        if (!buf.empty() && std::fwrite(buf.data(), sizeof(PackedState), buf.size(), f) != buf.size()) {
            std::fclose(f);
            throw std::runtime_error("short write to spill run " + path);
        }
        std::fclose(f);
        std::lock_guard<std::mutex> lk(mu);
        files.push_back(path);
        sizes.push_back(buf.size());
        buf.clear();
    }
};

struct CountLeaf {
    const StateCodec* codec = nullptr;
    bool collect = false;
    std::size_t cap = 0;  // keys held before spilling, 0 = unlimited
    RunWriter* runs = nullptr;
    Shared* sh = nullptr;
    int n = 0;
    std::uint64_t total = 0;
    std::vector<std::uint64_t> hist;
    std::vector<PackedState> buf;

    void operator()(const std::uint8_t* col, long deg) {
        ++total;
        if (!hist.empty()) ++hist[static_cast<std::size_t>(deg < 0 ? -deg : deg)];
        if (!collect) return;
        std::uint8_t tmp[kMaxN];
        std::memcpy(tmp, col, n);
        buf.push_back(codec->pack_canonical(tmp));
        if (cap && buf.size() >= cap) {
            if (!runs) {
                sh->fail("memory budget exceeded (no spill directory)");
                return;
            }
            runs->write(buf);
        }
    }
};

std::string merge_runs(RunWriter& rw, std::size_t& count) {
    struct Reader {
        FILE* f = nullptr;
        std::vector<PackedState> buf;
        std::size_t pos = 0, len = 0;
        bool next(PackedState& out) {
            if (pos == len) {
                len = std::fread(buf.data(), sizeof(PackedState), buf.size(), f);
                pos = 0;
                if (len == 0) return false;
            }
            out = buf[pos++];
            return true;
        }
    };
    std::vector<Reader> rd(rw.files.size());
    using Item = std::pair<PackedState, std::size_t>;
    auto cmp = [](const Item& a, const Item& b) { return b.first < a.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    for (std::size_t i = 0; i < rd.size(); ++i) {
        rd[i].f = std::fopen(rw.files[i].c_str(), "rb");
        if (!rd[i].f) throw std::runtime_error("cannot reopen spill run " + rw.files[i]);
        rd[i].buf.resize(1 << 14);
        PackedState s;
        if (rd[i].next(s)) pq.push({s, i});
    }
    std::string out = (std::filesystem::path(rw.dir) / "keys.bin").string();
    FILE* fo = std::fopen(out.c_str(), "wb");
    if (!fo) throw std::runtime_error("cannot create " + out);
    std::vector<PackedState> ob;
    ob.reserve(1 << 14);
    count = 0;
    bool have_last = false;
    PackedState last;
    while (!pq.empty()) {
        auto [s, i] = pq.top();
        pq.pop();
        if (!have_last || !(s == last)) {
            ob.push_back(s);
            last = s;
            have_last = true;
            ++count;
            if (ob.size() == ob.capacity()) {
                std::fwrite(ob.data(), sizeof(PackedState), ob.size(), fo);
                ob.clear();
            }
        }
        PackedState nx;
        if (rd[i].next(nx)) pq.push({nx, i});
    }
    std::fwrite(ob.data(), sizeof(PackedState), ob.size(), fo);
    std::fclose(fo);
    for (auto& r : rd) std::fclose(r.f);
    for (auto& f : rw.files) std::filesystem::remove(f);
    return out;
}

EnumerationResult enumerate_impl(const Triangulation& T, int q, const EnumOptions& opt, bool parallel) {
    if (q < 2) throw std::invalid_argument("q must be at least 2");
    EnumerationResult res;
    if (q < 3) return res;  // every T(r,s,t) contains triangles
    if (q > 15) throw std::invalid_argument("q above 15 is not supported");
    Kernel K(T, q);
    const int nt = parallel ? thread_count(opt.threads) : 1;
    std::unique_ptr<StateCodec> codec;
    if (opt.collect_states) codec = std::make_unique<StateCodec>(K.n, q);
    std::unique_ptr<RunWriter> rw;
    if (!opt.spill_dir.empty() && opt.collect_states) {
        std::filesystem::create_directories(opt.spill_dir);
        rw = std::make_unique<RunWriter>();
        rw->dir = opt.spill_dir;
    }
    Shared sh;
    std::vector<CountLeaf> leaves(nt);
    for (auto& l : leaves) {
        l.codec = codec.get();
        l.collect = opt.collect_states;
        l.cap = opt.budget_mem ? std::max<std::size_t>(1, opt.budget_mem / sizeof(PackedState) / nt) : 0;
        l.runs = rw.get();
        l.sh = &sh;
        l.n = K.n;
        if (K.deg4) l.hist.assign(2 * T.num_faces() + 1, 0);
    }
    res.nodes = drive(K, opt, parallel, leaves, sh);
    std::vector<std::uint64_t> hist(K.deg4 ? 2 * T.num_faces() + 1 : 0, 0);
    for (auto& l : leaves) {
        res.total += l.total;
        for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += l.hist[i];
    }
    for (std::size_t i = 0; i < hist.size(); ++i)
        if (hist[i]) res.histogram[static_cast<long>(i)] = hist[i];
    if (opt.collect_states) {
        if (rw && !rw->files.empty()) {
            for (auto& l : leaves)
                if (!l.buf.empty()) rw->write(l.buf);
            res.spill_runs = rw->files.size();
            std::size_t count = 0;
            std::string path = merge_runs(*rw, count);
            res.states = KeyStore::map_file(path, count);
        } else {
            std::vector<PackedState> all;
            all.reserve(res.total);
            for (auto& l : leaves) all.insert(all.end(), l.buf.begin(), l.buf.end());
            std::sort(all.begin(), all.end());
            res.states = KeyStore(std::move(all));
        }
        if (res.states.size() != res.total)
            throw InvariantViolation("canonical keys are not unique: symmetry breaking is broken");
    }
    return res;
}

long raw_degree(const Triangulation& T, const Kernel& K, const std::uint8_t* col) {
    if (!K.deg4) return 0;
    long d = 0;
    for (const auto& f : T.faces()) d += K.sign[col[f[0]]][col[f[1]]][col[f[2]]];
    return d;
}

void note_degree(KempeClass& k, long d) {
    if (d < 0) d = -d;
    ++k.degrees[d];
    int r = static_cast<int>(d % 12);
    if (std::find(k.residues.begin(), k.residues.end(), r) == k.residues.end()) {
        k.residues.push_back(r);
        std::sort(k.residues.begin(), k.residues.end());
    }
}

Coloring to_coloring(const Triangulation& T, int q, const StateCodec& codec, const PackedState& s) {
    std::vector<std::uint8_t> a(T.num_vertices());
    codec.unpack(s, a.data());
    return Coloring(T, q, std::move(a));
}

// Lock-free union-find over state indices; roots are always the least index.
struct AtomicUnionFind {
    std::vector<std::atomic<std::uint32_t>> parent;
    explicit AtomicUnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i].store(static_cast<std::uint32_t>(i), std::memory_order_relaxed);
    }
    std::uint32_t find(std::uint32_t x) {
        while (true) {
            std::uint32_t p = parent[x].load(std::memory_order_relaxed);
            if (p == x) return x;
            std::uint32_t g = parent[p].load(std::memory_order_relaxed);
            if (g != p) parent[x].compare_exchange_weak(p, g, std::memory_order_relaxed);
            x = g;
        }
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        while (true) {
            a = find(a);
            b = find(b);
            if (a == b) return;
            if (a < b) std::swap(a, b);
            std::uint32_t expect = a;
            if (parent[a].compare_exchange_strong(expect, b, std::memory_order_acq_rel)) return;
        }
    }
};

ClassDecomposition classes_bfs(const Triangulation& T, int q, const ClassOptions& opt) {
    EnumOptions eo = opt.enumeration;
    eo.collect_states = true;
    EnumerationResult en = enumerate_impl(T, q, eo, false);
    Kernel K(T, q);
    StateCodec codec(T.num_vertices(), q);
    ClassDecomposition out;
    out.method = "bfs";
    out.total = en.total;
    auto keys = en.states.keys();
    std::unordered_set<PackedState, PackedStateHash> visited;
    visited.reserve(keys.size() * 2);
    std::vector<PackedState> queue, nb;
    std::vector<std::uint8_t> col(T.num_vertices());
    for (const PackedState& seed : keys) {
        if (visited.count(seed)) continue;
        KempeClass kc;
        kc.representative = to_coloring(T, q, codec, seed);
        queue.assign(1, seed);
        visited.insert(seed);
        for (std::size_t h = 0; h < queue.size(); ++h) {
            PackedState s = queue[h];
            codec.unpack(s, col.data());
            if (K.deg4) note_degree(kc, raw_degree(T, K, col.data()));
            kempe_neighbors(T, codec, s, q, nb);
            out.edges_examined += nb.size();
            for (const auto& x : nb)
                if (visited.insert(x).second) queue.push_back(x);
        }
        kc.size = queue.size();
        out.classes.push_back(std::move(kc));
    }
    return out;
}

ClassDecomposition classes_union_find(const Triangulation& T, int q, const ClassOptions& opt) {
    EnumOptions eo = opt.enumeration;
    eo.collect_states = true;
    EnumerationResult en = enumerate_impl(T, q, eo, true);
    const KeyStore& ks = en.states;
    const std::size_t N = ks.size();
    if (N >= UINT32_MAX) throw BudgetExceeded("too many states for 32-bit union-find");
    Kernel K(T, q);
    StateCodec codec(T.num_vertices(), q);
    AtomicUnionFind uf(N);
    std::vector<short> degs(K.deg4 ? N : 0);
    std::atomic<std::uint64_t> edges{0};
    std::atomic<bool> bad{false};
    const int nt = thread_count(opt.enumeration.threads);
    const long NN = static_cast<long>(N);
#pragma omp parallel num_threads(nt)
    {
        std::vector<PackedState> nb;
        std::vector<std::uint8_t> col(T.num_vertices());
        std::uint64_t local = 0;
#pragma omp for schedule(dynamic, 256)
        for (long i = 0; i < NN; ++i) {
            const PackedState s = ks.keys()[i];
            if (K.deg4) {
                codec.unpack(s, col.data());
                degs[i] = static_cast<short>(raw_degree(T, K, col.data()));
            }
            kempe_neighbors(T, codec, s, q, nb);
            local += nb.size();
            for (const auto& x : nb) {
                long long j = ks.find(x);
                if (j < 0) {
                    bad = true;
                    continue;
                }
                if (j < i) uf.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
            }
        }
        edges += local;
    }
    if (bad) throw InvariantViolation("K-change produced a state missing from the enumeration");
    ClassDecomposition out;
    out.method = "union-find";
    out.total = en.total;
    out.edges_examined = edges;
    std::vector<std::int64_t> class_of_root(N, -1);
    for (std::size_t i = 0; i < N; ++i) {
        std::uint32_t r = uf.find(static_cast<std::uint32_t>(i));
        std::int64_t& id = class_of_root[r];
        if (id < 0) {
            id = static_cast<std::int64_t>(out.classes.size());
            KempeClass kc;
            kc.representative = to_coloring(T, q, codec, ks.keys()[i]);
            out.classes.push_back(std::move(kc));
        }
        KempeClass& kc = out.classes[id];
        ++kc.size;
        if (K.deg4) note_degree(kc, degs[i]);
    }
    return out;
}

struct CertLeaf {
    const Triangulation* T = nullptr;
    const StateCodec* codec = nullptr;
    std::unique_ptr<NsReducer> red;
    int n = 0;
    std::uint64_t certified = 0;
    std::map<long, std::uint64_t> cert_deg;
    bool have_min = false;
    PackedState min_key;
    std::vector<std::pair<PackedState, long>> leftovers;
    std::size_t limit = 0;
    Shared* sh = nullptr;

    void operator()(const std::uint8_t* col, long deg) {
        std::uint8_t tmp[kMaxN], work[kMaxN];
        std::memcpy(tmp, col, n);
        PackedState key = codec->pack_canonical(tmp);
        std::memcpy(work, tmp, n);
        red->reduce(work, ReduceOptions{false, false});
        unsigned used = 0;
        for (int v = 0; v < n; ++v) used |= 1u << work[v];
        if (__builtin_popcount(used) == 3) {
            ++certified;
            ++cert_deg[deg < 0 ? -deg : deg];
            if (!have_min || key < min_key) {
                min_key = key;
                have_min = true;
            }
        } else {
            leftovers.push_back({key, deg});
            if (leftovers.size() > limit) sh->fail("too many colorings outside the 3-coloring class for certificates");
        }
    }
};

ClassDecomposition classes_certificate(const Triangulation& T, int q, const ClassOptions& opt) {
    if (q != 4 || !is_three_colorable(T.r(), T.s(), T.t()))
        throw std::invalid_argument("certificate method needs q = 4 on a 3-colorable triangulation");
    Kernel K(T, q);
    StateCodec codec(T.num_vertices(), q);
    const int nt = thread_count(opt.enumeration.threads);
    Shared sh;
    std::vector<CertLeaf> leaves(nt);
    for (auto& l : leaves) {
        l.T = &T;
        l.codec = &codec;
        l.red = std::make_unique<NsReducer>(T);
        l.n = T.num_vertices();
        l.limit = opt.certificate_leftover_limit;
        l.sh = &sh;
    }
    EnumOptions eo = opt.enumeration;
    eo.collect_states = false;
    drive(K, eo, true, leaves, sh);

    ClassDecomposition out;
    out.method = "certificate";
    KempeClass c0;
    std::vector<std::pair<PackedState, long>> rest;
    for (auto& l : leaves) {
        c0.size += l.certified;
        for (auto [d, cnt] : l.cert_deg) {
            c0.degrees[d] += cnt;
            int r = static_cast<int>(d % 12);
            if (std::find(c0.residues.begin(), c0.residues.end(), r) == c0.residues.end()) c0.residues.push_back(r);
        }
        if (l.have_min) {
            PackedState m = l.min_key;
            if (c0.representative.a.empty() || m < codec.pack(c0.representative.a.data()))
                c0.representative = to_coloring(T, q, codec, m);
        }
        rest.insert(rest.end(), l.leftovers.begin(), l.leftovers.end());
    }
    std::sort(rest.begin(), rest.end());
    out.total = c0.size + rest.size();

    // Explicit BFS among the colorings whose reduction stopped short.
    std::vector<PackedState> rkeys(rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i) rkeys[i] = rest[i].first;
    std::vector<char> seen(rest.size(), 0);
    std::vector<std::size_t> queue;
    std::vector<PackedState> nb;
    std::vector<KempeClass> others;
    for (std::size_t s0 = 0; s0 < rest.size(); ++s0) {
        if (seen[s0]) continue;
        queue.assign(1, s0);
        seen[s0] = 1;
        bool joins_c0 = false;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            kempe_neighbors(T, codec, rkeys[queue[h]], q, nb);
            out.edges_examined += nb.size();
            for (const auto& x : nb) {
                auto it = std::lower_bound(rkeys.begin(), rkeys.end(), x);
                if (it == rkeys.end() || !(*it == x)) {
                    joins_c0 = true;
                    continue;
                }
                std::size_t j = it - rkeys.begin();
                if (!seen[j]) {
                    seen[j] = 1;
                    queue.push_back(j);
                }
            }
        }
        KempeClass kc;
        std::size_t mn = *std::min_element(queue.begin(), queue.end());
        for (std::size_t i : queue) note_degree(kc, rest[i].second);
        kc.size = queue.size();
        if (joins_c0) {
            c0.size += kc.size;
            for (auto [d, cnt] : kc.degrees) c0.degrees[d] += cnt;
            for (int r : kc.residues)
                if (std::find(c0.residues.begin(), c0.residues.end(), r) == c0.residues.end()) c0.residues.push_back(r);
            if (c0.representative.a.empty() || rkeys[mn] < codec.pack(c0.representative.a.data()))
                c0.representative = to_coloring(T, q, codec, rkeys[mn]);
        } else {
            kc.representative = to_coloring(T, q, codec, rkeys[mn]);
            others.push_back(std::move(kc));
        }
    }
    std::sort(c0.residues.begin(), c0.residues.end());
    if (c0.size) others.push_back(std::move(c0));
    std::sort(others.begin(), others.end(), [&](const KempeClass& a, const KempeClass& b) {
        return codec.pack(a.representative.a.data()) < codec.pack(b.representative.a.data());
    });
    out.classes = std::move(others);
    return out;
}

}  // namespace

EnumerationResult enumerate_colorings(const Triangulation& T, int q, const EnumOptions& opt) {
    return enumerate_impl(T, q, opt, true);
}

EnumerationResult enumerate_colorings_serial(const Triangulation& T, int q, const EnumOptions& opt) {
    return enumerate_impl(T, q, opt, false);
}

void for_each_coloring(const Triangulation& T, int q, const std::function<void(const std::uint8_t*)>& f) {
    if (q < 3) return;
    struct FnLeaf {
        const std::function<void(const std::uint8_t*)>* f;
        void operator()(const std::uint8_t* col, long) { (*f)(col); }
    };
    Kernel K(T, q);
    Shared sh;
    std::vector<FnLeaf> leaves{FnLeaf{&f}};
    drive(K, EnumOptions{}, false, leaves, sh);
}

void kempe_neighbors(const Triangulation& T, const StateCodec& codec, const PackedState& s, int q,
                     std::vector<PackedState>& out) {
    out.clear();
    const int n = T.num_vertices();
    std::uint8_t col[kMaxN], tmp[kMaxN];
    codec.unpack(s, col);
    thread_local std::vector<int> labels, stack;
    for (int a = 1; a <= q; ++a)
        for (int b = a + 1; b <= q; ++b) {
            int k = kempe_labels(T, col, a, b, labels, stack);
            if (k < 2) continue;
            for (int id = 0; id < k; ++id) {
                std::memcpy(tmp, col, n);
                for (int v = 0; v < n; ++v)
                    if (labels[v] == id) tmp[v] = static_cast<std::uint8_t>(tmp[v] == a ? b : a);
                out.push_back(codec.pack_canonical(tmp));
            }
        }
}

ClassDecomposition kempe_classes(const Triangulation& T, int q, const ClassOptions& opt) {
    ClassMethod m = opt.method;
    if (m == ClassMethod::Auto)
        m = (q == 4 && T.num_vertices() > 36 && is_three_colorable(T.r(), T.s(), T.t())) ? ClassMethod::Certificate
                                                                                          : ClassMethod::UnionFind;
    if (q < 3) {
        ClassDecomposition empty;
        empty.method = "none";
        return empty;
    }
    switch (m) {
        case ClassMethod::Bfs: return classes_bfs(T, q, opt);
        case ClassMethod::Certificate: return classes_certificate(T, q, opt);
        default: return classes_union_find(T, q, opt);
    }
}

ClassLabel class_of(const Triangulation& T, const Coloring& c, std::uint64_t bfs_budget) {
    ResidueRecord rr = degree_residue_checks(T, c);
    ClassLabel out;
    out.residue = rr.mod12;
    out.label = rr.label;
    if (bfs_budget == 0 || T.num_vertices() * 2 > 128) return out;
    StateCodec codec(T.num_vertices(), 4);
    std::vector<std::uint8_t> col = c.a;
    PackedState start = codec.pack_canonical(col.data());
    std::vector<std::uint8_t> c0 = three_coloring(T).a;
    PackedState target = codec.pack_canonical(c0.data());
    std::unordered_set<PackedState, PackedStateHash> seen{start};
    std::vector<PackedState> queue{start}, nb;
    for (std::size_t h = 0; h < queue.size() && seen.size() < bfs_budget; ++h) {
        if (queue[h] == target) {
            out.certified_with_c0 = true;
            break;
        }
        kempe_neighbors(T, codec, queue[h], 4, nb);
        for (const auto& x : nb)
            if (seen.insert(x).second) queue.push_back(x);
    }
    if (!out.certified_with_c0 && seen.count(target)) out.certified_with_c0 = true;
    out.explored = seen.size();
    return out;
}

}  // namespace kempe
