#include "tww/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace tww {

Trigraph figure1() {
    Trigraph g = Trigraph::with_vertices(6);
    const int A = 0, B = 1, C = 2, D = 3, E = 4, F = 5;
    for (auto [u, v] : std::vector<std::pair<int, int>>{
             {A, B}, {B, C}, {C, F}, {F, E}, {E, D}, {D, B}, {A, C}, {C, E}})
        g.add_edge(u, v, EdgeColor::Black);
    return g;
}

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Arithmetic in GF(p^e) with elements encoded as base-p digit strings.
struct Field {
    int p, e, q;
    std::vector<int> modpoly;  // monic x^e + modpoly[e-1] x^{e-1} + ... + modpoly[0]

    Field(int p_, int e_) : p(p_), e(e_) {
        q = 1;
        for (int i = 0; i < e; ++i) q *= p;
        if (e == 1) return;
        // For e <= 3 irreducible over F_p is exactly "has no root".
        std::vector<int> c(e, 0);
        while (true) {
            bool has_root = false;
            for (int x = 0; x < p && !has_root; ++x) {
                int val = 1;  // x^e
                for (int i = 0; i < e; ++i) val = val * x % p;
                for (int i = e - 1; i >= 0; --i) {
                    int xi = 1;
                    for (int k = 0; k < i; ++k) xi = xi * x % p;
                    val = (val + c[i] * xi) % p;
                }
                if (val % p == 0) has_root = true;
            }
            if (!has_root) {
                modpoly = c;
                return;
            }
            int i = 0;  // next candidate polynomial
            while (i < e && ++c[i] == p) c[i++] = 0;
            if (i == e) throw Error("paley: no irreducible polynomial found");
        }
    }

    std::vector<int> digits(int a) const {
        std::vector<int> d(e);
        for (int i = 0; i < e; ++i) {
            d[i] = a % p;
            a /= p;
        }
        return d;
    }

    int pack(const std::vector<int>& d) const {
        int a = 0;
        for (int i = e - 1; i >= 0; --i) a = a * p + d[i];
        return a;
    }

    int sub(int a, int b) const {
        auto da = digits(a), db = digits(b);
        for (int i = 0; i < e; ++i) da[i] = (da[i] - db[i] + p) % p;
        return pack(da);
    }

    int mul(int a, int b) const {
        auto da = digits(a), db = digits(b);
        std::vector<int> prod(2 * e - 1, 0);
        for (int i = 0; i < e; ++i)
            for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        for (int d = 2 * e - 2; d >= e; --d) {
            int coeff = prod[d];
            if (coeff == 0) continue;
            prod[d] = 0;
            // x^d = -modpoly * x^{d-e} (mod the monic modulus)
            for (int i = 0; i < e; ++i)
                prod[d - e + i] = (prod[d - e + i] - coeff * modpoly[i] % p + p * p) % p;
        }
        prod.resize(e);
        return pack(prod);
    }
};

}  // namespace

Trigraph paley(int q) {
    if (q < 5) throw Error("paley: q must be a prime power >= 5");
    int p = 2;
    while (q % p != 0) ++p;
    int e = 0, t = q;
    while (t % p == 0) {
        t /= p;
        ++e;
    }
    if (t != 1 || !is_prime(p))
        throw Error("paley: " + std::to_string(q) + " is not a prime power");
    if (e > 3) throw Error("paley: prime powers beyond p^3 are not supported");
    if (q % 4 != 1)
        throw Error("paley: q ≡ 1 (mod 4) required, got " + std::to_string(q));

    Field f(p, e);
    std::set<int> squares;
    for (int a = 1; a < q; ++a) squares.insert(f.mul(a, a));

    Trigraph g = Trigraph::with_vertices(q);
    for (int u = 0; u < q; ++u)
        for (int v = u + 1; v < q; ++v)
            if (squares.count(f.sub(u, v))) g.add_edge(u, v, EdgeColor::Black);
    return g;
}

Trigraph cycle_graph(int n) {
    if (n < 3) throw Error("cycle: need at least 3 vertices");
    Trigraph g = Trigraph::with_vertices(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, EdgeColor::Black);
    g.add_edge(n - 1, 0, EdgeColor::Black);
    return g;
}

Trigraph random_tree(int n, unsigned seed) {
    if (n < 1) throw Error("tree: need at least 1 vertex");
    std::mt19937 rng(seed);
    Trigraph g = Trigraph::with_vertices(n);
    for (int i = 1; i < n; ++i) {
        int parent = static_cast<int>(rng() % static_cast<unsigned>(i));
        g.add_edge(parent, i, EdgeColor::Black);
    }
    return g;
}

Trigraph tree_plus_k(int n, int k, unsigned seed) {
    long long slots = static_cast<long long>(n) * (n - 1) / 2 - (n - 1);
    if (k < 0 || k > slots)
        throw Error("tree_plus_k: k = " + std::to_string(k) + " does not fit in " +
                    std::to_string(n) + " vertices");
    std::mt19937 rng(seed);
    Trigraph g = Trigraph::with_vertices(n);
    for (int i = 1; i < n; ++i) {
        int parent = static_cast<int>(rng() % static_cast<unsigned>(i));
        g.add_edge(parent, i, EdgeColor::Black);
    }
    int added = 0;
    while (added < k) {
        int u = static_cast<int>(rng() % static_cast<unsigned>(n));
        int v = static_cast<int>(rng() % static_cast<unsigned>(n));
        if (u == v || g.edge(u, v)) continue;
        g.add_edge(u, v, EdgeColor::Black);
        ++added;
    }
    return g;
}

Trigraph replicated_components(const ReplicatedSpec& spec) {
    if (spec.core_n < 1 || spec.comp_n < 1 || spec.copies < 0)
        throw Error("replicated_components: core and component need at least one vertex");
    std::mt19937 rng(spec.seed);
    // same attachment pattern for every copy
    std::vector<std::vector<int>> attach(spec.comp_n);
    bool any = false;
    for (int j = 0; j < spec.comp_n; ++j)
        for (int s = 0; s < spec.core_n; ++s)
            if (rng() % 2) {
                attach[j].push_back(s);
                any = true;
            }
    if (!any) attach[0].push_back(0);

    Trigraph g = Trigraph::with_vertices(spec.core_n + spec.copies * spec.comp_n);
    for (int a = 0; a < spec.core_n; ++a)
        for (int b = a + 1; b < spec.core_n; ++b) g.add_edge(a, b, EdgeColor::Black);
    for (int c = 0; c < spec.copies; ++c) {
        int base = spec.core_n + c * spec.comp_n;
        for (int j = 0; j + 1 < spec.comp_n; ++j)
            g.add_edge(base + j, base + j + 1, EdgeColor::Black);
        for (int j = 0; j < spec.comp_n; ++j)
            for (int s : attach[j]) g.add_edge(base + j, s, EdgeColor::Black);
    }
    return g;
}

}  // namespace tww
