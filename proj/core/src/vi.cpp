#include "tww/vi.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>
#include <utility>

#include "tww/errors.hpp"

namespace tww {

namespace {

std::vector<std::vector<Vertex>> parts_without(const Trigraph& g, const std::set<Vertex>& s) {
    std::set<Vertex> keep;
    for (const auto& [v, nb] : g.adjacency()) {
        (void)nb;
        if (!s.count(v)) keep.insert(v);
    }
    return connected_components(g.induced(keep));
}

// First `limit` vertices of the component in BFS order from its smallest
// member. The prefix is connected, which is what makes branching on it
// sound: a separator that avoids a connected set of p vertices leaves a
// component that is still too big.
std::vector<Vertex> connected_prefix(const Trigraph& g, const std::vector<Vertex>& comp,
                                     int limit) {
    std::set<Vertex> inside(comp.begin(), comp.end());
    std::vector<Vertex> order;
    std::set<Vertex> seen{comp.front()};
    std::deque<Vertex> queue{comp.front()};
    while (!queue.empty() && static_cast<int>(order.size()) < limit) {
        Vertex v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (const auto& [n, c] : g.neighbors(v)) {
            (void)c;
            if (inside.count(n) && seen.insert(n).second) queue.push_back(n);
        }
    }
    return order;
}

bool vi_search(const Trigraph& g, int p, std::set<Vertex>& s) {
    auto parts = parts_without(g, s);
    const std::vector<Vertex>* offending = nullptr;
    for (const auto& c : parts)
        if (static_cast<int>(c.size()) > p - static_cast<int>(s.size())) {
            offending = &c;
            break;
        }
    if (!offending) return true;
    if (static_cast<int>(s.size()) == p) return false;
    for (Vertex w : connected_prefix(g, *offending, p)) {
        s.insert(w);
        if (vi_search(g, p, s)) return true;
        s.erase(w);
    }
    return false;
}

std::vector<Vertex> separator_fingerprint(const Trigraph& g, const std::set<Vertex>& sep,
                                          Vertex v) {
    std::vector<Vertex> out;
    for (const auto& [n, c] : g.neighbors(v)) {
        (void)c;
        if (sep.count(n)) out.push_back(n);
    }
    return out;
}

// Lexicographically first isomorphism a -> b preserving internal edges and
// separator attachment, or nothing. First in b's vertex order per a-slot, so
// reruns always pick the same map.
std::optional<std::map<Vertex, Vertex>> attachment_isomorphism(const Trigraph& g,
                                                               const std::set<Vertex>& sep,
                                                               const std::vector<Vertex>& a,
                                                               const std::vector<Vertex>& b) {
    if (a.size() != b.size()) return std::nullopt;
    std::vector<std::vector<Vertex>> fa, fb;
    fa.reserve(a.size());
    fb.reserve(b.size());
    for (Vertex v : a) fa.push_back(separator_fingerprint(g, sep, v));
    for (Vertex v : b) fb.push_back(separator_fingerprint(g, sep, v));
    {
        auto ma = fa;
        auto mb = fb;
        std::sort(ma.begin(), ma.end());
        std::sort(mb.begin(), mb.end());
        if (ma != mb) return std::nullopt;
    }
    std::vector<Vertex> image(a.size(), -1);
    std::vector<bool> used(b.size(), false);
    auto extend = [&](auto&& self, std::size_t k) -> bool {
        if (k == a.size()) return true;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j] || fb[j] != fa[k]) continue;
            bool ok = true;
            for (std::size_t i = 0; i < k && ok; ++i)
                ok = g.edge(a[k], a[i]) == g.edge(b[j], image[i]);
            if (!ok) continue;
            image[k] = b[j];
            used[j] = true;
            if (self(self, k + 1)) return true;
            used[j] = false;
            image[k] = -1;
        }
        return false;
    };
    if (!extend(extend, 0)) return std::nullopt;
    std::map<Vertex, Vertex> out;
    for (std::size_t i = 0; i < a.size(); ++i) out.emplace(a[i], image[i]);
    return out;
}

std::map<Vertex, Vertex> inverse_map(const std::map<Vertex, Vertex>& m) {
    std::map<Vertex, Vertex> inv;
    for (const auto& [x, y] : m) inv.emplace(y, x);
    return inv;
}

struct Rec {
    ReplayState rs;
    std::vector<ContractionStep> steps;
    explicit Rec(const Trigraph& g) : rs(g) {}
    Vertex contract_pair(Vertex a, Vertex b) {
        if (a > b) std::swap(a, b);
        ContractionStep s{a, b, rs.next_fresh()};
        rs.apply(s);
        steps.push_back(s);
        return s.w;
    }
};

bool subset_of(const std::set<Vertex>& inner, const std::set<Vertex>& outer) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

// (a ->_i b) where i may point one past the last trigraph, meaning the whole
// sequence stays within a.
bool progressive_ok(const ContractionSequence& c, int a, int i, int b) {
    int len = static_cast<int>(c.steps.size()) + 1;
    if (i > len) return replay_width(c).width() <= a;
    return progressive_width_check(c, {a, i, b});
}

}  // namespace

ViDecomposition vertex_integrity(const Trigraph& g, int cap) {
    if (cap < 1) throw CapExceededError("vertex_integrity: cap below 1");
    for (int p = 1; p <= cap; ++p) {
        std::set<Vertex> s;
        if (vi_search(g, p, s)) {
            ViDecomposition d;
            d.p = p;
            d.separator = std::move(s);
            d.components = parts_without(g, d.separator);
            return d;
        }
    }
    throw CapExceededError("vertex_integrity: no separator within p <= " +
                           std::to_string(cap));
}

std::vector<TwinBlockClass> twin_block_partition(const Trigraph& g,
                                                 const ViDecomposition& d) {
    std::vector<TwinBlockClass> out;
    for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
        bool placed = false;
        for (auto& cls : out) {
            auto iso = attachment_isomorphism(g, d.separator,
                                              d.components[cls.representative],
                                              d.components[ci]);
            if (iso) {
                cls.members.push_back(static_cast<int>(ci));
                cls.isomorphisms.emplace(static_cast<int>(ci), std::move(*iso));
                placed = true;
                break;
            }
        }
        if (!placed) {
            TwinBlockClass cls;
            cls.representative = static_cast<int>(ci);
            cls.members.push_back(static_cast<int>(ci));
            std::map<Vertex, Vertex> id;
            for (Vertex v : d.components[ci]) id.emplace(v, v);
            cls.isomorphisms.emplace(static_cast<int>(ci), std::move(id));
            out.push_back(std::move(cls));
        }
    }
    return out;
}

BigInt keep_threshold(int p) {
    if (p < 1) throw Error("keep_threshold: p must be positive");
    return BigInt(1) << (7ull * p * p * p);
}

BigInt reduced_size_bound(int p) {
    if (p < 1) throw Error("reduced_size_bound: p must be positive");
    return BigInt(p) + BigInt(p) * p * keep_threshold(p) * (BigInt(1) << (2ull * p * p));
}

std::uint64_t saturated_keep_threshold(int p) {
    BigInt f = keep_threshold(p);
    BigInt cap = std::numeric_limits<std::uint64_t>::max();
    if (f > cap) return std::numeric_limits<std::uint64_t>::max();
    return f.convert_to<std::uint64_t>();
}

ReducedGraph reduced_graph(const Trigraph& g, const ViDecomposition& d,
                           const std::vector<TwinBlockClass>& classes,
                           std::optional<std::uint64_t> threshold_override) {
    ReducedGraph out;
    out.threshold_is_default = !threshold_override.has_value();
    out.threshold =
        threshold_override ? *threshold_override : saturated_keep_threshold(d.p);

    std::vector<int> owner(d.components.size(), -1);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (int m : classes[c].members) {
            TWW_CHECK(m >= 0 && m < static_cast<int>(owner.size()) && owner[m] < 0,
                      "reduced_graph: classes do not partition the components");
            owner[m] = static_cast<int>(c);
        }
    for (int o : owner)
        TWW_CHECK(o >= 0, "reduced_graph: classes do not partition the components");

    std::set<Vertex> keep(d.separator.begin(), d.separator.end());
    bool reduce = out.threshold >= 2;
    std::map<int, std::uint64_t> taken;
    for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
        std::uint64_t& got = taken[owner[ci]];
        if (!reduce || got < out.threshold) {
            ++got;
            out.kept.push_back(static_cast<int>(ci));
            for (Vertex v : d.components[ci]) keep.insert(v);
        } else {
            out.removed.emplace_back(static_cast<int>(ci), owner[ci]);
        }
    }
    out.g_prime = g.induced(keep);
    if (out.threshold_is_default)
        TWW_CHECK(BigInt(out.g_prime.vertex_count()) <= reduced_size_bound(d.p),
                  "reduced_graph: size bound violated");
    return out;
}

HEquivalenceClasses h_equivalence(const Trigraph& g, const std::set<Vertex>& s,
                                  const std::vector<Vertex>& h) {
    std::set<Vertex> hset(h.begin(), h.end());
    HEquivalenceClasses out;
    std::map<std::vector<Vertex>, std::set<Vertex>> by_fp;
    for (Vertex v : s) {
        if (!g.has_vertex(v)) throw Error("h_equivalence: separator vertex missing");
        std::vector<Vertex> fp;
        for (const auto& [n, c] : g.neighbors(v)) {
            (void)c;
            if (hset.count(n)) fp.push_back(n);
        }
        if (!fp.empty()) out.s_h.insert(v);
        by_fp[fp].insert(v);
    }
    for (auto& [fp, members] : by_fp) {
        (void)fp;
        out.classes.push_back(std::move(members));
    }
    std::sort(out.classes.begin(), out.classes.end(),
              [](const std::set<Vertex>& a, const std::set<Vertex>& b) {
                  return *a.begin() < *b.begin();
              });
    return out;
}

std::optional<int> critical_index(const Trigraph& g, const std::set<Vertex>& s,
                                  const ContractionSequence& c_prime,
                                  const std::vector<Vertex>& h) {
    if (h.empty()) throw Error("critical_index: empty component");
    std::set<Vertex> keep;
    for (const auto& [v, nb] : c_prime.initial.adjacency()) {
        (void)nb;
        keep.insert(v);
    }
    for (Vertex v : h) {
        if (!g.has_vertex(v)) throw Error("critical_index: component vertex missing");
        if (keep.count(v))
            throw Error("critical_index: component overlaps the reduced graph");
        keep.insert(v);
    }
    Trigraph g_plus = g.induced(keep);
    ContractionSequence ext = extension(c_prime, g_plus);

    HEquivalenceClasses hq = h_equivalence(g, s, h);
    std::map<Vertex, int> cls_of;
    for (std::size_t i = 0; i < hq.classes.size(); ++i)
        for (Vertex v : hq.classes[i]) cls_of[v] = static_cast<int>(i);

    ReplayState st(g_plus);
    int len = static_cast<int>(ext.steps.size()) + 1;
    for (int i = 1; i <= len; ++i) {
        if (i > 1) st.apply(ext.steps[i - 2]);
        for (Vertex v : h)
            if (st.current().red_degree(v) > 0) return i;
        // still red-free at h: any bag meeting the attached separator
        // vertices must sit inside one attachment class
        for (const auto& [live, bag] : st.bags()) {
            (void)live;
            bool meets = false;
            for (Vertex v : bag)
                if (hq.s_h.count(v)) {
                    meets = true;
                    break;
                }
            if (!meets) continue;
            int want = -1;
            bool fine = true;
            for (Vertex v : bag) {
                auto it = cls_of.find(v);
                if (it == cls_of.end()) {
                    fine = false;  // bag left the separator
                    break;
                }
                if (want < 0)
                    want = it->second;
                else if (want != it->second) {
                    fine = false;
                    break;
                }
            }
            TWW_CHECK(fine,
                      "critical_index: bag mixes attachment classes before turning red");
        }
    }
    return std::nullopt;
}

SafePoint find_safe_point(const Trigraph& g, const ViDecomposition& d,
                          const ReducedGraph& r,
                          const std::vector<TwinBlockClass>& classes,
                          const ContractionSequence& c_prime, int h_index) {
    if (h_index < 0 || h_index >= static_cast<int>(d.components.size()))
        throw Error("find_safe_point: no such component");
    const TwinBlockClass* cls = nullptr;
    for (const auto& c : classes)
        if (std::find(c.members.begin(), c.members.end(), h_index) != c.members.end()) {
            cls = &c;
            break;
        }
    if (!cls) throw Error("find_safe_point: component not covered by the classes");
    std::set<int> kept(r.kept.begin(), r.kept.end());
    if (kept.count(h_index)) throw Error("find_safe_point: component was not removed");
    std::vector<int> witnesses;
    for (int m : cls->members)
        if (kept.count(m)) witnesses.push_back(m);
    if (witnesses.size() < 2)
        throw Error(
            "find_safe_point: fewer than two kept members; keep threshold too small");

    auto crit = critical_index(g, d.separator, c_prime, d.components[h_index]);
    int len = static_cast<int>(c_prime.steps.size()) + 1;
    SafePoint out;
    out.critical_end = !crit.has_value();
    out.delta = crit ? *crit - 1 : len;
    TWW_CHECK(out.delta >= 1, "find_safe_point: critical at the initial trigraph");

    ReplayState st(c_prime.initial);
    for (int k = 0; k + 1 < out.delta; ++k) st.apply(c_prime.steps[k]);

    for (std::size_t i = 0; i + 1 < witnesses.size() && out.first < 0; ++i) {
        for (std::size_t j = i + 1; j < witnesses.size(); ++j) {
            int a = witnesses[i];
            int b = witnesses[j];
            std::map<Vertex, Vertex> inv_a = inverse_map(cls->isomorphisms.at(a));
            const auto& to_b = cls->isomorphisms.at(b);
            std::map<Vertex, Vertex> ab;
            bool merged = true;
            for (Vertex u : d.components[a]) {
                Vertex v = to_b.at(inv_a.at(u));
                ab.emplace(u, v);
                if (st.live_of(u) != st.live_of(v)) {
                    merged = false;
                    break;
                }
            }
            if (!merged) continue;
            out.first = a;
            out.second = b;
            out.merge_map = std::move(ab);
            const auto& to_a = cls->isomorphisms.at(a);
            std::map<Vertex, Vertex> inv_h = inverse_map(cls->isomorphisms.at(h_index));
            for (Vertex u : d.components[h_index]) out.iota.emplace(u, to_a.at(inv_h.at(u)));
            break;
        }
    }
    if (out.first < 0)
        throw Error(
            "find_safe_point: no merged twin-block pair at the safe point; keep "
            "threshold too small for this instance");
    return out;
}

ContractionSequence one_new_H(const Trigraph& g, const ViDecomposition& d,
                              const ContractionSequence& c_prime, int h_index,
                              const SafePoint& safe, int t) {
    TWW_CHECK(h_index >= 0 && h_index < static_cast<int>(d.components.size()),
              "one_new_H: no such component");
    const std::vector<Vertex>& h = d.components[h_index];
    std::set<Vertex> hset(h.begin(), h.end());
    const Trigraph& g_star = c_prime.initial;
    for (Vertex v : h) {
        TWW_CHECK(g.has_vertex(v), "one_new_H: component vertex missing from the host");
        TWW_CHECK(!g_star.has_vertex(v),
                  "one_new_H: component already present in the sequence");
    }
    TWW_CHECK(c_prime.full(), "one_new_H: needs a full input sequence");
    int len = static_cast<int>(c_prime.steps.size()) + 1;
    TWW_CHECK(safe.delta >= 1 && safe.delta <= len, "one_new_H: safe point out of range");
    TWW_CHECK(progressive_ok(c_prime, t, safe.delta + 1, 2 * t),
              "one_new_H: input sequence exceeds the progressive budget");

    TWW_CHECK(safe.first >= 0 && safe.first < static_cast<int>(d.components.size()),
              "one_new_H: bad witness");
    const std::vector<Vertex>& wcomp = d.components[safe.first];
    std::set<Vertex> wset(wcomp.begin(), wcomp.end());
    TWW_CHECK(safe.iota.size() == hset.size(),
              "one_new_H: iota is not a bijection onto the witness");
    std::map<Vertex, Vertex> iota_inv;
    for (const auto& [u, v] : safe.iota) {
        TWW_CHECK(hset.count(u) && wset.count(v), "one_new_H: iota leaves the components");
        iota_inv.emplace(v, u);
    }
    TWW_CHECK(iota_inv.size() == wset.size(),
              "one_new_H: iota is not a bijection onto the witness");
    for (Vertex u : h) {
        for (Vertex v : h)
            TWW_CHECK(g.edge(u, v) == g.edge(safe.iota.at(u), safe.iota.at(v)),
                      "one_new_H: iota breaks an internal edge");
        for (Vertex sep : d.separator)
            TWW_CHECK(g.edge(u, sep) == g.edge(safe.iota.at(u), sep),
                      "one_new_H: iota breaks separator attachment");
    }

    std::set<Vertex> keep;
    for (const auto& [v, nb] : g_star.adjacency()) {
        (void)nb;
        keep.insert(v);
    }
    for (Vertex v : h) keep.insert(v);
    Trigraph g_plus = g.induced(keep);

    Rec rec(g_plus);
    std::map<Vertex, Vertex> fwd;   // c_prime live id -> rec live id
    std::map<Vertex, Vertex> back;  // rec live id -> c_prime live id
    for (const auto& [v, nb] : g_star.adjacency()) {
        (void)nb;
        fwd.emplace(v, v);
        back.emplace(v, v);
    }
    auto do_step = [&](const ContractionStep& s) {
        Vertex a = fwd.at(s.u);
        Vertex b = fwd.at(s.v);
        Vertex w = rec.contract_pair(a, b);
        fwd.erase(s.u);
        fwd.erase(s.v);
        back.erase(a);
        back.erase(b);
        fwd.emplace(s.w, w);
        back.emplace(w, s.w);
    };

    // replay to the safe point, ignoring h; collect the witness copy's inner
    // contractions (both bags inside the witness) for mirroring
    ReplayState mirror(c_prime.initial);
    std::vector<std::pair<std::set<Vertex>, std::set<Vertex>>> inner;
    for (int k = 0; k + 1 < safe.delta; ++k) {
        const ContractionStep& s = c_prime.steps[k];
        const std::set<Vertex>& bu = mirror.bags().at(s.u);
        const std::set<Vertex>& bv = mirror.bags().at(s.v);
        if (subset_of(bu, wset) && subset_of(bv, wset)) inner.emplace_back(bu, bv);
        mirror.apply(s);
        do_step(s);
        for (Vertex v : h)
            TWW_CHECK(rec.rs.current().red_degree(v) == 0,
                      "one_new_H: red edge at the component before the safe point");
    }
    for (const auto& [u, v] : safe.merge_map)
        TWW_CHECK(mirror.live_of(u) == mirror.live_of(v),
                  "one_new_H: witness pair not merged at the safe point");

    // mirror the inner contractions on the new copy
    auto h_live_with_bag = [&](const std::set<Vertex>& want) {
        for (const auto& [live, bag] : rec.rs.bags())
            if (bag == want) return live;
        TWW_CHECK(false, "one_new_H: mirrored part missing on the new copy");
        return Vertex(-1);
    };
    for (const auto& [ba, bb] : inner) {
        std::set<Vertex> ha, hb;
        for (Vertex v : ba) ha.insert(iota_inv.at(v));
        for (Vertex v : bb) hb.insert(iota_inv.at(v));
        rec.contract_pair(h_live_with_bag(ha), h_live_with_bag(hb));
    }

    // zip each part of h onto the bag holding its witness image
    std::vector<Vertex> h_parts;
    for (const auto& [live, bag] : rec.rs.bags())
        if (subset_of(bag, hset)) h_parts.push_back(live);
    for (Vertex part : h_parts) {
        std::set<Vertex> bag = rec.rs.bags().at(part);
        Vertex host = rec.rs.live_of(safe.iota.at(*bag.begin()));
        TWW_CHECK(host != part, "one_new_H: zip target missing");
        Vertex w = rec.contract_pair(part, host);
        auto bit = back.find(host);
        TWW_CHECK(bit != back.end(), "one_new_H: zip host is not tracked");
        Vertex cp = bit->second;
        back.erase(bit);
        fwd.at(cp) = w;
        back.emplace(w, cp);
    }

    // the zipped state must be the safe trigraph with h folded into the
    // witness copy's bags
    {
        BagMap expect, actual;
        for (const auto& [live, bag] : mirror.bags()) {
            (void)live;
            std::set<Vertex> e = bag;
            for (Vertex v : bag)
                if (wset.count(v)) e.insert(iota_inv.at(v));
            Vertex key = *e.begin();
            expect.emplace(key, std::move(e));
        }
        for (const auto& [live, bag] : rec.rs.bags()) {
            (void)live;
            actual.emplace(*bag.begin(), bag);
        }
        TWW_CHECK(expect == actual,
                  "one_new_H: zipped state deviates from the safe trigraph");
        TWW_CHECK(trigraph_from_bags(g_plus, rec.rs.bags()) == rec.rs.current(),
                  "one_new_H: zipped trigraph deviates from its bag structure");
    }

    // remaining steps, now with the copy on board
    for (int k = safe.delta - 1; k < static_cast<int>(c_prime.steps.size()); ++k)
        do_step(c_prime.steps[k]);

    ContractionSequence out{g_plus, rec.steps};
    TWW_CHECK(out.full(), "one_new_H: lift did not finish the graph");
    TWW_CHECK(progressive_ok(out, t, safe.delta + 1, 2 * t),
              "one_new_H: progressive budget violated");
    return out;
}

ContractionSequence lift_sequence(const Trigraph& g, const ViDecomposition& d,
                                  const ReducedGraph& r,
                                  const std::vector<TwinBlockClass>& classes,
                                  const ContractionSequence& c_prime) {
    TWW_CHECK(c_prime.initial == r.g_prime,
              "lift_sequence: sequence does not live on the reduced graph");
    TWW_CHECK(c_prime.full(), "lift_sequence: needs a full sequence");
    if (r.removed.empty()) return c_prime;
    int t = replay_width(c_prime).width();

    struct Item {
        int comp;
        SafePoint safe;
    };
    std::vector<Item> items;
    for (const auto& [comp, cls] : r.removed) {
        (void)cls;
        items.push_back({comp, find_safe_point(g, d, r, classes, c_prime, comp)});
    }
    // most conservative first: a later item's prefix is then untouched by
    // earlier zips, so its safe point stays valid
    std::stable_sort(items.begin(), items.end(),
                     [](const Item& a, const Item& b) { return a.safe.delta > b.safe.delta; });

    ContractionSequence cur = c_prime;
    for (const auto& it : items) cur = one_new_H(g, d, cur, it.comp, it.safe, t);
    TWW_CHECK(cur.full(), "lift_sequence: lift did not finish the graph");
    TWW_CHECK(replay_width(cur).width() <= 2 * t,
              "lift_sequence: lifted width exceeds twice the reduced width");
    return cur;
}

SolveResult vi_approximate(const Trigraph& g,
                           std::optional<std::uint64_t> threshold_override, int p_cap,
                           ViReport* report, const SolverConfig& cfg) {
    if (g.vertex_count() == 0) throw Error("vi_approximate: empty graph");
    if (g.red_edge_count() > 0) throw Error("vi_approximate: expects an all-black graph");
    if (!is_connected(g)) throw Error("vi_approximate: expects a connected graph");

    ViDecomposition d = vertex_integrity(g, p_cap);
    std::vector<TwinBlockClass> classes = twin_block_partition(g, d);
    ReducedGraph r = reduced_graph(g, d, classes, threshold_override);

    int hint = r.g_prime.vertex_count() - 1;
    if (d.p + 1 < 30) hint = std::min(hint, 1 << (d.p + 1));
    SolveResult reduced = optimal_sequence(r.g_prime, hint, cfg);

    ContractionSequence lifted = lift_sequence(g, d, r, classes, reduced.sequence);
    int w = replay_width(lifted).width();

    if (report) {
        report->p = d.p;
        report->class_count = static_cast<int>(classes.size());
        report->kept_components = static_cast<int>(r.kept.size());
        report->removed_components = static_cast<int>(r.removed.size());
        report->width_reduced = reduced.width;
        report->width_final = w;
        report->threshold = r.threshold;
        report->threshold_is_default = r.threshold_is_default;
        report->two_approx =
            r.threshold_is_default || BigInt(r.threshold) >= keep_threshold(d.p);
        report->solved_exactly = r.removed.empty() && reduced.optimal;
    }

    SolveResult out;
    out.width = w;
    out.sequence = std::move(lifted);
    out.optimal = r.removed.empty() && reduced.optimal;
    return out;
}

}  // namespace tww
