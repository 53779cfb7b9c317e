#include "selberg/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <set>
#include <thread>
#include <unordered_map>

#include "selberg/errors.hpp"

namespace selberg {

Word free_reduce(Word w) {
    Word out;
    out.reserve(w.size());
    for (int l : w) {
        if (!out.empty() && out.back() == -l) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return out;
}

Word cyclic_reduce(Word w) {
    w = free_reduce(std::move(w));
    std::size_t lo = 0, hi = w.size();
    while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
        ++lo;
        --hi;
    }
    return Word(w.begin() + static_cast<std::ptrdiff_t>(lo),
                w.begin() + static_cast<std::ptrdiff_t>(hi));
}

namespace {

// letter order 1 < -1 < 2 < -2 < ... for lexicographic tie-breaks
inline int letter_rank(int l) { return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1; }

bool rotation_less(const Word& w, std::size_t i, std::size_t j) {
    std::size_t n = w.size();
    for (std::size_t k = 0; k < n; ++k) {
        int a = letter_rank(w[(i + k) % n]);
        int b = letter_rank(w[(j + k) % n]);
        if (a != b) return a < b;
    }
    return false;
}

}  // namespace

Word min_rotation(const Word& w) {
    if (w.empty()) return w;
    std::size_t best = 0;
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (rotation_less(w, i, best)) best = i;
    }
    Word out;
    out.reserve(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) out.push_back(w[(best + k) % w.size()]);
    return out;
}

int cyclic_power_index(const Word& w) {
    std::size_t n = w.size();
    for (std::size_t p = 1; p <= n / 2; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) periodic = (w[i] == w[i % p]);
        if (periodic) return static_cast<int>(n / p);
    }
    return 1;
}

namespace {

Word invert_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

// all rotations of every relator and its inverse
std::vector<Word> symmetrized_relators(const std::vector<Word>& relators) {
    std::set<Word> seen;
    for (const Word& r : relators) {
        for (const Word& base : {r, invert_word(r)}) {
            for (std::size_t i = 0; i < base.size(); ++i) {
                Word rot(base.begin() + static_cast<std::ptrdiff_t>(i), base.end());
                rot.insert(rot.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(i));
                seen.insert(std::move(rot));
            }
        }
    }
    return std::vector<Word>(seen.begin(), seen.end());
}

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 1469598103934665603ull;
        for (int l : w) {
            h ^= static_cast<std::size_t>(static_cast<unsigned>(l) + 0x9e3779b9u);
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Conjugacy canonicalization by substitution closure. Both built-in relators
// have 8 distinct cyclic letters (C'(1/8) small cancellation), so conjugate
// cyclic geodesic words are connected by relator substitutions that never need
// to grow a necklace by more than half a relator minus two letters; closing
// under every split with a +2 length allowance and taking the least minimal
// necklace is a class invariant (checked against a matrix-conjugation oracle).
class Canonicalizer {
  public:
    explicit Canonicalizer(const std::vector<Word>& relators)
        : sym_(symmetrized_relators(relators)) {}

    Word canonical(const Word& start_necklace) {
        auto hit = memo_.find(start_necklace);
        if (hit != memo_.end()) return hit->second;
        Word result = close(start_necklace);
        return result;
    }

  private:
    std::vector<Word> sym_;
    std::unordered_map<Word, Word, WordHash> memo_;

    Word close(const Word& start) {
        if (start.empty()) return start;
        std::set<Word> seen;
        std::deque<Word> queue;
        seen.insert(min_rotation(start));
        queue.push_back(start);
        std::size_t best_len = start.size();
        std::size_t guard = 0;
        while (!queue.empty()) {
            Word w = std::move(queue.front());
            queue.pop_front();
            if (++guard > 60000) {
                throw numerical_error("conjugacy closure exceeded state budget");
            }
            const std::size_t n = w.size();
            for (std::size_t rot = 0; rot < n; ++rot) {
                Word v;
                v.reserve(n);
                for (std::size_t k = 0; k < n; ++k) v.push_back(w[(rot + k) % n]);
                for (const Word& s : sym_) {
                    const std::size_t rl = s.size();
                    std::size_t match = 0;
                    while (match < std::min(n, rl - 1) && v[match] == s[match]) ++match;
                    // substitute the matched prefix s[:m] by inv(s[m:]) for
                    // every split length m; m > rl/2 shortens, m = rl/2 swaps
                    for (std::size_t m = 2; m <= match; ++m) {
                        if (n + rl - 2 * m > best_len + 2) continue;
                        Word nw;
                        nw.reserve(n + rl - 2 * m);
                        for (std::size_t k = rl; k > m; --k) nw.push_back(-s[k - 1]);
                        nw.insert(nw.end(), v.begin() + static_cast<std::ptrdiff_t>(m), v.end());
                        nw = cyclic_reduce(std::move(nw));
                        if (nw.empty()) continue;
                        Word key = min_rotation(nw);
                        if (!seen.insert(key).second) continue;
                        best_len = std::min(best_len, key.size());
                        queue.push_back(std::move(nw));
                    }
                }
            }
        }
        const Word* best = nullptr;
        for (const Word& k : seen) {
            if (k.size() != best_len) continue;
            if (best == nullptr) {
                best = &k;
                continue;
            }
            for (std::size_t i = 0; i < best_len; ++i) {
                int a = letter_rank(k[i]), b = letter_rank((*best)[i]);
                if (a != b) {
                    if (a < b) best = &k;
                    break;
                }
            }
        }
        Word canon = *best;
        for (const Word& k : seen) {
            if (k.size() == best_len) memo_.emplace(k, canon);
        }
        return canon;
    }
};

struct Bucket {
    int first_depth = 0;
};

// Orbit walk over group elements, breadth-first by word length. Elements are
// deduplicated by their (sign-normalized) matrices, so the walk grows like the
// volume of the orbit ball instead of the free-word tree — on a surface with a
// short pinched cuff the word tree revisits the thin collar astronomically
// often while the element ball there stays small. Every class with a geodesic
// below the cutoff has a conjugate whose axis passes near the base point, and
// the breadth-first layer structure (= minimal word length per element) is
// independent of visit order, which keeps results thread-count invariant.
class OrbitWalk {
  public:
    OrbitWalk(const GroupPresentation& g, double cutoff, int max_depth,
              double prune_radius, std::uint64_t budget, int threads)
        : cutoff_(cutoff),
          trace_cap_(2.0 * std::cosh(cutoff / 2.0)),
          prune_radius_(prune_radius),
          max_depth_(max_depth),
          budget_(budget),
          threads_(std::max(1, threads)) {
        for (int i = 1; i <= static_cast<int>(g.generators.size()); ++i) {
            letter_ids_.push_back(i);
            letters_.push_back(g.letter(i));
            letter_ids_.push_back(-i);
            letters_.push_back(g.letter(-i));
        }
    }

    void run() {
        Node root;
        root.m = MoebiusElement::identity();
        root.parent = -1;
        root.letter = 0;
        nodes_.push_back(root);
        seen_.emplace(key_of(root.m), 0);
        std::vector<std::int64_t> frontier{0};
        for (int depth = 1; depth <= max_depth_ && !frontier.empty(); ++depth) {
            frontier = expand_layer(frontier, depth);
        }
    }

    std::unordered_map<Word, Bucket, WordHash> buckets;
    std::uint64_t visited = 0;

  private:
    struct Node {
        MoebiusElement m;
        std::int64_t parent;
        int letter;
    };

    using Key = std::array<long long, 4>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::size_t h = 1469598103934665603ull;
            for (long long v : k) {
                h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
                h *= 1099511628211ull;
            }
            return h;
        }
    };

    // nearest distinct elements in the explored range sit ~1e-3 apart in
    // matrix distance; 1e-7 quantization separates them while double noise on
    // re-derived products (~1e-12 relative) at worst duplicates an element,
    // which costs a revisit but cannot merge two distinct ones
    static Key key_of(const MoebiusElement& m) {
        const auto& e = m.entries();
        Key k{};
        for (int i = 0; i < 4; ++i) k[i] = std::llround(e[i] * 1e7);
        return k;
    }

    std::vector<std::int64_t> expand_layer(const std::vector<std::int64_t>& frontier,
                                           int depth) {
        visited += frontier.size() * letters_.size();
        if (visited > budget_) {
            throw numerical_error("enumeration budget exceeded; raise it or lower the cutoff");
        }
        const Point base{0.0, 1.0};

        struct Candidate {
            Key key;
            Node node;
            double abs_trace;
        };
        std::vector<std::vector<Candidate>> chunks;
        auto expand_range = [&](std::size_t lo, std::size_t hi, std::vector<Candidate>& out) {
            for (std::size_t f = lo; f < hi; ++f) {
                const std::int64_t pi = frontier[f];
                const Node parent = nodes_[static_cast<std::size_t>(pi)];
                for (std::size_t li = 0; li < letters_.size(); ++li) {
                    if (depth > 1 && letter_ids_[li] == -parent.letter) continue;
                    Candidate c;
                    c.node.m = parent.m * letters_[li];
                    c.node.parent = pi;
                    c.node.letter = letter_ids_[li];
                    if (hyperbolic_distance(base, c.node.m.apply(base)) > prune_radius_) {
                        continue;
                    }
                    c.key = key_of(c.node.m);
                    c.abs_trace = std::abs(c.node.m.trace());
                    out.push_back(std::move(c));
                }
            }
        };

        int workers = static_cast<int>(
            std::min<std::size_t>(static_cast<std::size_t>(threads_),
                                  std::max<std::size_t>(1, frontier.size() / 64)));
        chunks.resize(static_cast<std::size_t>(std::max(workers, 1)));
        if (workers <= 1) {
            expand_range(0, frontier.size(), chunks[0]);
        } else {
            std::vector<std::thread> pool;
            std::size_t step = (frontier.size() + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                std::size_t lo = std::min(frontier.size(), w * step);
                std::size_t hi = std::min(frontier.size(), lo + step);
                pool.emplace_back(expand_range, lo, hi, std::ref(chunks[w]));
            }
            for (auto& t : pool) t.join();
        }

        std::vector<std::int64_t> next;
        for (auto& chunk : chunks) {
            for (Candidate& c : chunk) {
                auto [it, inserted] = seen_.emplace(c.key, nodes_.size());
                if (!inserted) continue;
                std::int64_t id = static_cast<std::int64_t>(nodes_.size());
                nodes_.push_back(c.node);
                next.push_back(id);
                if (c.abs_trace > 2.0 + kDetTol && c.abs_trace <= trace_cap_) {
                    Word key = min_rotation(cyclic_reduce(word_of(id)));
                    if (!key.empty()) {
                        auto [bit, fresh] = buckets.try_emplace(key, Bucket{depth});
                        if (!fresh) {
                            bit->second.first_depth = std::min(bit->second.first_depth, depth);
                        }
                    }
                }
            }
        }
        return next;
    }

    Word word_of(std::int64_t id) const {
        Word w;
        for (std::int64_t at = id; at > 0; at = nodes_[static_cast<std::size_t>(at)].parent) {
            w.push_back(nodes_[static_cast<std::size_t>(at)].letter);
        }
        std::reverse(w.begin(), w.end());
        return w;
    }

    double cutoff_;
    double trace_cap_;
    double prune_radius_;
    int max_depth_;
    std::uint64_t budget_;
    int threads_;
    std::vector<MoebiusElement> letters_;
    std::vector<int> letter_ids_;
    std::vector<Node> nodes_;
    std::unordered_map<Key, std::int64_t, KeyHash> seen_;
};

}  // namespace

LengthSpectrum enumerate_spectrum(const GroupPresentation& g, double cutoff,
                                  int max_depth, const EnumerationOptions& opts) {
    if (!(cutoff > 0.0)) throw validation_error("enumerate_spectrum: cutoff must be > 0");
    if (max_depth < 1) throw validation_error("enumerate_spectrum: max_depth must be >= 1");
    if (g.generators.empty()) throw validation_error("enumerate_spectrum: no generators");
    g.validate();

    const Point base{0.0, 1.0};
    double max_disp = 0.0;
    for (const MoebiusElement& gen : g.generators) {
        max_disp = std::max(max_disp, hyperbolic_distance(base, gen.apply(base)));
    }
    double prune_radius;
    if (opts.prune) {
        double slack = opts.prune_slack > 0.0 ? opts.prune_slack : std::max(4.0, max_disp);
        prune_radius = cutoff + slack;
    } else {
        // an element reachable in max_depth steps cannot move the base point
        // further than this, so the walk is effectively unpruned
        prune_radius = max_disp * max_depth + 1.0;
    }

    OrbitWalk walk(g, cutoff, max_depth, prune_radius, opts.budget, opts.threads);
    walk.run();
    std::unordered_map<Word, Bucket, WordHash>& buckets = walk.buckets;
    std::uint64_t total_visits = walk.visited;

    // fold free cyclic words into quotient conjugacy classes
    Canonicalizer canon(g.relators.empty() ? std::vector<Word>{} : g.relators);
    struct ClassAccum {
        int first_depth;
    };
    std::unordered_map<Word, ClassAccum, WordHash> classes;
    for (const auto& [key, b] : buckets) {
        Word c = g.relators.empty() ? key : canon.canonical(key);
        auto [it, inserted] = classes.try_emplace(c, ClassAccum{b.first_depth});
        if (!inserted) it->second.first_depth = std::min(it->second.first_depth, b.first_depth);
    }

    LengthSpectrum out;
    out.cutoff = cutoff;
    out.word_depth = max_depth;
    out.genus = g.genus;
    out.words_visited = total_visits;
    bool saw_last_depth_class = false;
    for (const auto& [key, acc] : classes) {
        ConjugacyClass cls;
        cls.canonical = key;
        cls.representative = g.evaluate(key);
        IsometryClass ic = classify(cls.representative);
        if (ic.kind != IsometryKind::hyperbolic) continue;
        cls.length = ic.length;
        if (cls.length > cutoff + kLengthTol) continue;
        cls.power_index = cyclic_power_index(key);
        cls.primitive = (cls.power_index == 1);
        if (acc.first_depth >= max_depth) saw_last_depth_class = true;
        out.classes.push_back(std::move(cls));
    }
    std::sort(out.classes.begin(), out.classes.end(),
              [](const ConjugacyClass& a, const ConjugacyClass& b) {
                  if (a.length != b.length) return a.length < b.length;
                  if (a.canonical.size() != b.canonical.size()) {
                      return a.canonical.size() < b.canonical.size();
                  }
                  for (std::size_t i = 0; i < a.canonical.size(); ++i) {
                      int ra = letter_rank(a.canonical[i]), rb = letter_rank(b.canonical[i]);
                      if (ra != rb) return ra < rb;
                  }
                  return false;
              });
    out.stabilized = !saw_last_depth_class && !out.classes.empty();

    for (const ConjugacyClass& cls : out.classes) {
        if (!cls.primitive) continue;
        if (!out.entries.empty() &&
            std::abs(cls.length - out.entries.back().length) < kLengthTol) {
            ++out.entries.back().multiplicity;
        } else {
            out.entries.push_back(SpectrumEntry{cls.length, 1});
        }
    }
    return out;
}

int count_geodesics(const LengthSpectrum& spec, double u) {
    if (u > spec.cutoff) {
        throw validation_error("count_geodesics: u above spectrum cutoff would undercount");
    }
    int total = 0;
    for (const SpectrumEntry& e : spec.entries) {
        if (e.length <= u + kLengthTol) total += e.multiplicity;
    }
    return total;
}

ExtendedLog pgt_log_bound(int genus, double ell_x, double u) {
    if (genus < 2) throw validation_error("pgt_log_bound: genus must be >= 2");
    if (!(ell_x > 0.0)) throw validation_error("pgt_log_bound: systole must be > 0");
    if (u < 0.0) throw validation_error("pgt_log_bound: u must be >= 0");
    return ExtendedLog::finite(80.0 * M_PI * (genus - 1) / ell_x + u);
}

Word conjugacy_canonical(const Word& w, const GroupPresentation& g) {
    Word necklace = min_rotation(cyclic_reduce(w));
    if (g.relators.empty()) return necklace;
    Canonicalizer canon(g.relators);
    return canon.canonical(necklace);
}

}  // namespace selberg
