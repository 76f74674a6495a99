#include "substrate/rule.hpp"

#include "substrate/language.hpp"
#include "substrate/pattern.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace substrate::subst {

std::shared_ptr<const SubstitutionRule> SubstitutionRule::word(std::string name, AlphabetRef alphabet,
                                                               std::vector<std::vector<int>> images) {
    auto r = std::shared_ptr<SubstitutionRule>(new SubstitutionRule());
    r->kind_ = Kind::Word;
    r->name_ = std::move(name);
    r->alphabet_ = std::move(alphabet);
    r->images_ = std::move(images);
    r->block_shape_ = Vec(0);
    r->validate();
    return r;
}

std::shared_ptr<const SubstitutionRule> SubstitutionRule::block(std::string name, AlphabetRef alphabet,
                                                                Vec block_shape,
                                                                std::vector<std::vector<int>> images) {
    auto r = std::shared_ptr<SubstitutionRule>(new SubstitutionRule());
    r->kind_ = Kind::Block;
    r->name_ = std::move(name);
    r->alphabet_ = std::move(alphabet);
    r->images_ = std::move(images);
    r->block_shape_ = block_shape;
    r->validate();
    return r;
}

void SubstitutionRule::validate() const {
    const int n = alphabet_->size();
    if (static_cast<int>(images_.size()) != n) fail("RuleArity", "one image per letter required");
    auto* self = const_cast<SubstitutionRule*>(this);
    if (kind_ == Kind::Block) {
        self->block_cells_ = 1;
        for (int i = 0; i < block_shape_.dim; ++i) {
            if (block_shape_[i] < 2) fail("BadBlockShape", "block substitutions need every k_i >= 2");
            self->block_cells_ *= block_shape_[i];
        }
    }
    self->min_len_ = -1;
    for (int a = 0; a < n; ++a) {
        const auto& img = images_[static_cast<size_t>(a)];
        if (img.empty()) fail("EmptyImage", "image of '" + alphabet_->name(a) + "' is empty");
        if (kind_ == Kind::Block && static_cast<long long>(img.size()) != block_cells_)
            fail("BadBlockShape", "image of '" + alphabet_->name(a) + "' is not k-shaped");
        for (int b : img)
            if (b < 0 || b >= n) fail("RuleLetterRange", "image letter out of range");
        long long len = static_cast<long long>(img.size());
        self->min_len_ = min_len_ < 0 ? len : std::min(min_len_, len);
        self->max_len_ = std::max(max_len_, len);
    }
    self->constant_length_ = (kind_ == Kind::Block) || (min_len_ == max_len_);

    // every letter must appear in some image (unused letters rejected at load)
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (const auto& img : images_)
        for (int b : img) used[static_cast<size_t>(b)] = true;
    for (int a = 0; a < n; ++a)
        if (!used[static_cast<size_t>(a)])
            fail("UnreachableLetter", "letter '" + alphabet_->name(a) + "' never produced by the rule");
}

int SubstitutionRule::block_at(int letter, const Vec& offset) const {
    Box b(Vec::zero(block_shape_.dim), block_shape_ - Vec::constant(block_shape_.dim, 1));
    return images_[static_cast<size_t>(letter)][static_cast<size_t>(b.index_of(offset))];
}

Vec SubstitutionRule::expansion_vector() const {
    if (kind_ == Kind::Block) return block_shape_;
    if (!constant_length_) fail("VariableLength", "no per-axis expansion for a variable-length word rule");
    return Vec(min_len_);
}

Int SubstitutionRule::iterated_length(int letter, int t) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    const int n = alphabet_->size();
    if (length_cache_.empty()) {
        length_cache_.emplace_back(static_cast<size_t>(n), Int(1));
    }
    while (static_cast<int>(length_cache_.size()) <= t) {
        const auto& prev = length_cache_.back();
        std::vector<Int> next(static_cast<size_t>(n));
        for (int a = 0; a < n; ++a) {
            Int sum = 0;
            for (int b : images_[static_cast<size_t>(a)]) sum += prev[static_cast<size_t>(b)];
            next[static_cast<size_t>(a)] = sum;
        }
        length_cache_.push_back(std::move(next));
    }
    return length_cache_[static_cast<size_t>(t)][static_cast<size_t>(letter)];
}

int SubstitutionRule::descend_word(int base, int t, const Int& pos) const {
    Int p = pos;
    int cur = base;
    for (int level = t; level > 0; --level) {
        for (int child : images_[static_cast<size_t>(cur)]) {
            Int len = iterated_length(child, level - 1);
            if (p < len) {
                cur = child;
                goto next_level;
            }
            p -= len;
        }
        fail("AddressRange", "position outside supertile");
    next_level:;
    }
    return cur;
}

int SubstitutionRule::descend_block(int base, int t, const Vec& pos) const {
    // mixed-radix digits, most significant first
    const int d = block_shape_.dim;
    std::array<Int, kMaxDim> p;
    std::array<Int, kMaxDim> radix;
    for (int i = 0; i < d; ++i) {
        p[static_cast<size_t>(i)] = pos[i];
        radix[static_cast<size_t>(i)] = 1;
        for (int k = 0; k < t - 1; ++k) radix[static_cast<size_t>(i)] *= block_shape_[i];
    }
    int cur = base;
    for (int level = t; level > 0; --level) {
        Vec digit = Vec::zero(d);
        for (int i = 0; i < d; ++i) {
            Int q = floor_div(p[static_cast<size_t>(i)], radix[static_cast<size_t>(i)]);
            digit[i] = to_ll(q);
            p[static_cast<size_t>(i)] -= q * radix[static_cast<size_t>(i)];
            if (level > 1) radix[static_cast<size_t>(i)] /= block_shape_[i];
        }
        cur = block_at(cur, digit);
    }
    return cur;
}

std::vector<int> SubstitutionRule::substitute_word(const std::vector<int>& w) const {
    std::vector<int> out;
    for (int a : w) {
        const auto& img = images_[static_cast<size_t>(a)];
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

std::vector<int> SubstitutionRule::iterate_letter(int letter, int t) const {
    std::vector<int> w{letter};
    for (int k = 0; k < t; ++k) w = substitute_word(w);
    return w;
}

bool SubstitutionRule::letter_grows(int letter) const {
    // growth <=> some reachable letter lies on a cycle with branching
    const int n = alphabet_->size();
    auto mul_capped = [n](const std::vector<std::vector<long long>>& A,
                          const std::vector<std::vector<long long>>& B) {
        std::vector<std::vector<long long>> C(static_cast<size_t>(n),
                                              std::vector<long long>(static_cast<size_t>(n), 0));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (A[static_cast<size_t>(i)][static_cast<size_t>(k)])
                    for (int j = 0; j < n; ++j) {
                        C[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::min<long long>(
                            4, C[static_cast<size_t>(i)][static_cast<size_t>(j)] +
                                   A[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                                       B[static_cast<size_t>(k)][static_cast<size_t>(j)]);
                    }
        return C;
    };
    std::vector<std::vector<long long>> M(static_cast<size_t>(n),
                                          std::vector<long long>(static_cast<size_t>(n), 0));
    for (int a = 0; a < n; ++a)
        for (int b : images_[static_cast<size_t>(a)])
            M[static_cast<size_t>(b)][static_cast<size_t>(a)] =
                std::min<long long>(4, M[static_cast<size_t>(b)][static_cast<size_t>(a)] + 1);
    // reachability from `letter`
    std::vector<bool> reach(static_cast<size_t>(n), false);
    reach[static_cast<size_t>(letter)] = true;
    for (int round = 0; round < n; ++round)
        for (int a = 0; a < n; ++a)
            if (reach[static_cast<size_t>(a)])
                for (int b : images_[static_cast<size_t>(a)]) reach[static_cast<size_t>(b)] = true;
    auto Mk = M;
    for (int k = 1; k <= n; ++k) {
        for (int c = 0; c < n; ++c) {
            if (!reach[static_cast<size_t>(c)]) continue;
            if (Mk[static_cast<size_t>(c)][static_cast<size_t>(c)] >= 1) {
                long long col = 0;  // |sigma^k(c)|, capped
                for (int b = 0; b < n; ++b) col += Mk[static_cast<size_t>(b)][static_cast<size_t>(c)];
                if (col >= 2) return true;
            }
        }
        Mk = mul_capped(Mk, M);
    }
    return false;
}

Patch substitute_patch(const SubstitutionRule& rule, const Patch& p) {
    if (rule.kind() == SubstitutionRule::Kind::Block) {
        const Vec k = rule.block_shape();
        const int d = p.dim();
        Vec lo = Vec::zero(d), hi = Vec::zero(d);
        for (int i = 0; i < d; ++i) {
            lo[i] = p.shape.lo[i] * k[i];
            hi[i] = (p.shape.hi[i] + 1) * k[i] - 1;
        }
        Box shape(lo, hi);
        std::vector<int> vals(static_cast<size_t>(shape.cell_count()));
        for (long long ci = 0; ci < p.shape.cell_count(); ++ci) {
            Vec y = p.shape.cell_at(ci);
            int a = p.at(y);
            Box cellbox(Vec::zero(d), k - Vec::constant(d, 1));
            for (long long bi = 0; bi < cellbox.cell_count(); ++bi) {
                Vec j = cellbox.cell_at(bi);
                Vec target = Vec::zero(d);
                for (int i = 0; i < d; ++i) target[i] = y[i] * k[i] + j[i];
                vals[static_cast<size_t>(shape.index_of(target))] = rule.block_at(a, j);
            }
        }
        Vec anchor = Vec::zero(d);
        for (int i = 0; i < d; ++i) anchor[i] = p.anchor[i] * k[i];
        return Patch(shape, anchor, std::move(vals));
    }
    // word rule: concatenation with exact offsets; the image of cell j starts at
    // the summed lengths of the images before it, anchored at the image of cell 0
    long long start = 0;
    for (long long c = p.shape.lo[0]; c < 0; ++c) start -= rule.image_length(p.at(Vec(c)));
    std::vector<int> vals;
    long long lo = start;
    for (long long c = p.shape.lo[0]; c <= p.shape.hi[0]; ++c) {
        const auto& img = rule.image(p.at(Vec(c)));
        vals.insert(vals.end(), img.begin(), img.end());
    }
    Box shape(Vec(lo), Vec(lo + static_cast<long long>(vals.size()) - 1));
    long long anchor = p.anchor[0] * (rule.constant_length() ? rule.min_image_length() : 1);
    return Patch(shape, Vec(anchor), std::move(vals));
}

SubstitutionMatrix substitution_matrix(const SubstitutionRule& rule) {
    const int n = rule.alphabet()->size();
    SubstitutionMatrix m;
    m.alphabet = rule.alphabet();
    m.counts.assign(static_cast<size_t>(n), std::vector<Int>(static_cast<size_t>(n), Int(0)));
    for (int a = 0; a < n; ++a)
        for (int b : rule.image(a)) m.counts[static_cast<size_t>(b)][static_cast<size_t>(a)] += 1;
    return m;
}

bool is_primitive(const SubstitutionRule& rule) {
    const int n = rule.alphabet()->size();
    SubstitutionMatrix m = substitution_matrix(rule);
    // boolean powers up to the Wielandt bound (n-1)^2 + 1
    std::vector<std::vector<bool>> B(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B[static_cast<size_t>(i)][static_cast<size_t>(j)] = m.counts[static_cast<size_t>(i)][static_cast<size_t>(j)] > 0;
    auto all_positive = [n](const std::vector<std::vector<bool>>& A) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!A[static_cast<size_t>(i)][static_cast<size_t>(j)]) return false;
        return true;
    };
    auto mul = [n](const std::vector<std::vector<bool>>& A, const std::vector<std::vector<bool>>& B2) {
        std::vector<std::vector<bool>> C(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n), false));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (A[static_cast<size_t>(i)][static_cast<size_t>(k)])
                    for (int j = 0; j < n; ++j)
                        if (B2[static_cast<size_t>(k)][static_cast<size_t>(j)])
                            C[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
        return C;
    };
    auto P = B;
    const int bound = (n - 1) * (n - 1) + 1;
    for (int k = 1; k <= bound; ++k) {
        if (all_positive(P)) return true;
        P = mul(P, B);
    }
    return false;
}

bool operator<(const Seed& a, const Seed& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind == Seed::Kind::Interior) {
        if (a.letter != b.letter) return a.letter < b.letter;
        return a.offset < b.offset;
    }
    return a.corner_letters < b.corner_letters;
}

std::string Seed::str(const Alphabet& alphabet) const {
    if (kind == Kind::Interior)
        return "interior(" + alphabet.name(letter) + "@" + offset.str() + ")";
    std::string s = "corner(";
    for (size_t i = 0; i < corner_letters.size(); ++i)
        s += (i ? "," : "") + alphabet.name(corner_letters[i]);
    return s + ")";
}

namespace {

// offset of the seed cell inside the level-k supertile sigma^{nk}(a) of an
// interior seed, word case: r_{k+1} = |sigma^{nk}(prefix)| + r_k
Int interior_word_offset(const SubstitutionRule& rule, int a, long long j, int n, int k) {
    std::vector<int> w = rule.iterate_letter(a, n);
    Int r = j;
    for (int level = 1; level < k; ++level) {
        Int prefix = 0;
        for (long long i = 0; i < j; ++i) prefix += rule.iterated_length(w[static_cast<size_t>(i)], n * level);
        r = prefix + r;
    }
    return r;
}

}  // namespace

int address(const SubstitutionRule& rule, const Seed& seed, int n, const Vec& x) {
    const int d = rule.dim();
    constexpr int kLevelCap = 256;
    if (rule.kind() == SubstitutionRule::Kind::Block) {
        const Vec kv = rule.block_shape();
        if (seed.kind == Seed::Kind::Interior) {
            // seed-cell offset inside the level: r_{level+1} = j * K^level + r_level, K = k^n
            std::array<Int, kMaxDim> K, Kpow, r;
            for (int i = 0; i < d; ++i) {
                K[static_cast<size_t>(i)] = 1;
                for (int t = 0; t < n; ++t) K[static_cast<size_t>(i)] *= kv[i];
                Kpow[static_cast<size_t>(i)] = K[static_cast<size_t>(i)];  // K^level at level 1
                r[static_cast<size_t>(i)] = seed.offset[i];
            }
            for (int level = 1; level <= kLevelCap; ++level) {
                bool covered = true;
                for (int i = 0; i < d && covered; ++i) {
                    Int p = Int(x[i]) + r[static_cast<size_t>(i)];
                    if (p < 0 || p >= Kpow[static_cast<size_t>(i)]) covered = false;
                }
                if (covered) {
                    Vec pos = Vec::zero(d);
                    for (int i = 0; i < d; ++i) pos[i] = to_ll(Int(Int(x[i]) + r[static_cast<size_t>(i)]));
                    return rule.descend_block(seed.letter, n * level, pos);
                }
                for (int i = 0; i < d; ++i) {
                    r[static_cast<size_t>(i)] += Int(seed.offset[i]) * Kpow[static_cast<size_t>(i)];
                    Kpow[static_cast<size_t>(i)] *= K[static_cast<size_t>(i)];
                }
            }
            fail("SeedNotCovering", "interior seed does not cover the requested cell");
        }
        // corner seed: quadrant by sign per axis
        int mask = 0;
        for (int i = 0; i < d; ++i)
            if (x[i] < 0) mask |= 1 << i;
        int letter = seed.corner_letters[static_cast<size_t>(mask)];
        std::array<Int, kMaxDim> side;
        for (int level = 1; level <= kLevelCap; ++level) {
            bool covered = true;
            for (int i = 0; i < d; ++i) {
                side[static_cast<size_t>(i)] = 1;
                for (int t = 0; t < n * level; ++t) side[static_cast<size_t>(i)] *= kv[i];
                Int p = x[i] < 0 ? Int(x[i]) + side[static_cast<size_t>(i)] : Int(x[i]);
                if (p < 0 || p >= side[static_cast<size_t>(i)]) covered = false;
            }
            if (covered) {
                Vec pos = Vec::zero(d);
                for (int i = 0; i < d; ++i)
                    pos[i] = x[i] < 0 ? to_ll(Int(Int(x[i]) + side[static_cast<size_t>(i)])) : x[i];
                return rule.descend_block(letter, n * level, pos);
            }
        }
        fail("SeedNotCovering", "corner seed does not cover the requested cell");
    }

    // word rule
    const long long x0 = x[0];
    if (seed.kind == Seed::Kind::Interior) {
        for (int level = 1; level <= kLevelCap; ++level) {
            Int r = interior_word_offset(rule, seed.letter, seed.offset[0], n, level);
            Int len = rule.iterated_length(seed.letter, n * level);
            Int p = Int(x0) + r;
            if (p >= 0 && p < len) return rule.descend_word(seed.letter, n * level, p);
        }
        fail("SeedNotCovering", "interior seed does not cover the requested cell");
    }
    int letter = seed.corner_letters[x0 < 0 ? 1 : 0];
    for (int level = 1; level <= kLevelCap; ++level) {
        Int len = rule.iterated_length(letter, n * level);
        Int p = x0 < 0 ? Int(x0) + len : Int(x0);
        if (p >= 0 && p < len) return rule.descend_word(letter, n * level, p);
    }
    fail("SeedNotCovering", "corner seed does not cover the requested cell");
}

bool seed_valid(const SubstitutionRule& rule, const Seed& seed, int n) {
    const int d = rule.dim();
    if (seed.kind == Seed::Kind::Interior) {
        if (rule.kind() == SubstitutionRule::Kind::Block) {
            Vec K = Vec::zero(d);
            for (int i = 0; i < d; ++i) {
                K[i] = 1;
                for (int t = 0; t < n; ++t) K[i] *= rule.block_shape()[i];
                if (!(seed.offset[i] > 0 && seed.offset[i] < K[i] - 1)) return false;
            }
            Patch p(Box::cell(Vec::zero(d)), Vec::zero(d), std::vector<int>{seed.letter});
            for (int t = 0; t < n; ++t) p = substitute_patch(rule, p);
            return p.at(seed.offset) == seed.letter;
        }
        std::vector<int> w = rule.iterate_letter(seed.letter, n);
        long long len = static_cast<long long>(w.size());
        long long j = seed.offset[0];
        if (!(j > 0 && j < len - 1)) return false;
        if (w[static_cast<size_t>(j)] != seed.letter) return false;
        bool pre = false, suf = false;
        for (long long i = 0; i < j; ++i) pre = pre || rule.letter_grows(w[static_cast<size_t>(i)]);
        for (long long i = j + 1; i < len; ++i) suf = suf || rule.letter_grows(w[static_cast<size_t>(i)]);
        return pre && suf;
    }
    // corner: each letter reproduces itself at the matching corner of its image,
    // every corner letter grows, and the 2^d-cell configuration is legal
    if (static_cast<int>(seed.corner_letters.size()) != (1 << d)) return false;
    for (int mask = 0; mask < (1 << d); ++mask) {
        int a = seed.corner_letters[static_cast<size_t>(mask)];
        if (!rule.letter_grows(a)) return false;
        if (rule.kind() == SubstitutionRule::Kind::Block) {
            Vec K = Vec::zero(d);
            for (int i = 0; i < d; ++i) {
                K[i] = 1;
                for (int t = 0; t < n; ++t) K[i] *= rule.block_shape()[i];
            }
            Patch p(Box::cell(Vec::zero(d)), Vec::zero(d), std::vector<int>{a});
            for (int t = 0; t < n; ++t) p = substitute_patch(rule, p);
            Vec corner = Vec::zero(d);
            for (int i = 0; i < d; ++i) corner[i] = (mask >> i & 1) ? K[i] - 1 : 0;
            if (p.at(corner) != a) return false;
        } else {
            std::vector<int> w = rule.iterate_letter(a, n);
            int at = (mask & 1) ? w.back() : w.front();
            if (at != a) return false;
        }
    }
    // legality of the corner configuration in the admitted language
    Box config(Vec::constant(d, -1), Vec::zero(d));
    std::vector<int> vals(static_cast<size_t>(config.cell_count()));
    for (long long ci = 0; ci < config.cell_count(); ++ci) {
        Vec cell = config.cell_at(ci);
        int mask = 0;
        for (int i = 0; i < d; ++i)
            if (cell[i] < 0) mask |= 1 << i;
        vals[static_cast<size_t>(ci)] = seed.corner_letters[static_cast<size_t>(mask)];
    }
    Language lang = Language::admitted(rule);
    return lang.contains(config.size(), vals);
}

std::vector<std::pair<int, Seed>> fixed_points(const SubstitutionRule& rule, int max_power) {
    if (max_power < 1) fail("BadPower", "max_power must be >= 1");
    std::vector<std::pair<int, Seed>> out;
    const int d = rule.dim();
    const int nletters = rule.alphabet()->size();
    for (int n = 1; n <= max_power; ++n) {
        // interior seeds
        for (int a = 0; a < nletters; ++a) {
            if (rule.kind() == SubstitutionRule::Kind::Word) {
                std::vector<int> w = rule.iterate_letter(a, n);
                for (long long j = 1; j + 1 < static_cast<long long>(w.size()); ++j) {
                    Seed s;
                    s.kind = Seed::Kind::Interior;
                    s.letter = a;
                    s.offset = Vec(j);
                    if (w[static_cast<size_t>(j)] == a && seed_valid(rule, s, n)) out.emplace_back(n, s);
                }
            } else {
                Patch p(Box::cell(Vec::zero(d)), Vec::zero(d), std::vector<int>{a});
                for (int t = 0; t < n; ++t) p = substitute_patch(rule, p);
                for (long long ci = 0; ci < p.shape.cell_count(); ++ci) {
                    Vec j = p.shape.cell_at(ci);
                    bool interior = true;
                    for (int i = 0; i < d; ++i)
                        if (!(j[i] > 0 && j[i] < p.shape.hi[i])) interior = false;
                    if (!interior || p.at(j) != a) continue;
                    Seed s;
                    s.kind = Seed::Kind::Interior;
                    s.letter = a;
                    s.offset = j;
                    if (seed_valid(rule, s, n)) out.emplace_back(n, s);
                }
            }
        }
        // corner seeds: all 2^d letter tuples
        const int corners = 1 << d;
        std::vector<int> tuple(static_cast<size_t>(corners), 0);
        while (true) {
            Seed s;
            s.kind = Seed::Kind::Corner;
            s.corner_letters = tuple;
            if (seed_valid(rule, s, n)) out.emplace_back(n, s);
            int i = 0;
            for (; i < corners; ++i) {
                if (++tuple[static_cast<size_t>(i)] < nletters) break;
                tuple[static_cast<size_t>(i)] = 0;
            }
            if (i == corners) break;
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; }),
              out.end());
    return out;
}

}  // namespace substrate::subst
